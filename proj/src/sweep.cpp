#include "adlv/sweep.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "adlv/errors.hpp"
#include "adlv/io.hpp"

namespace adlv {

SweepCheck parse_sweep_check(const std::string& s) {
  if (s == "none") return SweepCheck::kNone;
  if (s == "ghkr") return SweepCheck::kGhkr;
  if (s == "upper") return SweepCheck::kUpper;
  if (s == "path-independence") return SweepCheck::kPathIndependence;
  throw ConfigError("unknown sweep check: " + s);
}

std::string to_string(SweepCheck c) {
  switch (c) {
    case SweepCheck::kNone: return "none";
    case SweepCheck::kGhkr: return "ghkr";
    case SweepCheck::kUpper: return "upper";
    case SweepCheck::kPathIndependence: return "path-independence";
  }
  return "?";
}

std::vector<BElement> resolve_b_set(const AdlvEngine& a, const std::string& name,
                                    std::size_t bound) {
  if (name == "basic-all") return a.basic_classes();
  if (name == "straight-all") {
    std::vector<BElement> out;
    std::set<SigmaClassDescriptor> seen;
    for (const StraightClass& c : a.conj().enumerate_straight_classes(bound))
      if (seen.insert(c.descriptor).second) out.push_back(a.b_of(c.rep, true));
    return out;
  }
  return {parse_b(a, name)};
}

std::optional<std::int64_t> sweep_defect(const AdlvEngine& a, const BElement& b) {
  if (b.is_basic()) return a.defect_basic(b);
  if (!a.conj().delta().is_identity()) return std::nullopt;
  for (const Rational& q : b.descriptor.newton)
    if (q <= Rational(0)) return std::nullopt;
  return 0;
}

namespace {

std::string dim_text(const std::optional<std::int64_t>& d) {
  return d ? std::to_string(*d) : std::string("EMPTY");
}

struct Partial {
  std::vector<SweepRow> rows;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t skipped = 0;
};

Partial sweep_one(const AdlvEngine& a, const SweepOptions& opt, const ExtAffElt& w,
                  const std::vector<BElement>& bs,
                  const std::vector<std::optional<std::int64_t>>& defects) {
  const AffineWeylGroup& g = a.group();
  Partial p;
  const std::string wl = g.format(w);

  if (opt.check == SweepCheck::kPathIndependence) {
    const PathReport r = a.hecke().verify_path_independence(w, opt.trials, opt.seed);
    SweepRow row{wl, "-", "-", "-", "-", r.identical ? "ok" : "VIOLATION", ""};
    if (!r.identical) {
      ++p.violations;
      row.note = r.divergences.empty() ? "" : r.divergences.front();
    }
    ++p.checked;
    p.rows.push_back(std::move(row));
    return p;
  }

  const auto kw = a.conj().kottwitz(w);
  for (std::size_t i = 0; i < bs.size(); ++i) {
    const BElement& b = bs[i];
    if (b.descriptor.kottwitz != kw) continue;
    SweepRow row{wl, b.descriptor.to_string(), "-", "-", "-", "n/a", ""};
    if (opt.check == SweepCheck::kNone) {
      row.dim = dim_text(a.dim_adlv(w, b).dim);
      if (defects[i]) {
        row.defect = std::to_string(*defects[i]);
        row.vdim = to_string(a.virtual_dimension(w, b, defects[i]));
      }
      row.status = "ok";
      p.rows.push_back(std::move(row));
      continue;
    }
    if (!defects[i]) {
      row.dim = dim_text(a.dim_adlv(w, b).dim);
      row.status = "skipped";
      row.note = "no defect for non-basic b with singular Newton point";
      ++p.skipped;
      p.rows.push_back(std::move(row));
      continue;
    }
    const GhkrReport r = a.ghkr_check(w, b, defects[i]);
    row.dim = dim_text(r.dim);
    row.vdim = to_string(r.virtual_dim);
    row.defect = std::to_string(r.defect);
    bool applies = false;
    bool ok = true;
    if (opt.check == SweepCheck::kUpper) {
      applies = r.upper_applicable;
      ok = r.upper_holds;
    } else {
      if (r.upper_applicable) {
        applies = true;
        ok = ok && r.upper_holds;
      }
      if (r.lower_applicable) {
        applies = true;
        ok = ok && r.lower_holds;
        row.note = "equality expected";
      }
    }
    if (applies) {
      ++p.checked;
      row.status = ok ? "ok" : "VIOLATION";
      if (!ok) ++p.violations;
    }
    p.rows.push_back(std::move(row));
  }
  return p;
}

}  // namespace

SweepResult run_sweep(const AdlvEngine& a, const SweepOptions& opt) {
  const AffineWeylGroup& g = a.group();
  std::vector<ExtAffElt> ws;
  for (std::size_t len = 0; len <= opt.max_length; ++len)
    for (const ExtAffElt& w : g.elements_of_length(len)) ws.push_back(w);

  std::vector<BElement> bs;
  std::vector<std::optional<std::int64_t>> defects;
  if (opt.check != SweepCheck::kPathIndependence) {
    bs = resolve_b_set(a, opt.b_set, opt.max_length);
    for (const BElement& b : bs) defects.push_back(sweep_defect(a, b));
  }

  std::vector<Partial> parts(ws.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex fail_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= ws.size()) return;
      try {
        parts[i] = sweep_one(a, opt, ws[i], bs, defects);
      } catch (...) {
        std::lock_guard<std::mutex> lock(fail_mu);
        if (!failure) failure = std::current_exception();
        next.store(ws.size());
        return;
      }
    }
  };
  const std::size_t n = std::max<std::size_t>(1, opt.threads);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  SweepResult out;
  for (Partial& p : parts) {
    out.checked += p.checked;
    out.violations += p.violations;
    out.skipped += p.skipped;
    for (SweepRow& r : p.rows) out.rows.push_back(std::move(r));
  }
  return out;
}

}  // namespace adlv
