#include "adlv/hecke.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "adlv/errors.hpp"

namespace adlv {

XiPoly::XiPoly(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) { trim(); }

XiPoly XiPoly::constant(std::int64_t c) { return XiPoly(std::vector<std::int64_t>{c}); }

XiPoly XiPoly::xi_power(std::size_t k) {
  std::vector<std::int64_t> c(k + 1, 0);
  c[k] = 1;
  return XiPoly(std::move(c));
}

void XiPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::optional<std::size_t> XiPoly::degree() const {
  if (c_.empty()) return std::nullopt;
  return c_.size() - 1;
}

bool XiPoly::nonnegative() const {
  return std::all_of(c_.begin(), c_.end(), [](std::int64_t a) { return a >= 0; });
}

XiPoly XiPoly::operator+(const XiPoly& o) const {
  XiPoly r = *this;
  r += o;
  return r;
}

XiPoly& XiPoly::operator+=(const XiPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

XiPoly XiPoly::operator-(const XiPoly& o) const {
  std::vector<std::int64_t> c = c_;
  if (o.c_.size() > c.size()) c.resize(o.c_.size(), 0);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c[k] -= o.c_[k];
  return XiPoly(std::move(c));
}

XiPoly XiPoly::operator*(const XiPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<std::int64_t> c(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  return XiPoly(std::move(c));
}

XiPoly XiPoly::times_xi(std::size_t k) const {
  if (is_zero()) return {};
  std::vector<std::int64_t> c(k, 0);
  c.insert(c.end(), c_.begin(), c_.end());
  return XiPoly(std::move(c));
}

std::map<int, std::int64_t> XiPoly::to_v() const {
  // xi^k = sum_j (-1)^j C(k, j) v^{k-2j}
  std::map<int, std::int64_t> out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    std::int64_t binom = 1;
    for (std::size_t j = 0; j <= k; ++j) {
      const std::int64_t sign = (j % 2 == 0) ? 1 : -1;
      out[static_cast<int>(k) - 2 * static_cast<int>(j)] += sign * binom * c_[k];
      binom = binom * static_cast<std::int64_t>(k - j) / static_cast<std::int64_t>(j + 1);
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

namespace {

// Joins signed monomials as "a + b - c". mono(e) renders the bare monomial
// for a nonzero exponent; exponent 0 is the constant term.
template <typename Terms, typename Mono>
std::string join_terms(const Terms& terms, Mono mono) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, a] : terms) {
    if (a == 0) continue;
    const std::int64_t mag = a < 0 ? -a : a;
    if (first)
      os << (a < 0 ? "-" : "");
    else
      os << (a < 0 ? " - " : " + ");
    first = false;
    if (e == 0) {
      os << mag;
    } else {
      if (mag != 1) os << mag;
      os << mono(e);
    }
  }
  return first ? "0" : os.str();
}

}  // namespace

std::string XiPoly::to_string() const {
  std::vector<std::pair<int, std::int64_t>> terms;
  for (std::size_t k = c_.size(); k-- > 0;) terms.emplace_back(static_cast<int>(k), c_[k]);
  return join_terms(terms, [](int e) {
    return e == 1 ? std::string("ξ") : "ξ^" + std::to_string(e);
  });
}

std::string XiPoly::to_v_string() const {
  const auto m = to_v();
  std::vector<std::pair<int, std::int64_t>> terms(m.rbegin(), m.rend());
  return join_terms(terms, [](int e) {
    return e == 1 ? std::string("v") : "v^" + std::to_string(e);
  });
}

HeckeElt HeckeElt::basis(const ExtAffElt& x) {
  HeckeElt h;
  h.t_.emplace(x, XiPoly::constant(1));
  return h;
}

void HeckeElt::add(const ExtAffElt& x, const XiPoly& p) {
  if (p.is_zero()) return;
  auto [it, fresh] = t_.emplace(x, p);
  if (fresh) return;
  it->second += p;
  if (it->second.is_zero()) t_.erase(it);
}

XiPoly HeckeElt::coeff(const ExtAffElt& x) const {
  auto it = t_.find(x);
  return it == t_.end() ? XiPoly{} : it->second;
}

bool HeckeElt::in_positive_cone() const {
  return std::all_of(t_.begin(), t_.end(), [](const auto& kv) { return kv.second.nonnegative(); });
}

HeckeElt hecke_mul_basis(const AffineWeylGroup& g, const ExtAffElt& x, Node s) {
  HeckeElt out;
  ExtAffElt xs = g.right_mul(x, s);
  if (g.length(xs) > g.length(x)) {
    out.add(xs, XiPoly::constant(1));
  } else {
    // T_x = T_{xs} T_s, and T_s^2 = xi T_s + 1
    out.add(x, XiPoly::xi_power(1));
    out.add(xs, XiPoly::constant(1));
  }
  return out;
}

HeckeElt hecke_mul_simple(const AffineWeylGroup& g, const HeckeElt& a, Node s) {
  HeckeElt out;
  for (const auto& [x, p] : a.terms()) {
    const HeckeElt xs = hecke_mul_basis(g, x, s);
    for (const auto& [y, q] : xs.terms()) out.add(y, p * q);
  }
  return out;
}

HeckeElt hecke_mul(const AffineWeylGroup& g, const HeckeElt& a, const HeckeElt& b) {
  HeckeElt out;
  for (const auto& [y, q] : b.terms()) {
    const WordForm wf = g.reduced_word(y);
    HeckeElt cur = a;
    for (Node s : wf.word) cur = hecke_mul_simple(g, cur, s);
    // T_x T_tau = T_{x tau}, lengths add
    const ExtAffElt& tau = g.omega()[wf.tau];
    for (const auto& [x, p] : cur.terms()) out.add(g.multiply(x, tau), p * q);
  }
  return out;
}

XiPoly ClassPolyTable::at(const ExtAffElt& rep) const {
  auto it = entries.find(rep);
  return it == entries.end() ? XiPoly{} : it->second;
}

namespace {

ClassPolyTable combine(const ExtAffElt& w, const ClassPolyTable& a, const ClassPolyTable& b) {
  ClassPolyTable t;
  t.source = w;
  for (const auto& [rep, p] : a.entries) t.entries[rep] += p.times_xi();
  for (const auto& [rep, p] : b.entries) t.entries[rep] += p;
  std::erase_if(t.entries, [](const auto& kv) { return kv.second.is_zero(); });
  return t;
}

}  // namespace

ClassPolyEngine::ClassPolyEngine(ConjugacyEnginePtr conj) : conj_(std::move(conj)) {}

std::optional<ClassPolyEngine::Step> ClassPolyEngine::first_reduction(const ExtAffElt& w) const {
  const AffineWeylGroup& g = group();
  const std::size_t len = g.length(w);
  std::vector<ExtAffElt> orbit{w};
  std::unordered_set<ExtAffElt> seen{w};
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    const ExtAffElt y = orbit[k];
    for (Node i = 0; i < g.num_nodes(); ++i)
      if (g.length(conj_->twisted(i, y)) < len) return Step{y, i};
    for (Node i = 0; i < g.num_nodes(); ++i) {
      ExtAffElt z = conj_->twisted(i, y);
      if (g.length(z) == len && seen.insert(z).second) orbit.push_back(std::move(z));
    }
    for (std::size_t t = 1; t < g.omega().size(); ++t) {
      ExtAffElt z = conj_->omega_twist(t, y);
      if (seen.insert(z).second) orbit.push_back(std::move(z));
    }
    if (orbit.size() > conj_->budget())
      throw ResourceError("class polynomial recursion exceeds the search budget");
  }
  return std::nullopt;
}

std::vector<ClassPolyEngine::Step> ClassPolyEngine::all_reductions(const ExtAffElt& w) const {
  const AffineWeylGroup& g = group();
  const std::size_t len = g.length(w);
  std::vector<Step> out;
  for (const ExtAffElt& y : conj_->same_length_orbit(w, true))
    for (Node i = 0; i < g.num_nodes(); ++i)
      if (g.length(conj_->twisted(i, y)) < len) out.push_back({y, i});
  return out;
}

ClassPolyTable ClassPolyEngine::class_polynomials(const ExtAffElt& w) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
  }
  ClassPolyTable t;
  t.source = w;
  if (auto step = first_reduction(w)) {
    const AffineWeylGroup& g = group();
    const ExtAffElt a = g.left_mul(step->i, step->w1);
    const ExtAffElt b = conj_->twisted(step->i, step->w1);
    t = combine(w, class_polynomials(a), class_polynomials(b));
  } else {
    t.entries.emplace(conj_->canonical_rep(w), XiPoly::constant(1));
  }
  bool fresh = false;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = memo_.emplace(w, t);
    if (!inserted && !(it->second == t))
      throw IntegrityError("class polynomial memo diverged for " + group().format(w));
    fresh = inserted;
  }
  if (fresh && observer_) observer_(w, t);
  return t;
}

ClassPolyTable ClassPolyEngine::random_rec(
    const ExtAffElt& w, std::mt19937_64& rng,
    std::unordered_map<ExtAffElt, ClassPolyTable>& memo) const {
  if (auto it = memo.find(w); it != memo.end()) return it->second;
  ClassPolyTable t;
  t.source = w;
  const std::vector<Step> steps = all_reductions(w);
  if (steps.empty()) {
    t.entries.emplace(conj_->canonical_rep(w), XiPoly::constant(1));
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, steps.size() - 1);
    const Step& s = steps[pick(rng)];
    const ExtAffElt a = group().left_mul(s.i, s.w1);
    const ExtAffElt b = conj_->twisted(s.i, s.w1);
    t = combine(w, random_rec(a, rng, memo), random_rec(b, rng, memo));
  }
  memo.emplace(w, t);
  return t;
}

ClassPolyTable ClassPolyEngine::class_polynomials_random(const ExtAffElt& w,
                                                         std::mt19937_64& rng) const {
  std::unordered_map<ExtAffElt, ClassPolyTable> memo;
  return random_rec(w, rng, memo);
}

PathReport ClassPolyEngine::verify_path_independence(const ExtAffElt& w, std::size_t trials,
                                                     std::uint64_t seed) const {
  PathReport r;
  const ClassPolyTable ref = class_polynomials(w);
  for (std::size_t k = 0; k < trials; ++k) {
    std::mt19937_64 rng(seed + k);
    const ClassPolyTable t = class_polynomials_random(w, rng);
    if (t == ref) continue;
    r.identical = false;
    r.divergences.push_back("trial " + std::to_string(k) + ": " + format_table(group(), t) +
                            " vs " + format_table(group(), ref));
  }
  return r;
}

void ClassPolyEngine::insert_memo(const ExtAffElt& w, const ClassPolyTable& t) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = memo_.emplace(w, t);
  if (!inserted && !(it->second == t))
    throw IntegrityError("conflicting class polynomials for " + group().format(w));
}

std::vector<std::pair<ExtAffElt, ClassPolyTable>> ClassPolyEngine::memo_snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<std::pair<ExtAffElt, ClassPolyTable>> out(memo_.begin(), memo_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::string format_table(const AffineWeylGroup& g, const ClassPolyTable& t) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [rep, p] : t.entries) {
    if (!first) os << ", ";
    first = false;
    os << g.format(rep) << ": " << p.to_string();
  }
  os << "}";
  return os.str();
}

}  // namespace adlv
