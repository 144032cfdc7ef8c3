// adlv: command-line front end for the library.
//
// Exit codes: 0 ok, 2 usage or configuration, 3 integrity failure,
// 4 property violation, 5 search budget exhausted.

#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "adlv/errors.hpp"
#include "adlv/io.hpp"
#include "adlv/sweep.hpp"

using namespace adlv;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIntegrity = 3;
constexpr int kExitViolation = 4;
constexpr int kExitResource = 5;

struct JobConfig {
  std::string type;
  std::string delta = "id";
  std::size_t budget = kDefaultBudget;
  std::string cache;
  std::string format;

  std::size_t max_length = 4;
  std::string w;
  std::string b = "unit";
  std::string x;
  std::string mu;
  std::optional<std::int64_t> defect;
  bool emit_trace = false;
  std::string check = "none";
  std::size_t trials = 3;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

// Everything a command needs, built once from the config.
struct Session {
  RootDatumPtr rd;
  AffineWeylGroupPtr g;
  DiagramAut delta;
  ConjugacyEnginePtr conj;
  std::shared_ptr<ClassPolyEngine> hecke;
  std::unique_ptr<ClassPolyCache> cache;
  std::unique_ptr<AdlvEngine> adlv;

  explicit Session(const JobConfig& c) {
    if (c.type.empty()) throw ConfigError("--type is required");
    rd = build_root_datum(c.type);
    g = std::make_shared<AffineWeylGroup>(rd);
    delta = DiagramAut::parse(*rd, c.delta);
    conj = std::make_shared<ConjugacyEngine>(g, delta, c.budget);
    hecke = std::make_shared<ClassPolyEngine>(conj);
    std::string dir = c.cache;
    if (dir.empty())
      if (const char* env = std::getenv("ADLV_CACHE")) dir = env;
    if (!dir.empty()) {
      cache = std::make_unique<ClassPolyCache>(dir, c.type, delta);
      cache->load(*hecke);
      cache->attach(*hecke);
    }
    adlv = std::make_unique<AdlvEngine>(hecke);
  }
};

Json envelope(const JobConfig& c, const Session& s, const std::string& command) {
  return Json{{"schema_version", kSchemaVersion},
              {"command", command},
              {"type", c.type},
              {"delta", s.delta.spec()}};
}

void emit_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

Coweight parse_coweight(const std::string& text, std::size_t rank) {
  std::string s;
  for (char ch : text)
    if (ch != '[' && ch != ']' && ch != ' ') s += ch;
  Coweight mu;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      mu.push_back(std::stoll(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ArgumentError("malformed coweight: " + text);
    }
  }
  if (mu.size() != rank) throw ArgumentError("coweight has the wrong rank: " + text);
  return mu;
}

std::string dim_text(const std::optional<std::int64_t>& d) {
  return d ? std::to_string(*d) : std::string("EMPTY");
}

int cmd_classify(const JobConfig& c, Session& s) {
  const auto classes = s.conj->enumerate_straight_classes(c.max_length);
  const std::string fmt = c.format.empty() ? "json" : c.format;
  if (fmt == "json") {
    Json j = envelope(c, s, "classify");
    j["max_length"] = c.max_length;
    Json rows = Json::array();
    for (const StraightClass& sc : classes)
      rows.push_back({{"rep", s.g->format(sc.rep)},
                      {"nu", descriptor_to_json(sc.descriptor)["nu"]},
                      {"kappa", sc.descriptor.kottwitz},
                      {"length", sc.length},
                      {"straight", true},
                      {"superstraight", sc.superstraight}});
    j["classes"] = rows;
    emit_json(j);
  } else if (fmt == "tsv") {
    std::cout << "rep\tnu\tkappa\tlength\tstraight\tsuperstraight\n";
    for (const StraightClass& sc : classes)
      std::cout << s.g->format(sc.rep) << '\t' << format_qcoweight(sc.descriptor.newton) << '\t'
                << format_coweight(sc.descriptor.kottwitz) << '\t' << sc.length << "\ttrue\t"
                << (sc.superstraight ? "true" : "false") << '\n';
  } else {
    for (const StraightClass& sc : classes)
      std::cout << s.g->format(sc.rep) << "  " << sc.descriptor.to_string() << "  len "
                << sc.length << (sc.superstraight ? "  superstraight" : "") << '\n';
  }
  return kExitOk;
}

int cmd_dim(const JobConfig& c, Session& s) {
  if (c.w.empty()) throw ArgumentError("--w is required");
  const ExtAffElt w = s.g->parse(c.w);
  const BElement b = parse_b(*s.adlv, c.b);
  const DimReport r = s.adlv->dim_adlv(w, b);

  Json j = envelope(c, s, "dim");
  const Json body = dim_report_to_json(*s.g, r);
  for (const auto& [k, v] : body.items()) j[k] = v;
  j["input"]["b_literal"] = c.b;
  Json problems = Json::array();
  std::optional<GhkrReport> ghkr;
  try {
    ghkr = s.adlv->ghkr_check(w, b, c.defect);
  } catch (const ArgumentError& e) {
    problems.push_back(e.what());
  }
  if (ghkr) {
    j["virtual_dim"] = rational_to_json(ghkr->virtual_dim);
    j["bounds"] = ghkr_to_json(*ghkr);
  } else {
    j["virtual_dim"] = nullptr;
    j["bounds"] = nullptr;
  }
  j["problems"] = problems;

  const std::string fmt = c.format.empty() ? "json" : c.format;
  if (fmt == "json") {
    emit_json(j);
  } else if (fmt == "tsv") {
    std::cout << "w\tb\tdim\tvirtual_dim\n"
              << s.g->format(w) << '\t' << b.descriptor.to_string() << '\t' << dim_text(r.dim)
              << '\t' << (ghkr ? to_string(ghkr->virtual_dim) : "-") << '\n';
  } else {
    std::cout << "dim X_w(b) = " << dim_text(r.dim) << "  (w = " << s.g->format(w)
              << ", b: " << b.descriptor.to_string() << ")\n";
    for (const ClassContribution& cc : r.classes)
      std::cout << "  class " << s.g->format(cc.rep) << "  len " << cc.length << "  deg "
                << cc.degree << "  candidate " << to_string(cc.candidate) << '\n';
    if (ghkr) std::cout << "virtual dimension " << to_string(ghkr->virtual_dim) << '\n';
    for (const auto& p : problems) std::cout << "note: " << p.get<std::string>() << '\n';
  }
  return kExitOk;
}

int cmd_grassmannian(const JobConfig& c, Session& s) {
  if (c.mu.empty()) throw ArgumentError("--mu is required");
  const Coweight mu = parse_coweight(c.mu, s.rd->rank());
  const BElement b = parse_b(*s.adlv, c.b);
  const GrassmannianReport r = s.adlv->dim_grassmannian(mu, b, true);
  Json j = envelope(c, s, "grassmannian");
  j["input"] = {{"mu", mu}, {"b", descriptor_to_json(b.descriptor)}};
  j["dim"] = r.dim ? Json(*r.dim) : Json("EMPTY");
  j["coset_max"] = r.coset_max ? Json(*r.coset_max) : Json("EMPTY");
  j["coset_size"] = r.coset_size;
  j["violations"] = r.violations;
  const std::string fmt = c.format.empty() ? "json" : c.format;
  if (fmt == "json")
    emit_json(j);
  else
    std::cout << "dim X_mu(b) = " << dim_text(r.dim) << "  coset max " << dim_text(r.coset_max)
              << '\n';
  return r.violations.empty() ? kExitOk : kExitViolation;
}

int cmd_classpoly(const JobConfig& c, Session& s) {
  if (c.w.empty()) throw ArgumentError("--w is required");
  const ExtAffElt w = s.g->parse(c.w);
  const ClassPolyTable t = s.hecke->class_polynomials(w);
  const std::string fmt = c.format.empty() ? "json" : c.format;
  if (fmt == "json") {
    Json j = envelope(c, s, "classpoly");
    j["table"] = table_to_json(*s.g, t);
    emit_json(j);
  } else if (fmt == "tsv") {
    std::cout << "class\tpoly\n";
    for (const auto& [rep, p] : t.entries) std::cout << s.g->format(rep) << '\t' << p.to_string() << '\n';
  } else {
    std::cout << format_table(*s.g, t) << '\n';
  }
  return kExitOk;
}

int cmd_reduce(const JobConfig& c, Session& s) {
  if (c.x.empty()) throw ArgumentError("--x is required");
  const ExtAffElt x = s.g->parse(c.x);
  const auto [m, trace] = s.conj->reduce_to_minimal(x);
  const ExtAffElt canon = s.conj->canonical_rep(x);
  const std::string fmt = c.format.empty() ? "text" : c.format;
  if (fmt == "json") {
    Json j = envelope(c, s, "reduce");
    j["input"] = s.g->format(x);
    j["minimal"] = s.g->format(m);
    j["length"] = s.g->length(m);
    j["canonical"] = s.g->format(canon);
    j["descriptor"] = descriptor_to_json(s.conj->invariant_f(x));
    if (c.emit_trace) j["trace"] = trace.lines(*s.g);
    emit_json(j);
  } else {
    if (c.emit_trace)
      for (const std::string& line : trace.lines(*s.g)) std::cout << line << '\n';
    std::cout << "MIN " << s.g->format(m) << " len=" << s.g->length(m)
              << " canonical=" << s.g->format(canon) << '\n';
  }
  return kExitOk;
}

int cmd_sweep(const JobConfig& c, Session& s) {
  SweepOptions opt;
  opt.max_length = c.max_length;
  opt.b_set = c.b;
  opt.check = parse_sweep_check(c.check);
  opt.trials = c.trials;
  opt.seed = c.seed;
  opt.threads = c.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : c.threads;
  const SweepResult r = run_sweep(*s.adlv, opt);

  const std::string fmt = c.format.empty() ? "tsv" : c.format;
  if (fmt == "json") {
    Json j = envelope(c, s, "sweep");
    j["check"] = to_string(opt.check);
    j["max_length"] = opt.max_length;
    j["b"] = opt.b_set;
    Json rows = Json::array();
    for (const SweepRow& row : r.rows)
      rows.push_back({{"w", row.w}, {"b", row.b}, {"dim", row.dim}, {"virtual_dim", row.vdim},
                      {"defect", row.defect}, {"status", row.status}, {"note", row.note}});
    j["rows"] = rows;
    j["summary"] = {{"checked", r.checked}, {"violations", r.violations}, {"skipped", r.skipped}};
    emit_json(j);
  } else {
    std::cout << "w\tb\tdim\tvirtual_dim\tdefect\tstatus\tnote\n";
    for (const SweepRow& row : r.rows)
      std::cout << row.w << '\t' << row.b << '\t' << row.dim << '\t' << row.vdim << '\t'
                << row.defect << '\t' << row.status << '\t' << row.note << '\n';
    std::cout << "# check=" << to_string(opt.check) << " checked=" << r.checked
              << " violations=" << r.violations << " skipped=" << r.skipped << '\n';
  }
  return r.violations == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affine Weyl groups, class polynomials and affine Deligne-Lusztig dimensions"};
  app.fallthrough();
  app.require_subcommand(1);
  JobConfig c;

  app.add_option("--type", c.type, "Root datum label, e.g. A2, C2, G2, A1xA1");
  app.add_option("--delta", c.delta, "Diagram automorphism: id or 1-based images like 2,1");
  app.add_option("--budget", c.budget, "Node budget for orbit searches");
  app.add_option("--cache", c.cache, "Class polynomial cache directory (default: $ADLV_CACHE)");
  app.add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "tsv", "text"}));

  auto* classify = app.add_subcommand("classify", "List straight sigma-classes up to a length");
  classify->add_option("--max-length", c.max_length, "Length bound");

  auto* dim = app.add_subcommand("dim", "Dimension of X_w(b)");
  dim->add_option("--w", c.w, "Element literal")->required();
  dim->add_option("--b", c.b, "unit, an element literal or nu=[..],kappa=[..]");
  dim->add_option("--defect", c.defect, "Defect of b (needed for non-basic b)");

  auto* grass = app.add_subcommand("grassmannian", "Dimension of X_mu(b) in the affine Grassmannian");
  grass->add_option("--mu", c.mu, "Dominant coweight, e.g. [1,1]")->required();
  grass->add_option("--b", c.b, "unit, an element literal or nu=[..],kappa=[..]");

  auto* classpoly = app.add_subcommand("classpoly", "Class polynomial table of w");
  classpoly->add_option("--w", c.w, "Element literal")->required();

  auto* reduce = app.add_subcommand("reduce", "Reduce an element to minimal length in its class");
  reduce->add_option("--x", c.x, "Element literal")->required();
  reduce->add_flag("--emit-trace", c.emit_trace, "Print the reduction steps");

  auto* sweep = app.add_subcommand("sweep", "Check a property over all elements up to a length");
  sweep->add_option("--max-length", c.max_length, "Length bound");
  sweep->add_option("--b", c.b, "unit, basic-all, straight-all or a single b");
  sweep->add_option("--check", c.check, "none, ghkr, upper or path-independence");
  sweep->add_option("--trials", c.trials, "Randomized strategies per element");
  sweep->add_option("--seed", c.seed, "Base seed for randomized strategies");
  sweep->add_option("--threads", c.threads, "Worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    Session s(c);
    if (*classify) return cmd_classify(c, s);
    if (*dim) return cmd_dim(c, s);
    if (*grass) return cmd_grassmannian(c, s);
    if (*classpoly) return cmd_classpoly(c, s);
    if (*reduce) return cmd_reduce(c, s);
    if (*sweep) return cmd_sweep(c, s);
  } catch (const ConfigError& e) {
    std::cerr << "adlv: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ArgumentError& e) {
    std::cerr << "adlv: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IntegrityError& e) {
    std::cerr << "adlv: integrity failure: " << e.what() << '\n';
    return kExitIntegrity;
  } catch (const ResourceError& e) {
    std::cerr << "adlv: budget exhausted: " << e.what() << '\n';
    for (const std::string& line : e.partial()) std::cerr << line << '\n';
    return kExitResource;
  }
  return kExitUsage;
}
