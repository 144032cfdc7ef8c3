#include "adlv/io.hpp"

#include <regex>
#include <sstream>

#include "adlv/errors.hpp"

namespace adlv {

Json rational_to_json(const Rational& q) {
  if (q.denominator() == 1) return q.numerator();
  return to_string(q);
}

Json xi_to_json(const XiPoly& p) { return Json{{"xi_coeffs", p.coeffs()}}; }

XiPoly xi_from_json(const Json& j) {
  return XiPoly(j.at("xi_coeffs").get<std::vector<std::int64_t>>());
}

Json table_to_json(const AffineWeylGroup& g, const ClassPolyTable& t) {
  Json entries = Json::array();
  for (const auto& [rep, p] : t.entries)
    entries.push_back({{"class", g.format(rep)}, {"poly", xi_to_json(p)}, {"text", p.to_string()}});
  return Json{{"w", g.format(t.source)}, {"entries", entries}};
}

ClassPolyTable table_from_json(const AffineWeylGroup& g, const Json& j) {
  ClassPolyTable t;
  t.source = g.parse(j.at("w").get<std::string>());
  for (const Json& e : j.at("entries"))
    t.entries.emplace(g.parse(e.at("class").get<std::string>()), xi_from_json(e.at("poly")));
  return t;
}

Json descriptor_to_json(const SigmaClassDescriptor& d) {
  Json nu = Json::array();
  for (const Rational& q : d.newton) nu.push_back(rational_to_json(q));
  return Json{{"nu", nu}, {"kappa", d.kottwitz}, {"text", d.to_string()}};
}

Json dim_report_to_json(const AffineWeylGroup& g, const DimReport& r) {
  Json classes = Json::array();
  for (const ClassContribution& c : r.classes)
    classes.push_back({{"rep", g.format(c.rep)},
                       {"len", c.length},
                       {"deg", c.degree},
                       {"candidate", rational_to_json(c.candidate)}});
  Json j{{"input", {{"w", g.format(r.w)}, {"b", descriptor_to_json(r.b)}}},
         {"classes", classes}};
  if (r.dim)
    j["dim"] = *r.dim;
  else
    j["dim"] = "EMPTY";
  j["nonempty"] = r.nonempty();
  return j;
}

Json ghkr_to_json(const GhkrReport& r) {
  Json j{{"virtual_dim", rational_to_json(r.virtual_dim)},
         {"defect", r.defect},
         {"hypotheses",
          {{"simple", r.simple},
           {"lowest_cell", r.lowest_cell},
           {"supp_eta_full", r.supp_full},
           {"basic", r.basic},
           {"delta_id", r.delta_id}}}};
  auto verdict = [](bool applicable, bool holds) -> Json {
    if (!applicable) return "not-applicable";
    return holds;
  };
  j["lower"] = verdict(r.lower_applicable, r.lower_holds);
  j["upper"] = verdict(r.upper_applicable, r.upper_holds);
  j["equal"] = verdict(r.equal_applicable(), r.equal);
  return j;
}

namespace {

std::vector<std::string> split_list(const std::string& body) {
  std::vector<std::string> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) throw ArgumentError("empty entry in list");
    out.push_back(item);
  }
  return out;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw ArgumentError("not an integer: " + s);
  }
  if (pos != s.size()) throw ArgumentError("not an integer: " + s);
  return v;
}

}  // namespace

SigmaClassDescriptor parse_descriptor(const std::string& s) {
  static const std::regex re(R"(\s*nu\s*=\s*\[([^\]]*)\]\s*,\s*kappa\s*=\s*\[([^\]]*)\]\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw ArgumentError("malformed class descriptor: " + s);
  SigmaClassDescriptor d;
  for (const std::string& item : split_list(m[1].str())) {
    const auto slash = item.find('/');
    if (slash == std::string::npos) {
      d.newton.emplace_back(parse_int(item));
    } else {
      const std::int64_t den = parse_int(item.substr(slash + 1));
      if (den == 0) throw ArgumentError("zero denominator in " + s);
      d.newton.emplace_back(parse_int(item.substr(0, slash)), den);
    }
  }
  if (!m[2].str().empty())
    for (const std::string& item : split_list(m[2].str())) d.kottwitz.push_back(parse_int(item));
  return d;
}

BElement parse_b(const AdlvEngine& a, const std::string& s) {
  if (s == "unit" || s == "1") return a.b_unit();
  if (s.find("nu") != std::string::npos && s.find("kappa") != std::string::npos) {
    BElement b;
    b.descriptor = parse_descriptor(s);
    const RootDatum& rd = a.group().rd();
    if (b.descriptor.newton.size() != rd.rank())
      throw ArgumentError("descriptor: Newton point has the wrong rank");
    if (!rd.is_dominant(b.descriptor.newton))
      throw ArgumentError("descriptor: Newton point must be dominant");
    const std::size_t kl = a.conj().kottwitz(a.group().identity()).size();
    if (b.descriptor.kottwitz.size() != kl)
      throw ArgumentError("descriptor: Kottwitz vector has the wrong length");
    return b;
  }
  return a.b_of(a.group().parse(s), true);
}

ClassPolyCache::ClassPolyCache(const std::filesystem::path& dir, const std::string& type_label,
                               const DiagramAut& delta)
    : type_(type_label), delta_(delta.spec()) {
  std::string name = "classpoly-" + type_label + "-" + delta_ + ".jsonl";
  for (char& c : name)
    if (c == ',' || c == ' ' || c == '/') c = '_';
  std::filesystem::create_directories(dir);
  file_ = dir / name;
}

ClassPolyCache::~ClassPolyCache() {
  std::lock_guard<std::mutex> lock(mu_);
  if (out_.is_open()) out_.flush();
}

Json ClassPolyCache::header() const {
  return Json{{"format", "adlv-classpoly"},
              {"format_version", kCacheFormatVersion},
              {"type", type_},
              {"delta", delta_},
              {"library_version", kLibraryVersion}};
}

std::size_t ClassPolyCache::load(const ClassPolyEngine& h) {
  std::size_t n = 0;
  header_matched_ = false;
  std::ifstream in(file_);
  std::string line;
  if (in && std::getline(in, line)) {
    const Json head = Json::parse(line, nullptr, false);
    header_matched_ = !head.is_discarded() && head == header();
  }
  if (header_matched_) {
    const AffineWeylGroup& g = h.group();
    while (std::getline(in, line)) {
      const Json rec = Json::parse(line, nullptr, false);
      // a torn final line from an interrupted writer is skipped
      if (rec.is_discarded()) continue;
      const ClassPolyTable t = table_from_json(g, rec);
      h.insert_memo(t.source, t);
      ++n;
    }
  }
  in.close();
  open_for_append();
  return n;
}

void ClassPolyCache::open_for_append() {
  std::lock_guard<std::mutex> lock(mu_);
  if (header_matched_) {
    out_.open(file_, std::ios::app);
  } else {
    out_.open(file_, std::ios::trunc);
    out_ << header().dump() << '\n';
    header_matched_ = true;
  }
  if (!out_) throw ConfigError("cannot write cache file " + file_.string());
}

void ClassPolyCache::append(const AffineWeylGroup& g, const ExtAffElt& w,
                            const ClassPolyTable& t) {
  const std::string line = table_to_json(g, t).dump();
  std::lock_guard<std::mutex> lock(mu_);
  if (!out_.is_open()) return;
  out_ << line << '\n' << std::flush;
  (void)w;
}

void ClassPolyCache::attach(ClassPolyEngine& h) {
  const AffineWeylGroup* g = &h.group();
  h.set_observer([this, g](const ExtAffElt& w, const ClassPolyTable& t) { append(*g, w, t); });
}

}  // namespace adlv
