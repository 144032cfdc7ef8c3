#include "adlv/affine_weyl.hpp"

#include <bit>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>
#include <sstream>
#include <unordered_set>

#include <boost/container_hash/hash.hpp>

namespace adlv {

std::size_t ExtAffElt::hash() const noexcept {
  std::size_t h = boost::hash_range(mu.begin(), mu.end());
  boost::hash_combine(h, w.hash());
  return h;
}

// ---------------------------------------------------------------------------
// DiagramAut

DiagramAut DiagramAut::identity(const RootDatum& rd) {
  DiagramAut d;
  d.perm_.resize(rd.rank());
  for (std::size_t i = 0; i < rd.rank(); ++i) d.perm_[i] = i;
  return d;
}

DiagramAut DiagramAut::from_permutation(const RootDatum& rd, std::vector<std::size_t> perm) {
  const std::size_t r = rd.rank();
  if (perm.size() != r) throw ConfigError("diagram automorphism: wrong number of entries");
  std::vector<bool> hit(r, false);
  for (std::size_t p : perm) {
    if (p >= r || hit[p]) throw ConfigError("diagram automorphism: not a permutation");
    hit[p] = true;
  }
  const IntMatrix& A = rd.cartan();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (A(perm[i], perm[j]) != A(i, j))
        throw ConfigError("diagram automorphism does not preserve the Cartan matrix");
  DiagramAut d;
  d.perm_ = std::move(perm);
  return d;
}

DiagramAut DiagramAut::parse(const RootDatum& rd, const std::string& spec) {
  std::string s;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c)) || !s.empty()) s.push_back(c);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty() || s == "id" || s == "identity") return identity(rd);
  std::vector<std::size_t> perm;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    for (char c : tok)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ConfigError("malformed diagram automorphism: " + spec);
    const long v = std::stol(tok);
    if (v < 1) throw ConfigError("malformed diagram automorphism: " + spec);
    perm.push_back(static_cast<std::size_t>(v - 1));
    tok.clear();
  };
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      tok.push_back(c);
    }
  }
  flush();
  return from_permutation(rd, std::move(perm));
}

bool DiagramAut::is_identity() const {
  for (std::size_t i = 0; i < perm_.size(); ++i)
    if (perm_[i] != i) return false;
  return true;
}

std::size_t DiagramAut::order() const {
  std::size_t n = 1;
  DiagramAut p = *this;
  while (!p.is_identity()) {
    std::vector<std::size_t> q(perm_.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) q[i] = perm_[p.perm_[i]];
    p.perm_ = std::move(q);
    ++n;
  }
  return n;
}

DiagramAut DiagramAut::inverse() const {
  DiagramAut d;
  d.perm_.resize(perm_.size());
  for (std::size_t i = 0; i < perm_.size(); ++i) d.perm_[perm_[i]] = i;
  return d;
}

DiagramAut DiagramAut::power(std::size_t k) const {
  DiagramAut d;
  d.perm_.resize(perm_.size());
  for (std::size_t i = 0; i < perm_.size(); ++i) d.perm_[i] = i;
  for (std::size_t t = 0; t < k; ++t)
    for (std::size_t i = 0; i < perm_.size(); ++i) d.perm_[i] = perm_[d.perm_[i]];
  return d;
}

std::string DiagramAut::spec() const {
  if (is_identity()) return "id";
  std::string s;
  for (std::size_t i = 0; i < perm_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(perm_[i] + 1);
  }
  return s;
}

FiniteWeylElt DiagramAut::apply(const FiniteWeylElt& w) const {
  FiniteWeylElt out = w;
  for (std::size_t i = 0; i < perm_.size(); ++i)
    for (std::size_t j = 0; j < perm_.size(); ++j) out.at(perm_[i], perm_[j]) = w.at(i, j);
  return out;
}

// ---------------------------------------------------------------------------
// AffineWeylGroup

AffineWeylGroup::AffineWeylGroup(RootDatumPtr rd) : rd_(std::move(rd)) {
  const std::size_t c = num_components();
  for (std::size_t k = 0; k < c; ++k) {
    const std::size_t h = rd_->highest_root(k);
    simple_.push_back({rd_->coroot(h), rd_->reflection(rd_->positive_roots()[h])});
  }
  for (std::size_t i = 0; i < rank(); ++i)
    simple_.push_back({Coweight(rank(), 0), rd_->simple_reflection(i)});
  build_omega();
}

std::size_t AffineWeylGroup::component_of_node(Node n) const {
  if (is_affine_node(n)) return n;
  return rd_->component_of(finite_index(n));
}

std::string AffineWeylGroup::node_label(Node n) const {
  if (n >= num_nodes()) throw ArgumentError("node out of range");
  if (is_affine_node(n)) return n == 0 ? "0" : "0_" + std::to_string(n);
  return std::to_string(finite_index(n) + 1);
}

Node AffineWeylGroup::parse_node(const std::string& label) const {
  if (label.empty()) throw ArgumentError("empty node label");
  for (char c : label)
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '_')
      throw ArgumentError("bad node label: " + label);
  if (label[0] == '0') {
    if (label == "0") return 0;
    if (label.size() > 2 && label[1] == '_') {
      const std::size_t k = std::stoul(label.substr(2));
      if (k < num_components()) return k;
    }
    throw ArgumentError("bad node label: " + label);
  }
  if (label.find('_') != std::string::npos) throw ArgumentError("bad node label: " + label);
  const std::size_t i = std::stoul(label);
  if (i < 1 || i > rank()) throw ArgumentError("node label out of range: " + label);
  return finite_node(i - 1);
}

NodeSet AffineWeylGroup::finite_nodes() const {
  NodeSet s;
  for (std::size_t i = 0; i < rank(); ++i) s.push_back(finite_node(i));
  return s;
}

Node AffineWeylGroup::delta_node(const DiagramAut& d, Node n) const {
  if (!is_affine_node(n)) return finite_node(d(finite_index(n)));
  const std::size_t off = static_cast<std::size_t>(rd_->components()[n].offset);
  return rd_->component_of(d(off));
}

ExtAffElt AffineWeylGroup::identity() const { return {Coweight(rank(), 0), rd_->identity()}; }

ExtAffElt AffineWeylGroup::translation(const Coweight& mu) const {
  if (mu.size() != rank()) throw ArgumentError("translation: dimension mismatch");
  return {mu, rd_->identity()};
}

ExtAffElt AffineWeylGroup::finite(const FiniteWeylElt& w) const { return {Coweight(rank(), 0), w}; }

ExtAffElt AffineWeylGroup::multiply(const ExtAffElt& x, const ExtAffElt& y) const {
  if (x.mu.size() != rank() || y.mu.size() != rank())
    throw ArgumentError("multiply: elements from different groups");
  Coweight mu = x.w.apply(y.mu);
  for (std::size_t i = 0; i < mu.size(); ++i) mu[i] += x.mu[i];
  return {std::move(mu), x.w * y.w};
}

ExtAffElt AffineWeylGroup::inverse(const ExtAffElt& x) const {
  FiniteWeylElt wi = rd_->inverse(x.w);
  Coweight mu = wi.apply(x.mu);
  for (auto& c : mu) c = -c;
  return {std::move(mu), std::move(wi)};
}

ExtAffElt AffineWeylGroup::apply(const DiagramAut& d, const ExtAffElt& x) const {
  return {d.apply(x.mu), d.apply(x.w)};
}

ExtAffElt AffineWeylGroup::twisted_conj(Node i, const ExtAffElt& x, const DiagramAut& d) const {
  return multiply(multiply(simple_[i], x), simple_[delta_node(d, i)]);
}

ExtAffElt AffineWeylGroup::omega_twist(std::size_t tau, const ExtAffElt& x,
                                       const DiagramAut& d) const {
  const ExtAffElt& t = omega_[tau];
  return multiply(multiply(t, x), inverse(apply(d, t)));
}

std::size_t AffineWeylGroup::length(const ExtAffElt& x) const {
  const Coweight rv = rd_->rho_image(x.w);
  std::size_t n = 0;
  for (const Root& a : rd_->positive_roots()) {
    const std::int64_t p = rd_->pair(x.mu, a);
    if (rd_->pair(rv, a) > 0) {
      n += static_cast<std::size_t>(std::llabs(p));
    } else {
      n += static_cast<std::size_t>(std::llabs(p - 1));
    }
  }
  return n;
}

bool AffineWeylGroup::is_left_descent(const ExtAffElt& x, Node n) const {
  if (!is_affine_node(n)) {
    const std::size_t j = finite_index(n);
    if (x.mu[j] != 0) return x.mu[j] < 0;
    std::int64_t s = 0;
    for (std::size_t k = 0; k < rank(); ++k) s += x.w.at(j, k);
    return s < 0;
  }
  const Root& theta = rd_->positive_roots()[rd_->highest_root(n)];
  const std::int64_t lt = rd_->pair(x.mu, theta);
  if (lt != 1) return lt > 1;
  return rd_->pair(rd_->rho_image(x.w), theta) > 0;
}

bool AffineWeylGroup::is_right_descent(const ExtAffElt& x, Node n) const {
  return is_left_descent(inverse(x), n);
}

void AffineWeylGroup::build_omega() {
  const LatticeQuotient& pq = rd_->fundamental_group();
  std::vector<ExtAffElt> gens;
  for (std::size_t c = 0; c < num_components(); ++c) {
    const Root& theta = rd_->positive_roots()[rd_->highest_root(c)];
    for (std::size_t i = 0; i < rank(); ++i) {
      if (rd_->component_of(i) != c || theta[i] != 1) continue;
      ExtAffElt x = translation(rd_->fundamental_coweight(i));
      for (;;) {
        Node n = 0;
        while (n < num_nodes() && !is_left_descent(x, n)) ++n;
        if (n == num_nodes()) break;
        x = left_mul(n, x);
      }
      gens.push_back(std::move(x));
    }
  }
  std::vector<ExtAffElt> all{identity()};
  std::unordered_set<ExtAffElt> seen{identity()};
  for (std::size_t k = 0; k < all.size(); ++k)
    for (const ExtAffElt& g : gens) {
      ExtAffElt y = multiply(all[k], g);
      if (seen.insert(y).second) all.push_back(std::move(y));
    }
  const std::size_t n = all.size();
  if (n != static_cast<std::size_t>(pq.order().value_or(0)))
    throw IntegrityError("length-zero subgroup does not match P/Q");

  omega_cyclic_ = pq.invariant_factors().size() <= 1;
  if (omega_cyclic_ && n > 1) {
    std::optional<ExtAffElt> gen;
    for (const ExtAffElt& g : all) {
      ExtAffElt p = g;
      std::size_t ord = 1;
      while (p != identity()) {
        p = multiply(p, g);
        ++ord;
      }
      if (ord == n) {
        gen = g;
        break;
      }
    }
    if (!gen) throw IntegrityError("cyclic length-zero subgroup without generator");
    omega_.clear();
    ExtAffElt p = identity();
    for (std::size_t k = 0; k < n; ++k) {
      omega_.push_back(p);
      p = multiply(p, *gen);
    }
  } else {
    std::sort(all.begin(), all.end(), [&](const ExtAffElt& a, const ExtAffElt& b) {
      return pq.class_of(a.mu) < pq.class_of(b.mu);
    });
    omega_ = std::move(all);
  }
  for (std::size_t k = 0; k < n; ++k) omega_by_class_[pq.class_of(omega_[k].mu)] = k;

  for (const ExtAffElt& t : omega_) {
    const ExtAffElt ti = inverse(t);
    std::vector<Node> perm(num_nodes());
    for (Node a = 0; a < num_nodes(); ++a) {
      const ExtAffElt c = multiply(multiply(t, simple_[a]), ti);
      auto it = std::find(simple_.begin(), simple_.end(), c);
      if (it == simple_.end()) throw IntegrityError("length-zero element does not permute nodes");
      perm[a] = static_cast<Node>(it - simple_.begin());
    }
    omega_perm_.push_back(std::move(perm));
  }
}

std::size_t AffineWeylGroup::omega_part(const ExtAffElt& x) const {
  return omega_by_class_.at(rd_->fundamental_group().class_of(x.mu));
}

std::size_t AffineWeylGroup::omega_index(const ExtAffElt& tau) const {
  const std::size_t k = omega_part(tau);
  if (omega_[k] != tau) throw ArgumentError("omega_index: not a length-zero element");
  return k;
}

WordForm AffineWeylGroup::reduced_word(const ExtAffElt& x) const {
  WordForm f;
  ExtAffElt y = x;
  for (;;) {
    Node n = 0;
    while (n < num_nodes() && !is_left_descent(y, n)) ++n;
    if (n == num_nodes()) break;
    f.word.push_back(n);
    y = left_mul(n, y);
  }
  f.tau = omega_index(y);
  return f;
}

ExtAffElt AffineWeylGroup::from_word(const std::vector<Node>& word, std::size_t tau) const {
  if (tau >= omega_.size()) throw ArgumentError("tau index out of range");
  ExtAffElt x = omega_[tau];
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it >= num_nodes()) throw ArgumentError("node out of range");
    x = left_mul(*it, x);
  }
  return x;
}

DoubleCosetForm AffineWeylGroup::double_coset_form(const ExtAffElt& x) const {
  auto [mu, uinv] = rd_->dominant_rep(x.mu);
  const FiniteWeylElt u = rd_->inverse(uinv);
  const FiniteWeylElt v = uinv * x.w;
  auto [z, y] = rd_->left_parabolic_split(v, rd_->zero_pairing_set(mu));
  return {u * z, std::move(mu), std::move(y)};
}

ExtAffElt AffineWeylGroup::from_double_coset(const DoubleCosetForm& f) const {
  return multiply(multiply(finite(f.x), translation(f.mu)), finite(f.y));
}

FiniteWeylElt AffineWeylGroup::eta(const ExtAffElt& x, const DiagramAut& d) const {
  const DoubleCosetForm f = double_coset_form(x);
  return d.inverse().apply(f.y) * f.x;
}

NodeSet AffineWeylGroup::support(const ExtAffElt& x) const {
  const WordForm f = reduced_word(x);
  std::set<Node> s(f.word.begin(), f.word.end());
  return {s.begin(), s.end()};
}

NodeSet AffineWeylGroup::supp_delta(const ExtAffElt& x, const DiagramAut& d) const {
  std::set<Node> s;
  for (Node n : support(x)) {
    Node m = n;
    do {
      s.insert(m);
      m = delta_node(d, m);
    } while (m != n);
  }
  return {s.begin(), s.end()};
}

ExtAffElt AffineWeylGroup::demazure(const ExtAffElt& x, const ExtAffElt& y) const {
  const WordForm f = reduced_word(y);
  ExtAffElt z = x;
  std::size_t lz = length(z);
  for (Node n : f.word) {
    ExtAffElt zn = right_mul(z, n);
    const std::size_t ln = length(zn);
    if (ln > lz) {
      z = std::move(zn);
      lz = ln;
    }
  }
  return multiply(z, omega_[f.tau]);
}

bool AffineWeylGroup::bruhat_leq(const ExtAffElt& x, const ExtAffElt& y) const {
  if (omega_part(x) != omega_part(y)) return false;
  const std::size_t lx = length(x), ly = length(y);
  if (lx > ly) return false;
  if (lx == ly) return x == y;
  {
    std::lock_guard<std::mutex> lock(bruhat_mu_);
    auto it = bruhat_memo_.find(y);
    if (it != bruhat_memo_.end()) {
      auto jt = it->second.find(x);
      if (jt != it->second.end()) return jt->second;
    }
  }
  Node n = 0;
  while (!is_left_descent(y, n)) ++n;
  const ExtAffElt sy = left_mul(n, y);
  const bool result =
      is_left_descent(x, n) ? bruhat_leq(left_mul(n, x), sy) : bruhat_leq(x, sy);
  std::lock_guard<std::mutex> lock(bruhat_mu_);
  bruhat_memo_[y][x] = result;
  return result;
}

const std::vector<NodeSet>& AffineWeylGroup::longest_parabolics() const {
  std::call_once(longest_once_, [&] {
    const std::size_t nu = rd_->positive_roots().size();
    for (std::uint32_t m = 0; m < (1u << num_nodes()); ++m) {
      if (static_cast<std::size_t>(std::popcount(m)) != rank()) continue;
      NodeSet J;
      for (Node n = 0; n < num_nodes(); ++n)
        if (m >> n & 1u) J.push_back(n);
      if (!is_finite_parabolic(J)) continue;
      std::size_t top = 0;
      for (const ExtAffElt& y : parabolic_elements(J)) top = std::max(top, length(y));
      if (top == nu) longest_.push_back(std::move(J));
    }
  });
  return longest_;
}

bool AffineWeylGroup::is_lowest_cell(const ExtAffElt& x) const {
  // x = u w_J v with lengths adding and l(w_J) = l(w_0). Strip left descents
  // one at a time and look for a suffix whose left descents contain such a J.
  const std::vector<NodeSet>& Js = longest_parabolics();
  if (length(x) < rd_->positive_roots().size()) return false;
  std::vector<ExtAffElt> queue{x};
  std::unordered_set<ExtAffElt> seen{x};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const ExtAffElt z = queue[k];
    std::vector<bool> desc(num_nodes());
    for (Node n = 0; n < num_nodes(); ++n) desc[n] = is_left_descent(z, n);
    for (const NodeSet& J : Js)
      if (std::all_of(J.begin(), J.end(), [&](Node n) { return desc[n]; })) return true;
    if (length(z) <= rd_->positive_roots().size()) continue;
    for (Node n = 0; n < num_nodes(); ++n) {
      if (!desc[n]) continue;
      ExtAffElt y = left_mul(n, z);
      if (seen.insert(y).second) queue.push_back(std::move(y));
    }
  }
  return false;
}

bool AffineWeylGroup::is_finite_parabolic(const NodeSet& J) const {
  std::vector<std::size_t> count(num_components(), 0);
  for (Node n : J) {
    if (n >= num_nodes()) throw ArgumentError("node out of range");
    ++count[component_of_node(n)];
  }
  for (std::size_t c = 0; c < num_components(); ++c)
    if (count[c] == static_cast<std::size_t>(rd_->components()[c].rank) + 1) return false;
  return true;
}

std::pair<ExtAffElt, ExtAffElt> AffineWeylGroup::parabolic_split(const ExtAffElt& x,
                                                                 const NodeSet& J,
                                                                 CosetSide side) const {
  if (!is_finite_parabolic(J)) throw ArgumentError("parabolic subgroup is infinite");
  ExtAffElt u = identity();
  ExtAffElt m = x;
  for (;;) {
    bool moved = false;
    for (Node j : J) {
      if (side == CosetSide::kLeft ? is_left_descent(m, j) : is_right_descent(m, j)) {
        if (side == CosetSide::kLeft) {
          m = left_mul(j, m);
          u = right_mul(u, j);
        } else {
          m = right_mul(m, j);
          u = left_mul(j, u);
        }
        moved = true;
        break;
      }
    }
    if (!moved) return {u, m};
  }
}

bool AffineWeylGroup::is_min_coset_rep(const ExtAffElt& x, const NodeSet& J,
                                       CosetSide side) const {
  for (Node j : J)
    if (side == CosetSide::kLeft ? is_left_descent(x, j) : is_right_descent(x, j)) return false;
  return true;
}

std::vector<ExtAffElt> AffineWeylGroup::min_coset_reps(const NodeSet& J, CosetSide side,
                                                       std::size_t max_length) const {
  if (!is_finite_parabolic(J)) throw ArgumentError("parabolic subgroup is infinite");
  std::vector<ExtAffElt> out;
  for (std::size_t l = 0; l <= max_length; ++l)
    for (const ExtAffElt& x : elements_of_length(l))
      if (is_min_coset_rep(x, J, side)) out.push_back(x);
  return out;
}

std::vector<ExtAffElt> AffineWeylGroup::parabolic_elements(const NodeSet& J) const {
  if (!is_finite_parabolic(J)) throw ArgumentError("parabolic subgroup is infinite");
  std::vector<ExtAffElt> all{identity()};
  std::unordered_set<ExtAffElt> seen{identity()};
  for (std::size_t k = 0; k < all.size(); ++k)
    for (Node j : J) {
      ExtAffElt y = right_mul(all[k], j);
      if (seen.insert(y).second) all.push_back(std::move(y));
    }
  return all;
}

std::vector<ExtAffElt> AffineWeylGroup::elements_of_length(std::size_t len) const {
  std::lock_guard<std::mutex> lock(layers_mu_);
  if (layers_.empty()) layers_.push_back(omega_);
  while (layers_.size() <= len) {
    const std::vector<ExtAffElt>& prev = layers_.back();
    const std::size_t target = layers_.size();
    std::unordered_set<ExtAffElt> seen;
    std::vector<std::pair<WordForm, ExtAffElt>> next;
    for (const ExtAffElt& x : prev)
      for (Node n = 0; n < num_nodes(); ++n) {
        if (is_left_descent(x, n)) continue;
        ExtAffElt y = left_mul(n, x);
        if (seen.insert(y).second) next.emplace_back(reduced_word(y), std::move(y));
      }
    std::sort(next.begin(), next.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<ExtAffElt> layer;
    layer.reserve(next.size());
    for (auto& p : next) layer.push_back(std::move(p.second));
    (void)target;
    layers_.push_back(std::move(layer));
  }
  return layers_[len];
}

// ---------------------------------------------------------------------------
// literals

namespace {

std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string remove_space(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::string tok;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!tok.empty()) out.push_back(tok);
      tok.clear();
    } else {
      tok.push_back(c);
    }
  }
  if (!tok.empty()) out.push_back(tok);
  return out;
}

std::int64_t parse_int(const std::string& s, const std::string& context) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw ArgumentError("bad integer in literal: " + context);
  }
  if (pos != s.size()) throw ArgumentError("bad integer in literal: " + context);
  return v;
}

}  // namespace

namespace {

std::size_t parse_tau(const AffineWeylGroup& g, const std::string& t, const std::string& lit) {
  if (t == "e" || t == "1") return 0;
  if (t == "tau") return g.omega().size() > 1 ? 1 : 0;
  if (t.rfind("tau^", 0) != 0) throw ArgumentError("bad Omega factor in literal: " + lit);
  const std::int64_t m = parse_int(t.substr(4), lit);
  const auto n = static_cast<std::int64_t>(g.omega().size());
  if (!g.omega_is_cyclic() && (m < 0 || m >= n))
    throw ArgumentError("Omega index out of range: " + lit);
  return static_cast<std::size_t>(((m % n) + n) % n);
}

}  // namespace

ExtAffElt AffineWeylGroup::parse(const std::string& literal, bool strict_reduced) const {
  const std::string lit = strip(literal);
  if (lit.empty()) throw ArgumentError("empty element literal");
  if (lit[0] == 'w') {
    const std::string rest = strip(lit.substr(1));
    if (rest.empty() || rest[0] != '[') throw ArgumentError("bad word literal: " + literal);
    const std::size_t close = rest.find(']');
    if (close == std::string::npos) throw ArgumentError("bad word literal: " + literal);
    std::vector<Node> word;
    for (const std::string& tok : split_tokens(rest.substr(1, close - 1)))
      word.push_back(parse_node(tok));
    std::size_t tau = 0;
    const std::string tail = remove_space(rest.substr(close + 1));
    if (!tail.empty()) {
      if (tail[0] != '@') throw ArgumentError("bad word literal: " + literal);
      tau = parse_tau(*this, tail.substr(1), literal);
    }
    ExtAffElt x = from_word(word, tau);
    if (strict_reduced && word.size() > length(x))
      throw ArgumentError("word is not reduced: " + literal);
    return x;
  }
  const std::string s = remove_space(lit);
  ExtAffElt x = identity();
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find('*', pos);
    if (end == std::string::npos) end = s.size();
    const std::string f = s.substr(pos, end - pos);
    if (f.empty()) throw ArgumentError("empty factor in literal: " + literal);
    if (f[0] == 't' && f.size() > 1 && f[1] == '[') {
      if (f.back() != ']') throw ArgumentError("bad translation in literal: " + literal);
      const auto toks = split_tokens(f.substr(2, f.size() - 3));
      if (toks.size() != rank()) throw ArgumentError("translation has wrong rank: " + literal);
      Coweight mu;
      for (const auto& t : toks) mu.push_back(parse_int(t, literal));
      x = multiply(x, translation(mu));
    } else if (f.rfind("tau", 0) == 0 || f == "e" || f == "1") {
      x = multiply(x, omega_[parse_tau(*this, f, literal)]);
    } else if (f[0] == 's') {
      x = right_mul(x, parse_node(f.substr(1)));
    } else {
      throw ArgumentError("unknown factor in literal: " + literal);
    }
    pos = end + 1;
  }
  return x;
}

std::string AffineWeylGroup::format(const ExtAffElt& x) const {
  std::string s = "t" + format_coweight(x.mu);
  for (std::size_t i : rd_->reduced_word(x.w)) s += "*s" + std::to_string(i + 1);
  return s;
}

std::string AffineWeylGroup::format_word(const ExtAffElt& x) const {
  const WordForm f = reduced_word(x);
  std::string s = "w[";
  for (std::size_t k = 0; k < f.word.size(); ++k) {
    if (k) s += " ";
    s += node_label(f.word[k]);
  }
  s += "]";
  if (f.tau != 0) s += " @ tau^" + std::to_string(f.tau);
  return s;
}

std::string format_nodes(const AffineWeylGroup& g, const NodeSet& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ",";
    out += g.node_label(s[k]);
  }
  return out + "}";
}

}  // namespace adlv
