#include "adlv/conjugacy.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

namespace adlv {

bool SigmaClassDescriptor::operator<(const SigmaClassDescriptor& o) const {
  if (newton != o.newton) return newton < o.newton;
  return kottwitz < o.kottwitz;
}

bool SigmaClassDescriptor::is_basic() const {
  for (const Rational& q : newton)
    if (q.numerator() != 0) return false;
  return true;
}

std::string SigmaClassDescriptor::to_string() const {
  return "nu=" + format_qcoweight(newton) + ",kappa=" + format_coweight(kottwitz);
}

std::vector<std::string> ReductionTrace::lines(const AffineWeylGroup& g) const {
  std::vector<std::string> out;
  out.reserve(steps.size());
  for (const TraceStep& s : steps) {
    std::string line = "STEP ";
    line += s.omega ? "tau^" + std::to_string(s.index) : g.node_label(s.index);
    line += " " + g.format(s.before) + " -> " + g.format(s.after);
    line += " dl=" + std::to_string(s.dl);
    out.push_back(std::move(line));
  }
  return out;
}

namespace {

IntMatrix kottwitz_generators(const RootDatum& rd, const DiagramAut& d) {
  const std::size_t r = rd.rank();
  IntMatrix gen(r, 2 * r);
  for (std::size_t j = 0; j < r; ++j) {
    const Coweight c = rd.simple_coroot(j);
    for (std::size_t i = 0; i < r; ++i) gen(i, j) = c[i];
  }
  for (std::size_t i = 0; i < r; ++i) {
    gen(i, r + i) += 1;
    gen(d(i), r + i) -= 1;
  }
  return gen;
}

// Walks parent links back to the root and returns the steps in order.
template <typename Parents>
std::vector<TraceStep> path_to(const Parents& parents, const ExtAffElt& end) {
  std::vector<TraceStep> rev;
  ExtAffElt cur = end;
  for (;;) {
    auto it = parents.find(cur);
    if (it == parents.end() || !it->second) break;
    rev.push_back(*it->second);
    cur = it->second->before;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

std::size_t root_height(const Root& a) {
  return static_cast<std::size_t>(std::accumulate(a.begin(), a.end(), std::int64_t{0}));
}

bool supported_in(const Root& a, const std::vector<std::size_t>& J) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && !std::binary_search(J.begin(), J.end(), i)) return false;
  return true;
}

}  // namespace

ConjugacyEngine::ConjugacyEngine(AffineWeylGroupPtr g, DiagramAut delta, std::size_t budget)
    : g_(std::move(g)), delta_(std::move(delta)), budget_(budget) {
  const RootDatum& rd = g_->rd();
  if (delta_.permutation().size() != rd.rank())
    throw ArgumentError("diagram automorphism has the wrong rank");
  kottwitz_q_ = LatticeQuotient(kottwitz_generators(rd, delta_));
  delta_matrix_ = IntMatrix(rd.rank(), rd.rank());
  for (std::size_t i = 0; i < rd.rank(); ++i) delta_matrix_(delta_(i), i) = 1;
}

// ---------------------------------------------------------------------------
// invariants

QCoweight ConjugacyEngine::newton_vector(const ExtAffElt& x) const {
  const AffineWeylGroup& g = *g_;
  const std::size_t dord = delta_.order();
  ExtAffElt p = x;
  ExtAffElt dx = x;
  std::size_t n = 1;
  // p = x delta(x) ... delta^{n-1}(x); stop once delta^n = 1 and p is a translation
  while (!(n % dord == 0 && p.w.is_identity())) {
    dx = g.apply(delta_, dx);
    p = g.multiply(p, dx);
    ++n;
    if (n > dord * 1'000'000) throw IntegrityError("newton_vector: no period found");
  }
  QCoweight nu(p.mu.size());
  for (std::size_t i = 0; i < nu.size(); ++i)
    nu[i] = Rational(p.mu[i], static_cast<std::int64_t>(n));
  return nu;
}

QCoweight ConjugacyEngine::newton_point(const ExtAffElt& x) const {
  return g_->rd().dominant_rep(newton_vector(x)).first;
}

std::vector<std::int64_t> ConjugacyEngine::kottwitz_of_coweight(const Coweight& mu) const {
  return kottwitz_q_.class_of(mu);
}

std::vector<std::int64_t> ConjugacyEngine::kottwitz(const ExtAffElt& x) const {
  return kottwitz_q_.class_of(x.mu);
}

SigmaClassDescriptor ConjugacyEngine::invariant_f(const ExtAffElt& x) const {
  return {newton_point(x), kottwitz(x)};
}

Rational ConjugacyEngine::pair_2rho(const QCoweight& nu) const {
  return g_->rd().pair_2rho(nu);
}

bool ConjugacyEngine::is_straight(const ExtAffElt& x) const {
  const Rational p = pair_2rho(newton_point(x));
  return p == Rational(static_cast<std::int64_t>(g_->length(x)));
}

// ---------------------------------------------------------------------------
// orbits and reduction

std::vector<ConjugacyEngine::Neighbor> ConjugacyEngine::same_length_neighbors(
    const ExtAffElt& x, std::size_t len, bool with_omega) const {
  std::vector<Neighbor> out;
  for (Node i = 0; i < g_->num_nodes(); ++i) {
    ExtAffElt y = twisted(i, x);
    if (g_->length(y) == len) out.push_back({false, i, std::move(y)});
  }
  if (with_omega)
    for (std::size_t k = 1; k < g_->omega().size(); ++k)
      out.push_back({true, k, omega_twist(k, x)});
  return out;
}

std::vector<ExtAffElt> ConjugacyEngine::same_length_orbit(const ExtAffElt& x,
                                                          bool with_omega) const {
  const std::size_t len = g_->length(x);
  std::vector<ExtAffElt> orbit{x};
  std::unordered_set<ExtAffElt> seen{x};
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    for (Neighbor& nb : same_length_neighbors(orbit[k], len, with_omega))
      if (seen.insert(nb.elt).second) orbit.push_back(std::move(nb.elt));
    if (orbit.size() > budget_)
      throw ResourceError("same-length orbit exceeds the search budget");
  }
  return orbit;
}

std::pair<ExtAffElt, ReductionTrace> ConjugacyEngine::reduce_to_minimal(const ExtAffElt& x) const {
  const AffineWeylGroup& g = *g_;
  ReductionTrace trace;
  ExtAffElt cur = x;
  std::size_t visited = 0;
  for (;;) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = minimal_memo_.find(cur);
      if (it != minimal_memo_.end() && it->second) break;
    }
    const std::size_t len = g.length(cur);
    std::vector<ExtAffElt> level{cur};
    std::unordered_map<ExtAffElt, std::optional<TraceStep>> parents{{cur, std::nullopt}};
    std::optional<TraceStep> drop;
    for (std::size_t k = 0; k < level.size() && !drop; ++k) {
      const ExtAffElt y = level[k];
      for (Node i = 0; i < g.num_nodes(); ++i) {
        ExtAffElt z = twisted(i, y);
        if (g.length(z) < len) {
          drop = TraceStep{false, i, y, std::move(z), -2};
          break;
        }
      }
      if (drop) break;
      for (Neighbor& nb : same_length_neighbors(y, len, true)) {
        if (parents.count(nb.elt)) continue;
        parents.emplace(nb.elt, TraceStep{nb.omega, nb.index, y, nb.elt, 0});
        level.push_back(std::move(nb.elt));
      }
      if (++visited > budget_) {
        trace.terminal = cur;
        throw ResourceError("reduction exceeds the search budget", trace.lines(g));
      }
    }
    {
      std::lock_guard<std::mutex> lock(mu_);
      for (const ExtAffElt& y : level) minimal_memo_[y] = !drop.has_value();
    }
    if (!drop) break;
    for (TraceStep& s : path_to(parents, drop->before)) trace.steps.push_back(std::move(s));
    cur = drop->after;
    trace.steps.push_back(std::move(*drop));
  }
  trace.terminal = cur;
  return {cur, std::move(trace)};
}

bool ConjugacyEngine::is_minimal(const ExtAffElt& x) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = minimal_memo_.find(x);
    if (it != minimal_memo_.end()) return it->second;
  }
  return g_->length(reduce_to_minimal(x).first) == g_->length(x);
}

const LatticeQuotient& ConjugacyEngine::twisted_lattice(const FiniteWeylElt& wy) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = lattice_memo_.find(wy);
    if (it != lattice_memo_.end()) return *it->second;
  }
  const std::size_t r = g_->rank();
  IntMatrix m(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) m(i, j) = wy.at(i, j);
  IntMatrix gen = m * delta_matrix_;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) gen(i, j) = (i == j ? 1 : 0) - gen(i, j);
  auto q = std::make_shared<LatticeQuotient>(gen);
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = lattice_memo_.emplace(wy, std::move(q));
  return *it->second;
}

bool ConjugacyEngine::same_conjugacy_class(const ExtAffElt& x, const ExtAffElt& y) const {
  if (x == y) return true;
  if (invariant_f(x) != invariant_f(y)) return false;
  const RootDatum& rd = g_->rd();
  const LatticeQuotient& lat = twisted_lattice(y.w);
  for (const FiniteWeylElt& u : rd.elements()) {
    const FiniteWeylElt du_inv = delta_.apply(rd.inverse(u));
    if (u * x.w * du_inv != y.w) continue;
    Coweight diff = u.apply(x.mu);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = y.mu[i] - diff[i];
    if (lat.contains(diff)) return true;
  }
  return false;
}

void ConjugacyEngine::compute_class(const ExtAffElt& m) const {
  const std::size_t len = g_->length(m);
  std::vector<ExtAffElt> members;
  for (const ExtAffElt& y : g_->elements_of_length(len))
    if (same_conjugacy_class(m, y)) members.push_back(y);
  if (members.empty()) throw IntegrityError("minimal element missing from its own length layer");
  std::lock_guard<std::mutex> lock(mu_);
  for (const ExtAffElt& y : members) {
    canon_memo_[y] = members.front();
    minimal_memo_[y] = true;
  }
  omin_memo_[members.front()] = std::move(members);
}

ExtAffElt ConjugacyEngine::canonical_rep(const ExtAffElt& x) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = canon_memo_.find(x);
    if (it != canon_memo_.end()) return it->second;
  }
  const ExtAffElt m = reduce_to_minimal(x).first;
  std::optional<ExtAffElt> canon;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = canon_memo_.find(m);
    if (it != canon_memo_.end()) canon = it->second;
  }
  if (!canon) {
    compute_class(m);
    std::lock_guard<std::mutex> lock(mu_);
    canon = canon_memo_.at(m);
  }
  std::lock_guard<std::mutex> lock(mu_);
  canon_memo_[x] = *canon;
  return *canon;
}

std::vector<ExtAffElt> ConjugacyEngine::minimal_elements(const ExtAffElt& x) const {
  const ExtAffElt c = canonical_rep(x);
  std::lock_guard<std::mutex> lock(mu_);
  return omin_memo_.at(c);
}

std::vector<StraightClass> ConjugacyEngine::enumerate_straight_classes(
    std::size_t length_bound) const {
  std::vector<StraightClass> out;
  std::unordered_set<ExtAffElt> reps;
  std::map<SigmaClassDescriptor, ExtAffElt> by_descriptor;
  for (std::size_t l = 0; l <= length_bound; ++l) {
    for (const ExtAffElt& x : g_->elements_of_length(l)) {
      if (!is_straight(x)) continue;
      const ExtAffElt c = canonical_rep(x);
      if (!reps.insert(c).second) continue;
      StraightClass sc{c, invariant_f(c), l, false};
      auto [it, fresh] = by_descriptor.emplace(sc.descriptor, c);
      if (!fresh)
        throw IntegrityError("two straight classes share the invariant " +
                             sc.descriptor.to_string() + ": " + g_->format(it->second) +
                             " and " + g_->format(c));
      sc.superstraight = is_superstraight_class(c);
      out.push_back(std::move(sc));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// decompositions

Min2Decomposition ConjugacyEngine::min2_decompose(const ExtAffElt& x_min) const {
  const AffineWeylGroup& g = *g_;
  const std::size_t n = g.num_nodes();
  if (n >= 8 * sizeof(unsigned long)) throw ArgumentError("min2_decompose: diagram too large");
  std::vector<NodeSet> subsets;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    NodeSet J;
    for (Node k = 0; k < n; ++k)
      if (mask & (1UL << k)) J.push_back(k);
    if (g.is_finite_parabolic(J)) subsets.push_back(std::move(J));
  }
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](const NodeSet& a, const NodeSet& b) { return a.size() < b.size(); });

  for (const ExtAffElt& w : same_length_orbit(x_min, true)) {
    for (const NodeSet& J : subsets) {
      auto [u, x] = g.parabolic_split(w, J, CosetSide::kLeft);
      bool ok = true;
      for (Node j : J)
        if (g.is_right_descent(x, g.delta_node(delta_, j))) {
          ok = false;
          break;
        }
      if (!ok) continue;
      const ExtAffElt xi = g.inverse(x);
      for (Node j : J) {
        const ExtAffElt c = g.multiply(g.multiply(x, g.simple(g.delta_node(delta_, j))), xi);
        bool hit = false;
        for (Node k : J)
          if (g.simple(k) == c) {
            hit = true;
            break;
          }
        if (!hit) {
          ok = false;
          break;
        }
      }
      if (!ok || !is_straight(x)) continue;
      return {J, x, u, w};
    }
  }
  throw ResourceError("no decomposition u x found in the orbit of " + g.format(x_min));
}

bool ConjugacyEngine::in_levi(const ExtAffElt& x, const std::vector<std::size_t>& J) const {
  return g_->rd().in_parabolic(x.w, J);
}

std::size_t ConjugacyEngine::levi_length(const ExtAffElt& x,
                                         const std::vector<std::size_t>& J) const {
  const RootDatum& rd = g_->rd();
  const Coweight rv = rd.rho_image(x.w);
  std::size_t n = 0;
  for (const Root& a : rd.positive_roots()) {
    if (!supported_in(a, J)) continue;
    const std::int64_t p = rd.pair(x.mu, a);
    n += static_cast<std::size_t>(rd.pair(rv, a) > 0 ? std::llabs(p) : std::llabs(p - 1));
  }
  return n;
}

bool ConjugacyEngine::is_superbasic_in_levi(const ExtAffElt& x,
                                            const std::vector<std::size_t>& J) const {
  const AffineWeylGroup& g = *g_;
  const RootDatum& rd = g.rd();
  if (!in_levi(x, J) || levi_length(x, J) != 0) return false;

  // connected components of J in the finite diagram
  std::vector<std::vector<std::size_t>> comps;
  std::vector<bool> used(rd.rank(), false);
  for (std::size_t j : J) {
    if (used[j]) continue;
    std::vector<std::size_t> c{j};
    used[j] = true;
    for (std::size_t k = 0; k < c.size(); ++k)
      for (std::size_t m : J)
        if (!used[m] && rd.cartan()(c[k], m) != 0) {
          used[m] = true;
          c.push_back(m);
        }
    std::sort(c.begin(), c.end());
    comps.push_back(std::move(c));
  }

  // simple reflections of the Levi's affine Weyl group, tagged by component
  std::vector<ExtAffElt> gens;
  std::vector<std::size_t> comp_of;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (std::size_t j : comps[c]) {
      gens.push_back(g.simple(g.finite_node(j)));
      comp_of.push_back(c);
    }
    std::size_t best = rd.positive_roots().size();
    for (std::size_t k = 0; k < rd.positive_roots().size(); ++k) {
      const Root& a = rd.positive_roots()[k];
      if (!supported_in(a, comps[c])) continue;
      if (best == rd.positive_roots().size() ||
          root_height(a) > root_height(rd.positive_roots()[best]))
        best = k;
    }
    gens.push_back({rd.coroot(best), rd.reflection(rd.positive_roots()[best])});
    comp_of.push_back(c);
  }

  const ExtAffElt xi = g.inverse(x);
  std::vector<std::size_t> image(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const ExtAffElt c = g.multiply(g.multiply(x, g.apply(delta_, gens[k])), xi);
    auto it = std::find(gens.begin(), gens.end(), c);
    if (it == gens.end()) return false;
    image[k] = static_cast<std::size_t>(it - gens.begin());
  }
  // every orbit must be a union of components
  std::vector<bool> seen(gens.size(), false);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (seen[k]) continue;
    std::set<std::size_t> orbit;
    std::size_t m = k;
    while (!seen[m]) {
      seen[m] = true;
      orbit.insert(m);
      m = image[m];
    }
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (std::size_t b : orbit)
        if (comp_of[a] == comp_of[b] && !orbit.count(a)) return false;
  }
  return true;
}

bool ConjugacyEngine::is_superstraight_class(const ExtAffElt& x_min) const {
  const AffineWeylGroup& g = *g_;
  const RootDatum& rd = g.rd();
  const QCoweight nu = newton_point(x_min);
  std::vector<std::size_t> J;
  for (std::size_t i = 0; i < nu.size(); ++i)
    if (nu[i].numerator() == 0) J.push_back(i);
  const std::vector<FiniteWeylElt> ys = rd.min_coset_reps(J, CosetSide::kRight);
  for (const ExtAffElt& m : minimal_elements(x_min)) {
    for (const FiniteWeylElt& y : ys) {
      const ExtAffElt ye = g.finite(y);
      const ExtAffElt x = g.multiply(g.multiply(g.inverse(ye), m), g.apply(delta_, ye));
      if (!in_levi(x, J)) continue;
      if (newton_vector(x) != nu) continue;
      if (is_superbasic_in_levi(x, J)) return true;
    }
  }
  return false;
}

bool ConjugacyEngine::is_Jw_alcove(const ExtAffElt& x, const std::vector<std::size_t>& J,
                                   const FiniteWeylElt& w) const {
  const AffineWeylGroup& g = *g_;
  const RootDatum& rd = g.rd();
  std::vector<std::size_t> Js = J;
  std::sort(Js.begin(), Js.end());
  for (std::size_t j : Js) {
    if (j >= rd.rank()) throw ArgumentError("is_Jw_alcove: index out of range");
    if (!std::binary_search(Js.begin(), Js.end(), delta_(j)))
      throw ArgumentError("is_Jw_alcove: J is not delta-stable");
  }
  const ExtAffElt we = g.finite(w);
  const ExtAffElt c = g.multiply(g.multiply(g.inverse(we), x), g.apply(delta_, we));
  if (!in_levi(c, Js)) return false;

  // U_a meets I from level k0(a) on: 1 for positive a, 0 for negative a (the
  // Iwahori of the base alcove in the dominant chamber, seen from the group
  // side). The U_a part of xIx^{-1} starts at level k0(v^{-1} a) + <lambda, a>.
  auto k0 = [&](const Root& a) { return rd.is_positive_root(a) ? 1 : 0; };
  const FiniteWeylElt vinv = rd.inverse(x.w);
  for (const Root& b : rd.positive_roots()) {
    if (supported_in(b, Js)) continue;
    const Root a = rd.act_on_root(w, b);
    const std::int64_t start = k0(rd.act_on_root(vinv, a)) + rd.pair(x.mu, a);
    if (start < k0(a)) return false;
  }
  return true;
}

std::vector<std::size_t> ConjugacyEngine::max_stable_subset(const ExtAffElt& x) const {
  const AffineWeylGroup& g = *g_;
  const ExtAffElt xi = g.inverse(x);
  std::vector<std::size_t> J(g.rank());
  std::iota(J.begin(), J.end(), std::size_t{0});
  // image of s_{delta(j)} under Ad(x), when it is a finite simple reflection
  std::vector<std::optional<std::size_t>> img(g.rank());
  for (std::size_t j = 0; j < g.rank(); ++j) {
    const ExtAffElt c = g.multiply(g.multiply(x, g.simple(g.finite_node(delta_(j)))), xi);
    for (std::size_t k = 0; k < g.rank(); ++k)
      if (g.simple(g.finite_node(k)) == c) img[j] = k;
  }
  for (;;) {
    std::vector<std::size_t> next;
    for (std::size_t j : J)
      if (img[j] && std::binary_search(J.begin(), J.end(), *img[j])) next.push_back(j);
    if (next == J) return J;
    J = std::move(next);
  }
}

std::size_t ConjugacyEngine::delta_orbits_on_S() const {
  std::vector<bool> seen(g_->rank(), false);
  std::size_t n = 0;
  for (std::size_t i = 0; i < g_->rank(); ++i) {
    if (seen[i]) continue;
    ++n;
    for (std::size_t j = i; !seen[j]; j = delta_(j)) seen[j] = true;
  }
  return n;
}

PartialReduction ConjugacyEngine::partial_reduce(const ExtAffElt& x) const {
  const AffineWeylGroup& g = *g_;
  const NodeSet S = g.finite_nodes();
  std::vector<ExtAffElt> queue{x};
  std::unordered_map<ExtAffElt, std::optional<TraceStep>> parents{{x, std::nullopt}};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const ExtAffElt y = queue[k];
    auto [u, xh] = g.parabolic_split(y, S, CosetSide::kLeft);
    std::vector<std::size_t> I = max_stable_subset(xh);
    if (g.rd().in_parabolic(u.w, I)) {
      PartialReduction out;
      out.terminal = y;
      out.x_hat = std::move(xh);
      out.u = std::move(u);
      for (std::size_t i : I) out.I.push_back(g.finite_node(i));
      out.trace.steps = path_to(parents, y);
      out.trace.terminal = y;
      return out;
    }
    const std::size_t len = g.length(y);
    for (Node n : S) {
      ExtAffElt z = twisted(n, y);
      const std::size_t lz = g.length(z);
      if (lz > len || parents.count(z)) continue;
      parents.emplace(z, TraceStep{false, n, y, z, lz < len ? -2 : 0});
      queue.push_back(std::move(z));
    }
    if (queue.size() > budget_) {
      ReductionTrace partial;
      partial.steps = path_to(parents, y);
      throw ResourceError("partial reduction exceeds the search budget", partial.lines(g));
    }
  }
  throw IntegrityError("partial reduction found no terminal element for " + g.format(x));
}

}  // namespace adlv
