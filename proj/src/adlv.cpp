#include "adlv/adlv.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "adlv/errors.hpp"

namespace adlv {

namespace {

std::int64_t integral(const Rational& q, const char* what) {
  if (q.denominator() != 1) throw IntegrityError(std::string(what) + " is not an integer");
  return q.numerator();
}

}  // namespace

AdlvEngine::AdlvEngine(ClassPolyEnginePtr h) : h_(std::move(h)) {}

BElement AdlvEngine::b_of(const ExtAffElt& x, bool keep_rep) const {
  BElement b;
  b.descriptor = conj().invariant_f(x);
  if (keep_rep) b.rep = x;
  return b;
}

std::vector<BElement> AdlvEngine::basic_classes() const {
  std::vector<BElement> out;
  for (const ExtAffElt& tau : group().omega()) {
    BElement b = b_of(tau);
    const bool seen = std::any_of(out.begin(), out.end(), [&](const BElement& o) {
      return o.descriptor == b.descriptor;
    });
    if (!seen) out.push_back(std::move(b));
  }
  return out;
}

DimReport AdlvEngine::dim_adlv(const ExtAffElt& w, const BElement& b) const {
  const AffineWeylGroup& g = group();
  DimReport r;
  r.w = w;
  r.b = b.descriptor;
  const ClassPolyTable t = hecke().class_polynomials(w);
  const std::size_t lw = g.length(w);
  std::optional<Rational> best;
  for (const auto& [rep, p] : t.entries) {
    if (p.is_zero() || !(conj().invariant_f(rep) == b.descriptor)) continue;
    ClassContribution c;
    c.rep = rep;
    c.length = g.length(rep);
    c.degree = *p.degree();
    c.candidate = Rational(static_cast<std::int64_t>(lw + c.length + c.degree), 2);
    if (!best || c.candidate > *best) best = c.candidate;
    r.classes.push_back(std::move(c));
  }
  if (best) r.dim = integral(*best - conj().pair_2rho(b.descriptor.newton), "dimension");
  return r;
}

GrassmannianReport AdlvEngine::dim_grassmannian(const Coweight& mu, const BElement& b,
                                                bool check_coset) const {
  const AffineWeylGroup& g = group();
  const RootDatum& rd = g.rd();
  if (mu.size() != rd.rank() || !rd.is_dominant(mu))
    throw ArgumentError("dim_grassmannian: mu must be a dominant coweight");
  const FiniteWeylElt w0 = rd.longest_element();
  const auto lw0 = static_cast<std::int64_t>(rd.length(w0));

  GrassmannianReport r;
  r.mu = mu;
  r.top = dim_adlv(g.multiply(g.finite(w0), g.translation(mu)), b);
  if (r.top.dim) r.dim = *r.top.dim - lw0;
  if (!check_coset) return r;

  const std::vector<std::size_t> I = rd.zero_pairing_set(mu);
  const ExtAffElt tmu = g.translation(mu);
  for (const FiniteWeylElt& y : rd.min_coset_reps(I, CosetSide::kLeft)) {
    const ExtAffElt ty = g.multiply(tmu, g.finite(y));
    for (const FiniteWeylElt& x : rd.elements()) {
      const ExtAffElt w = g.multiply(g.finite(x), ty);
      ++r.coset_size;
      const std::optional<std::int64_t> d = dim_adlv(w, b).dim;
      if (!d) continue;
      if (!r.coset_max || *d > *r.coset_max) r.coset_max = d;
      const auto lx = static_cast<std::int64_t>(rd.length(x));
      if (!r.top.dim || *d > *r.top.dim - lw0 + lx)
        r.violations.push_back("bound for x t^mu y fails at " + g.format(w));
    }
  }
  if (r.coset_max != r.top.dim)
    r.violations.push_back("maximum over the double coset differs from w0 t^mu");
  return r;
}

bool AdlvEngine::mazur_check(const Coweight& mu, const BElement& b,
                             const std::vector<std::size_t>& Jin) const {
  const AffineWeylGroup& g = group();
  const RootDatum& rd = g.rd();
  const DiagramAut& d = conj().delta();
  const std::size_t r = rd.rank();
  if (mu.size() != r || !rd.is_dominant(mu))
    throw ArgumentError("mazur_check: mu must be a dominant coweight");
  std::vector<std::size_t> J = Jin;
  std::sort(J.begin(), J.end());
  J.erase(std::unique(J.begin(), J.end()), J.end());
  std::vector<bool> inJ(r, false);
  for (std::size_t j : J) {
    if (j >= r) throw ArgumentError("mazur_check: index out of range");
    inJ[j] = true;
  }
  for (std::size_t j : J)
    if (!inJ[d(j)]) throw ArgumentError("mazur_check: J is not delta-stable");
  // b basic in M_J: its Newton point is central in M_J
  for (std::size_t j : J)
    if (b.descriptor.newton[j].numerator() != 0)
      throw ArgumentError("mazur_check: b is not basic in the Levi of J");

  if (J.size() == r) return conj().kottwitz_of_coweight(mu) == b.descriptor.kottwitz;

  if (!b.rep) throw ArgumentError("mazur_check: a representative of b is needed for J != S");
  const ExtAffElt& x = *b.rep;
  if (!conj().in_levi(x, J))
    throw ArgumentError("mazur_check: the representative of b is not in the Levi of J");
  if (conj().newton_vector(x) != b.descriptor.newton)
    throw ArgumentError("mazur_check: the Levi Kottwitz class of b is not dominant");

  // d = mu - lambda_b = sum a_i alpha_i^vee over Q
  Coweight diff(r);
  for (std::size_t i = 0; i < r; ++i) diff[i] = mu[i] - x.mu[i];
  IntMatrix A(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    const Coweight c = rd.simple_coroot(j);
    for (std::size_t i = 0; i < r; ++i) A(i, j) = c[i];
  }
  const auto a = solve_rational(A, diff);
  if (!a) throw IntegrityError("mazur_check: simple coroots are not independent");

  // The orbit sums are the coordinates of the image in Y_J (x) Q, so the
  // coefficients C_O are forced; only lattice membership of the rest remains.
  std::vector<bool> seen(r, false);
  Coweight rest = diff;
  for (std::size_t i = 0; i < r; ++i) {
    if (seen[i] || inJ[i]) continue;
    Rational c(0);
    for (std::size_t k = i; !seen[k]; k = d(k)) {
      seen[k] = true;
      c += (*a)[k];
    }
    if (c.denominator() != 1 || c.numerator() < 0) return false;
    const Coweight ai = rd.simple_coroot(i);
    for (std::size_t k = 0; k < r; ++k) rest[k] -= c.numerator() * ai[k];
  }
  std::vector<Coweight> gens;
  for (std::size_t j : J) gens.push_back(rd.simple_coroot(j));
  for (std::size_t i = 0; i < r; ++i) {
    if (d(i) == i) continue;
    Coweight e(r, 0);
    e[i] = 1;
    e[d(i)] -= 1;
    gens.push_back(std::move(e));
  }
  IntMatrix G(r, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < r; ++i) G(i, j) = gens[j][i];
  return LatticeQuotient(G).contains(rest);
}

std::int64_t AdlvEngine::defect_basic(const BElement& b) const {
  const AffineWeylGroup& g = group();
  const DiagramAut& d = conj().delta();
  if (!b.is_basic()) throw ArgumentError("defect_basic: b is not basic");

  std::optional<std::size_t> k;
  for (std::size_t t = 0; t < g.omega().size() && !k; ++t)
    if (conj().kottwitz(g.omega()[t]) == b.descriptor.kottwitz) k = t;
  if (!k) throw IntegrityError("defect_basic: no length-zero element with the Kottwitz class of b");
  const ExtAffElt& tau = g.omega()[*k];

  // sigma = Ad(tau) o delta on the affine nodes
  const std::size_t N = g.num_nodes();
  std::vector<Node> sigma(N);
  for (Node i = 0; i < N; ++i) sigma[i] = g.omega_perm(*k)[g.delta_node(d, i)];

  auto nodes_of = [&](std::uint32_t m) {
    NodeSet s;
    for (Node i = 0; i < N; ++i)
      if (m >> i & 1u) s.push_back(i);
    return s;
  };
  std::vector<std::uint32_t> stable;
  for (std::uint32_t m = 0; m < (1u << N); ++m) {
    bool ok = true;
    for (Node i = 0; i < N && ok; ++i)
      if ((m >> i & 1u) && !(m >> sigma[i] & 1u)) ok = false;
    if (ok && g.is_finite_parabolic(nodes_of(m))) stable.push_back(m);
  }

  std::optional<std::size_t> lc;
  for (std::uint32_t m : stable) {
    const bool maximal = std::none_of(stable.begin(), stable.end(), [&](std::uint32_t o) {
      return o != m && (o & m) == m;
    });
    if (!maximal) continue;

    std::vector<NodeSet> orbits;
    std::vector<bool> seen(N, false);
    for (Node i : nodes_of(m)) {
      if (seen[i]) continue;
      NodeSet o;
      for (Node j = i; !seen[j]; j = sigma[j]) {
        seen[j] = true;
        o.push_back(j);
      }
      std::sort(o.begin(), o.end());
      orbits.push_back(std::move(o));
    }

    // twisted Coxeter elements: one reflection per orbit, any order
    bool found = false;
    std::vector<std::size_t> order(orbits.size());
    std::iota(order.begin(), order.end(), 0);
    do {
      std::vector<std::size_t> pick(orbits.size(), 0);
      for (;;) {
        std::vector<Node> word;
        for (std::size_t o : order) word.push_back(orbits[o][pick[o]]);
        const ExtAffElt c = g.from_word(word);
        const ExtAffElt ct = g.multiply(c, tau);
        if (conj().is_minimal(ct) && conj().invariant_f(ct) == b.descriptor) {
          found = true;
          break;
        }
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == orbits[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
    } while (!found && std::next_permutation(order.begin(), order.end()));
    if (!found) continue;
    if (lc && *lc != orbits.size())
      throw IntegrityError("defect_basic: twisted Coxeter elements of different lengths");
    lc = orbits.size();
  }
  if (!lc) throw IntegrityError("defect_basic: no twisted Coxeter element found");
  const auto n = static_cast<std::int64_t>(delta_orbits_on_S());
  const std::int64_t def = n - static_cast<std::int64_t>(*lc);
  if (def < 0) throw IntegrityError("defect_basic: negative defect");
  return def;
}

Rational AdlvEngine::virtual_dimension(const ExtAffElt& w, const BElement& b,
                                       std::optional<std::int64_t> defect) const {
  const AffineWeylGroup& g = group();
  if (conj().kottwitz(w) != b.descriptor.kottwitz)
    throw ArgumentError("virtual_dimension: Kottwitz classes of w and b differ");
  if (!defect) {
    if (!b.is_basic())
      throw ArgumentError("virtual_dimension: the defect of a non-basic b must be supplied");
    defect = defect_basic(b);
  }
  const FiniteWeylElt eta = g.eta(w, conj().delta());
  const auto s = static_cast<std::int64_t>(g.length(w) + g.rd().length(eta));
  return Rational(s - *defect, 2) - conj().pair_2rho(b.descriptor.newton) / Rational(2);
}

GhkrReport AdlvEngine::ghkr_check(const ExtAffElt& w, const BElement& b,
                                  std::optional<std::int64_t> defect) const {
  const AffineWeylGroup& g = group();
  GhkrReport r;
  if (!defect && b.is_basic()) defect = defect_basic(b);
  r.virtual_dim = virtual_dimension(w, b, defect);
  r.defect = defect.value_or(0);
  r.dim = dim_adlv(w, b).dim;
  r.simple = g.num_components() == 1;
  r.lowest_cell = g.is_lowest_cell(w);
  const FiniteWeylElt eta = g.eta(w, conj().delta());
  r.supp_full = g.supp_delta(g.finite(eta), conj().delta()) == g.finite_nodes();
  r.basic = b.is_basic();
  r.delta_id = conj().delta().is_identity();
  r.lower_applicable = r.simple && r.lowest_cell && r.supp_full && r.basic;
  r.upper_applicable = r.delta_id;
  r.lower_holds = r.dim && Rational(*r.dim) >= r.virtual_dim;
  r.upper_holds = !r.dim || Rational(*r.dim) <= r.virtual_dim;
  r.equal = r.dim && Rational(*r.dim) == r.virtual_dim;
  return r;
}

QPoly AdlvEngine::point_count_superbasic_A(const ExtAffElt& w, const ExtAffElt& x) const {
  const AffineWeylGroup& g = group();
  const RootDatum& rd = g.rd();
  if (rd.components().size() != 1 || rd.components()[0].letter != 'A')
    throw ArgumentError("point count: the group must be of type A");
  if (!conj().delta().is_identity())
    throw ArgumentError("point count: delta must be the identity");
  std::vector<std::size_t> S(rd.rank());
  std::iota(S.begin(), S.end(), 0);
  const ExtAffElt rep = conj().canonical_rep(x);
  if (g.length(rep) != 0 || !conj().is_superbasic_in_levi(rep, S))
    throw ArgumentError("point count: x is not superbasic");

  const auto n = static_cast<std::int64_t>(rd.rank() + 1);
  const std::size_t lw = g.length(w);
  const XiPoly f = hecke().class_polynomials(w).at(rep);
  QPoly out;
  // q^{l/2} xi^k = q^{(l-k)/2} (q-1)^k
  for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
    const std::int64_t c = f.coeffs()[k];
    if (c == 0) continue;
    if (k > lw || (lw - k) % 2 != 0) throw IntegrityError("point count: parity violated");
    const std::size_t shift = (lw - k) / 2;
    if (out.size() < shift + k + 1) out.resize(shift + k + 1, 0);
    std::int64_t binom = 1;
    for (std::size_t j = 0; j <= k; ++j) {
      const std::int64_t sign = ((k - j) % 2 == 0) ? 1 : -1;
      out[shift + j] += n * c * sign * binom;
      binom = binom * static_cast<std::int64_t>(k - j) / static_cast<std::int64_t>(j + 1);
    }
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::string format_qpoly(const QPoly& p) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = p.size(); k-- > 0;) {
    const std::int64_t a = p[k];
    if (a == 0) continue;
    const std::int64_t mag = a < 0 ? -a : a;
    os << (first ? (a < 0 ? "-" : "") : (a < 0 ? " - " : " + "));
    first = false;
    if (k == 0 || mag != 1) os << mag;
    if (k >= 1) os << "q";
    if (k >= 2) os << "^" << k;
  }
  return first ? "0" : os.str();
}

}  // namespace adlv
