#ifndef ADLV_CONJUGACY_HPP_
#define ADLV_CONJUGACY_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "adlv/affine_weyl.hpp"

namespace adlv {

inline constexpr std::size_t kDefaultBudget = 1'000'000;

// The invariant f = (dominant Newton point, Kottwitz class).
struct SigmaClassDescriptor {
  QCoweight newton;
  std::vector<std::int64_t> kottwitz;

  bool operator==(const SigmaClassDescriptor&) const = default;
  bool operator<(const SigmaClassDescriptor& o) const;
  bool is_basic() const;
  std::string to_string() const;
};

struct TraceStep {
  bool omega = false;  // true: x -> tau x delta(tau)^{-1}; false: x -> s_i x s_delta(i)
  std::size_t index = 0;
  ExtAffElt before;
  ExtAffElt after;
  int dl = 0;  // 0 or -2
};

struct ReductionTrace {
  std::vector<TraceStep> steps;
  ExtAffElt terminal;

  // "STEP <i|tau^k> <before> -> <after> dl=<0|-2>"
  std::vector<std::string> lines(const AffineWeylGroup& g) const;
};

struct StraightClass {
  ExtAffElt rep;  // canonical minimal representative
  SigmaClassDescriptor descriptor;
  std::size_t length = 0;
  bool superstraight = false;
};

struct Min2Decomposition {
  NodeSet J;
  ExtAffElt x;      // straight, in ^J W~^{delta(J)}, Ad(x) delta(J) = J
  ExtAffElt u;      // in W_J
  ExtAffElt w_min;  // the member u x of the orbit of the input
};

struct PartialReduction {
  ExtAffElt terminal;  // u * x_hat
  ExtAffElt x_hat;     // in ^S W~
  ExtAffElt u;         // in W_{I(x_hat)}
  NodeSet I;           // I(x_hat), as finite nodes
  ReductionTrace trace;
};

// Twisted-conjugation machinery for a fixed group and diagram automorphism.
// Caches are guarded by a mutex; inserts are idempotent.
class ConjugacyEngine {
 public:
  ConjugacyEngine(AffineWeylGroupPtr g, DiagramAut delta, std::size_t budget = kDefaultBudget);

  const AffineWeylGroup& group() const noexcept { return *g_; }
  const AffineWeylGroupPtr& group_ptr() const noexcept { return g_; }
  const DiagramAut& delta() const noexcept { return delta_; }
  std::size_t budget() const noexcept { return budget_; }
  void set_budget(std::size_t b) { budget_ = b; }

  // nu_x = lambda / n (not made dominant)
  QCoweight newton_vector(const ExtAffElt& x) const;
  QCoweight newton_point(const ExtAffElt& x) const;
  std::vector<std::int64_t> kottwitz(const ExtAffElt& x) const;
  std::vector<std::int64_t> kottwitz_of_coweight(const Coweight& mu) const;
  SigmaClassDescriptor invariant_f(const ExtAffElt& x) const;
  bool is_straight(const ExtAffElt& x) const;
  // <nu, 2 rho> as an exact rational
  Rational pair_2rho(const QCoweight& nu) const;

  ExtAffElt twisted(Node i, const ExtAffElt& x) const { return g_->twisted_conj(i, x, delta_); }
  ExtAffElt omega_twist(std::size_t k, const ExtAffElt& x) const {
    return g_->omega_twist(k, x, delta_);
  }

  // Same-length orbit of x under s_i(.)s_delta(i), plus Omega-twists when
  // with_omega is set. BFS order, x first.
  std::vector<ExtAffElt> same_length_orbit(const ExtAffElt& x, bool with_omega) const;

  std::pair<ExtAffElt, ReductionTrace> reduce_to_minimal(const ExtAffElt& x) const;
  bool is_minimal(const ExtAffElt& x) const;
  bool same_conjugacy_class(const ExtAffElt& x, const ExtAffElt& y) const;

  // Canonical minimal representative of the class of x: the least element of
  // O_min in the (reduced word, Omega index) order.
  ExtAffElt canonical_rep(const ExtAffElt& x) const;
  // O_min of the class of x, ordered by reduced word.
  std::vector<ExtAffElt> minimal_elements(const ExtAffElt& x) const;

  std::vector<StraightClass> enumerate_straight_classes(std::size_t length_bound) const;

  Min2Decomposition min2_decompose(const ExtAffElt& x_min) const;
  bool is_superstraight_class(const ExtAffElt& x_min) const;
  bool is_Jw_alcove(const ExtAffElt& x, const std::vector<std::size_t>& J,
                    const FiniteWeylElt& w) const;
  PartialReduction partial_reduce(const ExtAffElt& x) const;

  // I(x) = max{J in S : Ad(x) delta(J) = J}, finite indices
  std::vector<std::size_t> max_stable_subset(const ExtAffElt& x) const;
  // number of delta-orbits on S
  std::size_t delta_orbits_on_S() const;
  // Length inside the Iwahori-Weyl group of the Levi M_J (x must lie in it).
  std::size_t levi_length(const ExtAffElt& x, const std::vector<std::size_t>& J) const;
  bool in_levi(const ExtAffElt& x, const std::vector<std::size_t>& J) const;
  // Superbasic test for a length-zero element x of the Levi W~_J.
  bool is_superbasic_in_levi(const ExtAffElt& x, const std::vector<std::size_t>& J) const;

 private:
  struct Neighbor {
    bool omega;
    std::size_t index;
    ExtAffElt elt;
  };
  std::vector<Neighbor> same_length_neighbors(const ExtAffElt& x, std::size_t len,
                                              bool with_omega) const;
  const LatticeQuotient& twisted_lattice(const FiniteWeylElt& wy) const;
  void compute_class(const ExtAffElt& m) const;

  AffineWeylGroupPtr g_;
  DiagramAut delta_;
  std::size_t budget_;
  LatticeQuotient kottwitz_q_;
  IntMatrix delta_matrix_;

  mutable std::mutex mu_;
  mutable std::unordered_map<ExtAffElt, bool> minimal_memo_;
  mutable std::unordered_map<ExtAffElt, ExtAffElt> canon_memo_;
  mutable std::unordered_map<ExtAffElt, std::vector<ExtAffElt>> omin_memo_;  // keyed by canon
  mutable std::unordered_map<FiniteWeylElt, std::shared_ptr<LatticeQuotient>> lattice_memo_;
};

using ConjugacyEnginePtr = std::shared_ptr<const ConjugacyEngine>;

}  // namespace adlv

#endif  // ADLV_CONJUGACY_HPP_
