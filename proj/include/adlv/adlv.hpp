#ifndef ADLV_ADLV_HPP_
#define ADLV_ADLV_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adlv/hecke.hpp"

namespace adlv {

// A sigma-conjugacy class b, given by its invariant. A representative is kept
// only when the caller supplied one (Levi-dependent checks need it).
struct BElement {
  SigmaClassDescriptor descriptor;
  std::optional<ExtAffElt> rep;

  bool is_basic() const { return descriptor.is_basic(); }
};

struct ClassContribution {
  ExtAffElt rep;
  std::size_t length = 0;
  std::size_t degree = 0;
  Rational candidate;  // (l(w) + l(O) + deg f) / 2
};

struct DimReport {
  ExtAffElt w;
  SigmaClassDescriptor b;
  std::vector<ClassContribution> classes;
  std::optional<std::int64_t> dim;  // nullopt: empty variety

  bool nonempty() const { return dim.has_value(); }
};

struct GrassmannianReport {
  Coweight mu;
  DimReport top;                          // X_{w0 t^mu}(b)
  std::optional<std::int64_t> dim;        // top.dim - l(w0)
  std::optional<std::int64_t> coset_max;  // max over W t^mu W (when requested)
  std::size_t coset_size = 0;
  std::vector<std::string> violations;
};

struct GhkrReport {
  std::optional<std::int64_t> dim;
  Rational virtual_dim;
  std::int64_t defect = 0;
  bool simple = false;
  bool lowest_cell = false;
  bool supp_full = false;
  bool basic = false;
  bool delta_id = false;
  bool lower_applicable = false;  // dim >= d
  bool upper_applicable = false;  // dim <= d
  bool lower_holds = false;
  bool upper_holds = false;
  bool equal = false;

  bool equal_applicable() const { return lower_applicable && upper_applicable; }
};

// q-polynomial, coefficient k of q^k
using QPoly = std::vector<std::int64_t>;

class AdlvEngine {
 public:
  explicit AdlvEngine(ClassPolyEnginePtr h);

  const ClassPolyEngine& hecke() const noexcept { return *h_; }
  const ConjugacyEngine& conj() const noexcept { return h_->conj(); }
  const AffineWeylGroup& group() const noexcept { return h_->group(); }

  BElement b_of(const ExtAffElt& x, bool keep_rep = false) const;
  BElement b_unit() const { return b_of(group().identity()); }
  // One basic class per Kottwitz value, in Omega order.
  std::vector<BElement> basic_classes() const;

  DimReport dim_adlv(const ExtAffElt& w, const BElement& b) const;
  GrassmannianReport dim_grassmannian(const Coweight& mu, const BElement& b,
                                      bool check_coset = true) const;
  // J: delta-stable set of finite indices. For J = S only the Kottwitz class
  // of b is used; otherwise b needs a representative in the Levi W~_J.
  bool mazur_check(const Coweight& mu, const BElement& b, const std::vector<std::size_t>& J) const;
  std::int64_t defect_basic(const BElement& b) const;
  Rational virtual_dimension(const ExtAffElt& w, const BElement& b,
                             std::optional<std::int64_t> defect = std::nullopt) const;
  GhkrReport ghkr_check(const ExtAffElt& w, const BElement& b,
                        std::optional<std::int64_t> defect = std::nullopt) const;
  // Number of F_q-points of X_w(x) for superbasic x in PGL_n, as a polynomial
  // in q.
  QPoly point_count_superbasic_A(const ExtAffElt& w, const ExtAffElt& x) const;

 private:
  std::size_t delta_orbits_on_S() const { return conj().delta_orbits_on_S(); }

  ClassPolyEnginePtr h_;
};

std::string format_qpoly(const QPoly& p);

}  // namespace adlv

#endif  // ADLV_ADLV_HPP_
