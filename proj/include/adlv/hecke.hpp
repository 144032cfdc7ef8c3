#ifndef ADLV_HECKE_HPP_
#define ADLV_HECKE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "adlv/conjugacy.hpp"

namespace adlv {

// Integer polynomial in xi = v - v^{-1}. Trailing zero coefficients are
// trimmed, so the zero polynomial has no coefficients.
class XiPoly {
 public:
  XiPoly() = default;
  explicit XiPoly(std::vector<std::int64_t> coeffs);
  static XiPoly constant(std::int64_t c);
  static XiPoly xi_power(std::size_t k);

  const std::vector<std::int64_t>& coeffs() const noexcept { return c_; }
  std::int64_t coeff(std::size_t k) const { return k < c_.size() ? c_[k] : 0; }
  bool is_zero() const noexcept { return c_.empty(); }
  // nullopt for the zero polynomial (degree -infinity)
  std::optional<std::size_t> degree() const;
  bool nonnegative() const;

  XiPoly operator+(const XiPoly& o) const;
  XiPoly operator-(const XiPoly& o) const;
  XiPoly operator*(const XiPoly& o) const;
  XiPoly& operator+=(const XiPoly& o);
  XiPoly times_xi(std::size_t k = 1) const;
  bool operator==(const XiPoly&) const = default;

  // coefficients of v^k after expanding xi = v - v^{-1}
  std::map<int, std::int64_t> to_v() const;
  std::string to_string() const;    // "3ξ^2 + 1"
  std::string to_v_string() const;  // "v^2 - 2 + v^-2"

 private:
  void trim();
  std::vector<std::int64_t> c_;
};

// Finitely supported element of the Hecke algebra in the T-basis. The
// quadratic relation T_s^2 = xi T_s + 1 keeps coefficients in Z[xi].
class HeckeElt {
 public:
  HeckeElt() = default;
  static HeckeElt basis(const ExtAffElt& x);

  void add(const ExtAffElt& x, const XiPoly& p);
  XiPoly coeff(const ExtAffElt& x) const;
  const std::unordered_map<ExtAffElt, XiPoly>& terms() const noexcept { return t_; }
  bool in_positive_cone() const;
  bool operator==(const HeckeElt& o) const { return t_ == o.t_; }

 private:
  std::unordered_map<ExtAffElt, XiPoly> t_;
};

// T_x T_s
HeckeElt hecke_mul_basis(const AffineWeylGroup& g, const ExtAffElt& x, Node s);
HeckeElt hecke_mul_simple(const AffineWeylGroup& g, const HeckeElt& a, Node s);
HeckeElt hecke_mul(const AffineWeylGroup& g, const HeckeElt& a, const HeckeElt& b);

// Class polynomials of T_w, keyed by the canonical minimal representative of
// each class.
struct ClassPolyTable {
  ExtAffElt source;
  std::map<ExtAffElt, XiPoly> entries;

  XiPoly at(const ExtAffElt& rep) const;
  bool operator==(const ClassPolyTable& o) const { return entries == o.entries; }
};

struct PathReport {
  bool identical = true;
  std::vector<std::string> divergences;
};

class ClassPolyEngine {
 public:
  explicit ClassPolyEngine(ConjugacyEnginePtr conj);

  const ConjugacyEngine& conj() const noexcept { return *conj_; }
  const ConjugacyEnginePtr& conj_ptr() const noexcept { return conj_; }
  const AffineWeylGroup& group() const noexcept { return conj_->group(); }

  // Deterministic recursion (first reducible element of the same-length orbit
  // in BFS order, smallest node first). Memoized.
  ClassPolyTable class_polynomials(const ExtAffElt& w) const;
  // Recursion with uniformly random choices of (w1, i); private memo.
  ClassPolyTable class_polynomials_random(const ExtAffElt& w, std::mt19937_64& rng) const;
  PathReport verify_path_independence(const ExtAffElt& w, std::size_t trials,
                                      std::uint64_t seed) const;

  // Seeds the memo (e.g. from a disk cache). A conflicting value raises
  // IntegrityError.
  void insert_memo(const ExtAffElt& w, const ClassPolyTable& t) const;
  std::vector<std::pair<ExtAffElt, ClassPolyTable>> memo_snapshot() const;
  // Called once for every table computed (not seeded) by this engine.
  void set_observer(std::function<void(const ExtAffElt&, const ClassPolyTable&)> f) {
    observer_ = std::move(f);
  }

 private:
  struct Step {
    ExtAffElt w1;
    Node i;
  };
  std::optional<Step> first_reduction(const ExtAffElt& w) const;
  std::vector<Step> all_reductions(const ExtAffElt& w) const;
  ClassPolyTable random_rec(const ExtAffElt& w, std::mt19937_64& rng,
                            std::unordered_map<ExtAffElt, ClassPolyTable>& memo) const;

  ConjugacyEnginePtr conj_;
  std::function<void(const ExtAffElt&, const ClassPolyTable&)> observer_;
  mutable std::mutex mu_;
  mutable std::unordered_map<ExtAffElt, ClassPolyTable> memo_;
};

using ClassPolyEnginePtr = std::shared_ptr<const ClassPolyEngine>;

std::string format_table(const AffineWeylGroup& g, const ClassPolyTable& t);

}  // namespace adlv

#endif  // ADLV_HECKE_HPP_
