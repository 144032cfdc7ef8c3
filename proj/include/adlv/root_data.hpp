#ifndef ADLV_ROOT_DATA_HPP_
#define ADLV_ROOT_DATA_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "adlv/errors.hpp"
#include "adlv/lattice.hpp"

namespace adlv {

// Coweights are stored in the fundamental-coweight basis, so coordinate i is
// the pairing with the simple root alpha_i.
using Coweight = std::vector<std::int64_t>;
using QCoweight = std::vector<Rational>;

// Roots are stored in the simple-root basis.
using Root = std::vector<std::int64_t>;

// A finite Weyl group element, stored as its integer matrix acting on
// coweights (fundamental-coweight coordinates). Column j is the image of the
// fundamental coweight j; this is equivalent to recording the images of the
// simple coroots, and is unique per element.
class FiniteWeylElt {
 public:
  FiniteWeylElt() = default;
  static FiniteWeylElt identity(std::size_t rank);

  std::size_t rank() const noexcept { return r_; }
  std::int64_t at(std::size_t i, std::size_t j) const { return m_[i * r_ + j]; }
  std::int64_t& at(std::size_t i, std::size_t j) { return m_[i * r_ + j]; }
  const std::vector<std::int64_t>& data() const noexcept { return m_; }

  bool is_identity() const;

  FiniteWeylElt operator*(const FiniteWeylElt& o) const;
  bool operator==(const FiniteWeylElt& o) const { return r_ == o.r_ && m_ == o.m_; }
  bool operator!=(const FiniteWeylElt& o) const { return !(*this == o); }
  bool operator<(const FiniteWeylElt& o) const { return m_ < o.m_; }

  template <typename T>
  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != r_) throw ArgumentError("Weyl action: dimension mismatch");
    std::vector<T> out(r_, T(0));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < r_; ++j)
        if (m_[i * r_ + j] != 0) out[i] += T(m_[i * r_ + j]) * v[j];
    return out;
  }

  std::size_t hash() const noexcept;

 private:
  std::size_t r_ = 0;
  std::vector<std::int64_t> m_;
};

struct TypeComponent {
  char letter;
  int rank;
  int offset;  // first simple index of this component
};

enum class CosetSide {
  kLeft,   // minimal representatives of W_J \ W, i.e. ^J W
  kRight,  // minimal representatives of W / W_J, i.e. W^J
};

class RootDatum {
 public:
  const std::string& label() const noexcept { return label_; }
  std::size_t rank() const noexcept { return rank_; }
  const std::vector<TypeComponent>& components() const noexcept { return components_; }
  std::size_t component_of(std::size_t i) const { return comp_of_[i]; }

  // cartan()(i, j) = <alpha_i^vee, alpha_j>
  const IntMatrix& cartan() const noexcept { return cartan_; }
  const std::vector<Root>& positive_roots() const noexcept { return pos_roots_; }
  // coroot of positive_roots()[k] in fundamental-coweight coordinates
  const Coweight& coroot(std::size_t k) const { return coroots_[k]; }
  Coweight simple_coroot(std::size_t j) const;
  Coweight fundamental_coweight(std::size_t j) const;
  const Root& rho2() const noexcept { return rho2_; }
  // index into positive_roots() of the highest root of a component
  std::size_t highest_root(std::size_t comp) const { return highest_[comp]; }

  // P/Q, with Q spanned by the simple coroots
  const LatticeQuotient& fundamental_group() const noexcept { return pq_; }

  template <typename T>
  T pair(const std::vector<T>& v, const Root& a) const {
    T s(0);
    for (std::size_t i = 0; i < rank_; ++i)
      if (a[i] != 0) s += T(a[i]) * v[i];
    return s;
  }
  // <v, 2 rho>
  template <typename T>
  T pair_2rho(const std::vector<T>& v) const { return pair(v, rho2_); }

  const FiniteWeylElt& simple_reflection(std::size_t i) const { return simple_[i]; }
  FiniteWeylElt identity() const { return FiniteWeylElt::identity(rank_); }
  FiniteWeylElt reflection(const Root& positive_root) const;

  // w(rho^vee) with rho^vee = sum of fundamental coweights; the sign of its
  // pairing with a positive root a decides whether w^{-1} a is positive.
  Coweight rho_image(const FiniteWeylElt& w) const;
  bool inverse_maps_positive(const FiniteWeylElt& w, const Root& a) const;

  std::size_t length(const FiniteWeylElt& w) const;
  // left descent: s_i w < w
  bool is_left_descent(const FiniteWeylElt& w, std::size_t i) const;
  bool is_right_descent(const FiniteWeylElt& w, std::size_t i) const;
  // w = s_{i_1} ... s_{i_k}, smallest index first
  std::vector<std::size_t> reduced_word(const FiniteWeylElt& w) const;
  FiniteWeylElt from_word(const std::vector<std::size_t>& word) const;
  FiniteWeylElt inverse(const FiniteWeylElt& w) const;
  FiniteWeylElt longest_element() const;
  FiniteWeylElt longest_element(const std::vector<std::size_t>& J) const;

  // Image of a root (simple-root coordinates) under w.
  Root act_on_root(const FiniteWeylElt& w, const Root& a) const;
  bool is_positive_root(const Root& a) const;

  template <typename T>
  std::vector<T> act(const FiniteWeylElt& w, const std::vector<T>& v) const {
    return w.apply(v);
  }

  // Returns (dominant representative, minimal w) with w(v) = vbar.
  template <typename T>
  std::pair<std::vector<T>, FiniteWeylElt> dominant_rep(std::vector<T> v) const {
    if (v.size() != rank_) throw ArgumentError("dominant_rep: dimension mismatch");
    FiniteWeylElt w = identity();
    for (;;) {
      std::size_t i = 0;
      while (i < rank_ && !(v[i] < T(0))) ++i;
      if (i == rank_) break;
      v = simple_[i].apply(v);
      w = simple_[i] * w;
    }
    return {std::move(v), std::move(w)};
  }

  template <typename T>
  bool is_dominant(const std::vector<T>& v) const {
    for (const T& c : v)
      if (c < T(0)) return false;
    return true;
  }

  std::vector<std::size_t> zero_pairing_set(const Coweight& mu) const;

  // All of W ordered by length then reduced word. Cached; throws for very
  // large groups.
  const std::vector<FiniteWeylElt>& elements() const;
  std::size_t order_of_weyl_group() const;

  bool in_parabolic(const FiniteWeylElt& w, const std::vector<std::size_t>& J) const;
  bool is_min_coset_rep(const FiniteWeylElt& w, const std::vector<std::size_t>& J,
                        CosetSide side) const;
  void min_coset_reps(const std::vector<std::size_t>& J, CosetSide side,
                      const std::function<void(const FiniteWeylElt&)>& emit) const;
  std::vector<FiniteWeylElt> min_coset_reps(const std::vector<std::size_t>& J,
                                            CosetSide side) const;
  // v = z y with z in W_J and y in ^J W
  std::pair<FiniteWeylElt, FiniteWeylElt> left_parabolic_split(
      const FiniteWeylElt& v, const std::vector<std::size_t>& J) const;

  friend std::shared_ptr<const RootDatum> build_root_datum(const std::string& label);

 private:
  RootDatum() = default;

  std::string label_;
  std::size_t rank_ = 0;
  std::vector<TypeComponent> components_;
  std::vector<std::size_t> comp_of_;
  IntMatrix cartan_;
  std::vector<std::int64_t> symmetrizer_;
  std::vector<Root> pos_roots_;
  std::vector<Coweight> coroots_;
  Root rho2_;
  std::vector<std::size_t> highest_;
  std::vector<FiniteWeylElt> simple_;
  LatticeQuotient pq_;

  mutable std::once_flag elements_once_;
  mutable std::vector<FiniteWeylElt> elements_;
};

using RootDatumPtr = std::shared_ptr<const RootDatum>;

// Parses "A2", "c2", "A2xA2", ... . Unknown labels raise ConfigError.
RootDatumPtr build_root_datum(const std::string& label);

std::string format_coweight(const Coweight& v);
std::string format_qcoweight(const QCoweight& v);
QCoweight to_rational(const Coweight& v);

}  // namespace adlv

template <>
struct std::hash<adlv::FiniteWeylElt> {
  std::size_t operator()(const adlv::FiniteWeylElt& w) const noexcept { return w.hash(); }
};

#endif  // ADLV_ROOT_DATA_HPP_
