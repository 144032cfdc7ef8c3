#ifndef ADLV_AFFINE_WEYL_HPP_
#define ADLV_AFFINE_WEYL_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "adlv/root_data.hpp"

namespace adlv {

// t^mu w, acting on the apartment by p -> mu + w(p).
struct ExtAffElt {
  Coweight mu;
  FiniteWeylElt w;

  bool operator==(const ExtAffElt& o) const { return mu == o.mu && w == o.w; }
  bool operator!=(const ExtAffElt& o) const { return !(*this == o); }
  bool operator<(const ExtAffElt& o) const {
    if (mu != o.mu) return mu < o.mu;
    return w < o.w;
  }
  std::size_t hash() const noexcept;
};

}  // namespace adlv

template <>
struct std::hash<adlv::ExtAffElt> {
  std::size_t operator()(const adlv::ExtAffElt& x) const noexcept { return x.hash(); }
};

namespace adlv {

using Node = std::size_t;
using NodeSet = std::vector<Node>;  // sorted, duplicate free

// x = s_{word[0]} ... s_{word[k-1]} * omega()[tau]
struct WordForm {
  std::vector<Node> word;
  std::size_t tau = 0;

  bool operator==(const WordForm&) const = default;
  bool operator<(const WordForm& o) const {
    if (word != o.word) return word < o.word;
    return tau < o.tau;
  }
};

struct DoubleCosetForm {
  FiniteWeylElt x;  // x_W
  Coweight mu;      // dominant
  FiniteWeylElt y;  // in ^{I(mu)} W
};

class AffineWeylGroup;

// A diagram automorphism of the finite Dynkin diagram, extended to P, W, the
// affine nodes and W~.
class DiagramAut {
 public:
  DiagramAut() = default;
  static DiagramAut identity(const RootDatum& rd);
  // perm[i] is the image of simple index i (0-based). Raises ConfigError if the
  // permutation does not preserve the Cartan matrix.
  static DiagramAut from_permutation(const RootDatum& rd, std::vector<std::size_t> perm);
  // "id", "" or a list of 1-based images such as "2,1" or "2 1".
  static DiagramAut parse(const RootDatum& rd, const std::string& spec);

  std::size_t operator()(std::size_t i) const { return perm_[i]; }
  const std::vector<std::size_t>& permutation() const noexcept { return perm_; }
  bool is_identity() const;
  std::size_t order() const;
  DiagramAut inverse() const;
  DiagramAut power(std::size_t k) const;
  std::string spec() const;

  template <typename T>
  std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[perm_[i]] = v[i];
    return out;
  }
  FiniteWeylElt apply(const FiniteWeylElt& w) const;
  Root apply_root(const Root& a) const { return apply(a); }

  bool operator==(const DiagramAut&) const = default;

 private:
  std::vector<std::size_t> perm_;
};

class AffineWeylGroup {
 public:
  explicit AffineWeylGroup(RootDatumPtr rd);

  const RootDatum& rd() const noexcept { return *rd_; }
  const RootDatumPtr& rd_ptr() const noexcept { return rd_; }
  std::size_t rank() const noexcept { return rd_->rank(); }

  // Nodes of the affine diagram: 0..c-1 are the affine nodes of the c
  // components, c..c+r-1 the finite simple reflections.
  std::size_t num_nodes() const noexcept { return rank() + num_components(); }
  std::size_t num_components() const noexcept { return rd_->components().size(); }
  bool is_affine_node(Node n) const noexcept { return n < num_components(); }
  Node finite_node(std::size_t i) const noexcept { return num_components() + i; }
  std::size_t finite_index(Node n) const noexcept { return n - num_components(); }
  std::size_t component_of_node(Node n) const;
  std::string node_label(Node n) const;
  Node parse_node(const std::string& label) const;
  NodeSet finite_nodes() const;
  Node delta_node(const DiagramAut& d, Node n) const;

  ExtAffElt identity() const;
  ExtAffElt translation(const Coweight& mu) const;
  ExtAffElt finite(const FiniteWeylElt& w) const;
  const ExtAffElt& simple(Node n) const { return simple_[n]; }

  ExtAffElt multiply(const ExtAffElt& x, const ExtAffElt& y) const;
  ExtAffElt inverse(const ExtAffElt& x) const;
  ExtAffElt apply(const DiagramAut& d, const ExtAffElt& x) const;
  // s_n x and x s_n
  ExtAffElt left_mul(Node n, const ExtAffElt& x) const { return multiply(simple_[n], x); }
  ExtAffElt right_mul(const ExtAffElt& x, Node n) const { return multiply(x, simple_[n]); }
  // s_i x s_{delta(i)}
  ExtAffElt twisted_conj(Node i, const ExtAffElt& x, const DiagramAut& d) const;
  // tau x delta(tau)^{-1}
  ExtAffElt omega_twist(std::size_t tau, const ExtAffElt& x, const DiagramAut& d) const;

  std::size_t length(const ExtAffElt& x) const;
  bool is_left_descent(const ExtAffElt& x, Node n) const;
  bool is_right_descent(const ExtAffElt& x, Node n) const;

  // Length-zero elements, canonical order: when P/Q is cyclic, omega()[m] is
  // the m-th power of a fixed generator.
  const std::vector<ExtAffElt>& omega() const noexcept { return omega_; }
  bool omega_is_cyclic() const noexcept { return omega_cyclic_; }
  // index of the Omega-coset x W_a
  std::size_t omega_part(const ExtAffElt& x) const;
  // Ad(omega()[k]) on nodes
  const std::vector<Node>& omega_perm(std::size_t k) const { return omega_perm_[k]; }
  std::size_t omega_index(const ExtAffElt& tau) const;

  WordForm reduced_word(const ExtAffElt& x) const;
  ExtAffElt from_word(const std::vector<Node>& word, std::size_t tau = 0) const;

  DoubleCosetForm double_coset_form(const ExtAffElt& x) const;
  ExtAffElt from_double_coset(const DoubleCosetForm& f) const;
  FiniteWeylElt eta(const ExtAffElt& x, const DiagramAut& d) const;
  NodeSet support(const ExtAffElt& x) const;
  NodeSet supp_delta(const ExtAffElt& x, const DiagramAut& d) const;
  ExtAffElt demazure(const ExtAffElt& x, const ExtAffElt& y) const;
  bool bruhat_leq(const ExtAffElt& x, const ExtAffElt& y) const;
  // Lowest two-sided cell: x = u w_J v with lengths adding, where W_J is a
  // finite standard parabolic whose longest element has length l(w_0).
  bool is_lowest_cell(const ExtAffElt& x) const;
  const std::vector<NodeSet>& longest_parabolics() const;

  // W_J finite for J inside the affine diagram
  bool is_finite_parabolic(const NodeSet& J) const;
  // x = u * m with u in W_J and m in ^J W~ (side kLeft) or x = m * u with m
  // in W~^J (side kRight). Returns (u, m).
  std::pair<ExtAffElt, ExtAffElt> parabolic_split(const ExtAffElt& x, const NodeSet& J,
                                                  CosetSide side) const;
  bool is_min_coset_rep(const ExtAffElt& x, const NodeSet& J, CosetSide side) const;
  std::vector<ExtAffElt> min_coset_reps(const NodeSet& J, CosetSide side,
                                        std::size_t max_length) const;
  // Elements of the finite group W_J (J inside the affine diagram, W_J finite).
  std::vector<ExtAffElt> parabolic_elements(const NodeSet& J) const;

  // All elements of the given length, ordered by reduced word. Cached.
  std::vector<ExtAffElt> elements_of_length(std::size_t len) const;

  // Element literals.
  ExtAffElt parse(const std::string& literal, bool strict_reduced = false) const;
  std::string format(const ExtAffElt& x) const;
  std::string format_word(const ExtAffElt& x) const;

 private:
  void build_omega();

  RootDatumPtr rd_;
  std::vector<ExtAffElt> simple_;
  std::vector<ExtAffElt> omega_;
  bool omega_cyclic_ = true;
  std::map<std::vector<std::int64_t>, std::size_t> omega_by_class_;
  std::vector<std::vector<Node>> omega_perm_;

  mutable std::mutex layers_mu_;
  mutable std::vector<std::vector<ExtAffElt>> layers_;

  mutable std::once_flag longest_once_;
  mutable std::vector<NodeSet> longest_;

  mutable std::mutex bruhat_mu_;
  mutable std::unordered_map<ExtAffElt, std::unordered_map<ExtAffElt, bool>> bruhat_memo_;
};

using AffineWeylGroupPtr = std::shared_ptr<const AffineWeylGroup>;

std::string format_nodes(const AffineWeylGroup& g, const NodeSet& s);

}  // namespace adlv

#endif  // ADLV_AFFINE_WEYL_HPP_
