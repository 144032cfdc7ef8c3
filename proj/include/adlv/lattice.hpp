#ifndef ADLV_LATTICE_HPP_
#define ADLV_LATTICE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace adlv {

using Rational = boost::rational<std::int64_t>;

// Dense row-major integer matrix. Only sizes up to a few dozen are expected.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::int64_t& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<std::int64_t> apply(std::span<const std::int64_t> x) const;
  IntMatrix operator*(const IntMatrix& other) const;
  IntMatrix transposed() const;

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> a_;
};

// U * A * V = D with U, V unimodular and D diagonal with d_0 | d_1 | ... .
struct SmithForm {
  IntMatrix U;
  IntMatrix V;
  std::vector<std::int64_t> diagonal;  // length min(rows, cols), nonnegative
};

SmithForm smith_normal_form(const IntMatrix& a);

// The finitely generated abelian group Z^n / L, where L is spanned by the
// columns of a generator matrix. Classes are encoded by canonical residue
// vectors: one entry per nontrivial invariant factor (entries with a zero
// invariant factor are free coordinates).
class LatticeQuotient {
 public:
  LatticeQuotient() = default;
  explicit LatticeQuotient(const IntMatrix& generators);

  std::size_t ambient_rank() const noexcept { return n_; }

  std::vector<std::int64_t> class_of(std::span<const std::int64_t> x) const;
  bool contains(std::span<const std::int64_t> x) const;

  // Invariant factors different from 1, in order; 0 stands for a copy of Z.
  const std::vector<std::int64_t>& invariant_factors() const noexcept { return factors_; }

  // Group order, or nullopt if the quotient is infinite.
  std::optional<std::int64_t> order() const;

 private:
  std::size_t n_ = 0;
  IntMatrix u_;
  std::vector<std::int64_t> diag_;      // full diagonal padded with zeros to n_
  std::vector<std::size_t> kept_;       // rows of U x that carry information
  std::vector<std::int64_t> factors_;
};

// Solves M x = b over Q for square invertible M. Returns nullopt if M is singular.
std::optional<std::vector<Rational>> solve_rational(const IntMatrix& m,
                                                    std::span<const std::int64_t> b);

std::string to_string(const Rational& q);

}  // namespace adlv

#endif  // ADLV_LATTICE_HPP_
