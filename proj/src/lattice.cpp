#include "adlv/lattice.hpp"

#include <cstdlib>
#include <numeric>
#include <utility>

#include "adlv/errors.hpp"

namespace adlv {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<std::int64_t> IntMatrix::apply(std::span<const std::int64_t> x) const {
  if (x.size() != cols_) throw ArgumentError("IntMatrix::apply: dimension mismatch");
  std::vector<std::int64_t> y(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw ArgumentError("IntMatrix product: dimension mismatch");
  IntMatrix r(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::int64_t a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) r(i, j) += a * other(k, j);
    }
  return r;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] += k * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += k * m(src, j);
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += k * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

// floor division for signed integers
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input) {
  IntMatrix d = input;
  const std::size_t n = d.rows();
  const std::size_t m = d.cols();
  IntMatrix u = IntMatrix::identity(n);
  IntMatrix v = IntMatrix::identity(m);

  const std::size_t steps = std::min(n, m);
  for (std::size_t t = 0; t < steps; ++t) {
    // pick the smallest nonzero entry of the remaining block as pivot
    bool found = false;
    std::size_t pr = t, pc = t;
    std::int64_t best = 0;
    for (std::size_t i = t; i < n; ++i)
      for (std::size_t j = t; j < m; ++j)
        if (d(i, j) != 0 && (!found || std::llabs(d(i, j)) < best)) {
          best = std::llabs(d(i, j));
          pr = i;
          pc = j;
          found = true;
        }
    if (!found) break;
    swap_rows(d, t, pr);
    swap_rows(u, t, pr);
    swap_cols(d, t, pc);
    swap_cols(v, t, pc);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (d(i, t) == 0) continue;
        const std::int64_t q = floor_div(d(i, t), d(t, t));
        add_row(d, i, t, -q);
        add_row(u, i, t, -q);
        if (d(i, t) != 0) {
          swap_rows(d, t, i);
          swap_rows(u, t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < m; ++j) {
        if (d(t, j) == 0) continue;
        const std::int64_t q = floor_div(d(t, j), d(t, t));
        add_col(d, j, t, -q);
        add_col(v, j, t, -q);
        if (d(t, j) != 0) {
          swap_cols(d, t, j);
          swap_cols(v, t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // enforce divisibility of the remaining block by the pivot
      bool fixed = true;
      for (std::size_t i = t + 1; i < n && fixed; ++i)
        for (std::size_t j = t + 1; j < m; ++j)
          if (d(i, j) % d(t, t) != 0) {
            add_row(d, t, i, 1);
            add_row(u, t, i, 1);
            fixed = false;
            break;
          }
      if (fixed) break;
    }
    if (d(t, t) < 0) {
      negate_row(d, t);
      negate_row(u, t);
    }
  }

  SmithForm out{std::move(u), std::move(v), {}};
  out.diagonal.resize(steps);
  for (std::size_t t = 0; t < steps; ++t) out.diagonal[t] = d(t, t);
  return out;
}

LatticeQuotient::LatticeQuotient(const IntMatrix& generators) : n_(generators.rows()) {
  if (generators.cols() == 0) {
    u_ = IntMatrix::identity(n_);
    diag_.assign(n_, 0);
  } else {
    SmithForm snf = smith_normal_form(generators);
    u_ = std::move(snf.U);
    diag_.assign(n_, 0);
    for (std::size_t i = 0; i < snf.diagonal.size(); ++i) diag_[i] = snf.diagonal[i];
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (diag_[i] == 1) continue;
    kept_.push_back(i);
    factors_.push_back(diag_[i]);
  }
}

std::vector<std::int64_t> LatticeQuotient::class_of(std::span<const std::int64_t> x) const {
  if (x.size() != n_) throw ArgumentError("LatticeQuotient::class_of: dimension mismatch");
  const std::vector<std::int64_t> y = u_.apply(x);
  std::vector<std::int64_t> r;
  r.reserve(kept_.size());
  for (std::size_t k = 0; k < kept_.size(); ++k) {
    const std::int64_t d = factors_[k];
    const std::int64_t val = y[kept_[k]];
    if (d == 0) {
      r.push_back(val);
    } else {
      std::int64_t res = val % d;
      if (res < 0) res += d;
      r.push_back(res);
    }
  }
  return r;
}

bool LatticeQuotient::contains(std::span<const std::int64_t> x) const {
  for (std::int64_t c : class_of(x))
    if (c != 0) return false;
  return true;
}

std::optional<std::int64_t> LatticeQuotient::order() const {
  std::int64_t o = 1;
  for (std::int64_t d : factors_) {
    if (d == 0) return std::nullopt;
    o *= d;
  }
  return o;
}

std::optional<std::vector<Rational>> solve_rational(const IntMatrix& m,
                                                    std::span<const std::int64_t> b) {
  const std::size_t n = m.rows();
  if (m.cols() != n || b.size() != n) throw ArgumentError("solve_rational: shape mismatch");
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
    a[i][n] = Rational(b[i]);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].numerator() == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[c], a[piv]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c].numerator() == 0) continue;
      const Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

}  // namespace adlv
