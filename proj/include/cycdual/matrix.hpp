#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cycdual/rational.hpp"

namespace cycdual {

/// Dense row-major matrix. Used with int for incidence matrices and with
/// Rational for everything the LP solver touches.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    Matrix s(rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) s(i, j) = (*this)(rs[i], cs[j]);
    return s;
  }

  /// Stack `below` under this matrix; column counts must agree.
  Matrix vstack(const Matrix& below) const {
    if (below.cols_ != cols_ && rows_ != 0 && below.rows_ != 0)
      throw std::invalid_argument("vstack: column mismatch");
    Matrix s(rows_ + below.rows_, std::max(cols_, below.cols_));
    std::copy(data_.begin(), data_.end(), s.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(), s.data_.begin() + data_.size());
    return s;
  }

  template <typename S>
  Matrix<S> cast() const {
    Matrix<S> out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(r, c) = S((*this)(r, c));
    return out;
  }

  Matrix scaled(const T& k) const {
    Matrix out(*this);
    for (auto& x : out.data_) x *= k;
    return out;
  }

  std::vector<T> multiply(const std::vector<T>& x) const {
    std::vector<T> y(rows_, T(0));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) y[r] += (*this)(r, c) * x[c];
    return y;
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<int>;
using RationalMatrix = Matrix<Rational>;

/// Fraction-free (Bareiss) determinant. Every division is exact, so T can be
/// any integer type wide enough for the matrix's minors.
template <typename T>
T bareiss_determinant(Matrix<T> a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  if (n == 0) return T(1);
  T prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return T(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  T det = a(n - 1, n - 1);
  return negate ? T(-det) : det;
}

/**
 * Fraction-free Gauss-Jordan on [R | I]. On return `scale` is +-det(R) and
 * `scaled_inverse` equals scale * R^{-1}, both integral. For singular R,
 * scale is zero and scaled_inverse is left empty.
 */
template <typename T>
struct ScaledInverse {
  T scale;
  Matrix<T> scaled_inverse;
};

template <typename T>
ScaledInverse<T> fraction_free_inverse(const Matrix<T>& r) {
  const std::size_t n = r.rows();
  if (n != r.cols()) throw std::invalid_argument("inverse of non-square matrix");
  Matrix<T> a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = r(i, j);
    a(i, n + i) = T(1);
  }
  T prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return {T(0), {}};
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a(k, j), a(p, j));
    }
    const T pivot = a(k, k);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const T factor = a(i, k);
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        a(i, j) = (pivot * a(i, j) - factor * a(k, j)) / prev;
      }
      a(i, k) = T(0);
    }
    prev = pivot;
  }
  ScaledInverse<T> out{prev, Matrix<T>(n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.scaled_inverse(i, j) = a(i, n + j);
  return out;
}

/// Exact inverse over the rationals (Gauss-Jordan). Throws on singular input.
inline RationalMatrix rational_inverse(const RationalMatrix& r) {
  const std::size_t n = r.rows();
  RationalMatrix a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = r(i, j);
    a(i, n + i) = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    if (p != k)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a(k, j), a(p, j));
    const Rational pivot = a(k, k);
    for (std::size_t j = 0; j < 2 * n; ++j) a(k, j) /= pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const Rational f = a(i, k);
      for (std::size_t j = 0; j < 2 * n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = a(i, n + j);
  return inv;
}

namespace detail {

/// Calls f(rows, cols) for every pair of equal-size index subsets with side
/// in [1, cap]. Stops early when f returns false; returns false in that case.
template <typename F>
bool for_each_square_submatrix(std::size_t nrows, std::size_t ncols, std::size_t cap, F&& f) {
  const std::size_t top = std::min({cap, nrows, ncols});
  auto next_comb = [](std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (c[i] < n - k + i) {
        ++c[i];
        for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  for (std::size_t s = 1; s <= top; ++s) {
    std::vector<std::size_t> rs(s);
    std::iota(rs.begin(), rs.end(), 0);
    do {
      std::vector<std::size_t> cs(s);
      std::iota(cs.begin(), cs.end(), 0);
      do {
        if (!f(rs, cs)) return false;
      } while (next_comb(cs, ncols));
    } while (next_comb(rs, nrows));
  }
  return true;
}

/// Integer matrix L*M together with the common denominator L.
struct Cleared {
  Matrix<BigInt> values;
  BigInt denominator;
};

inline Cleared clear_denominators(const RationalMatrix& m) {
  BigInt l = 1;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
  Matrix<BigInt> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Rational scaled = m(r, c) * Rational(l);
      out(r, c) = scaled.get_num();
    }
  return {std::move(out), l};
}

/// True when all minors (and their pairwise products) of every square
/// submatrix with side <= cap fit in 64 bits, by Hadamard's bound.
inline bool fits_in_int64(const Matrix<BigInt>& m, std::size_t cap) {
  double max_abs = 0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) max_abs = std::max(max_abs, std::fabs(m(r, c).get_d()));
  const double side = static_cast<double>(std::min({cap, m.rows(), m.cols()}));
  if (side == 0) return true;
  const double log_bound = side * std::log2(std::max(1.0, max_abs) * std::sqrt(side));
  return 2 * log_bound + 2 < 62;
}

inline Matrix<std::int64_t> to_int64(const Matrix<BigInt>& m) {
  Matrix<std::int64_t> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).get_si();
  return out;
}

template <typename T>
bool tu_check(const Matrix<T>& m, std::size_t cap) {
  return for_each_square_submatrix(m.rows(), m.cols(), cap, [&](const auto& rs, const auto& cs) {
    const T d = bareiss_determinant(m.submatrix(rs, cs));
    return d == T(0) || d == T(1) || d == T(-1);
  });
}

template <typename T>
bool regular_check(const Matrix<T>& m, const T& multiplier, std::size_t cap) {
  return for_each_square_submatrix(m.rows(), m.cols(), cap, [&](const auto& rs, const auto& cs) {
    const auto inv = fraction_free_inverse(m.submatrix(rs, cs));
    if (inv.scale == T(0)) return true;
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j)
        if ((multiplier * inv.scaled_inverse(i, j)) % inv.scale != T(0)) return false;
    return true;
  });
}

}  // namespace detail

/**
 * Bounded total-unimodularity check: every square submatrix with side at
 * most `size_cap` has determinant in {-1, 0, 1}. Exhaustive when
 * size_cap >= min(rows, cols). Requires an integral matrix.
 */
inline bool is_totally_unimodular(const RationalMatrix& m, std::size_t size_cap) {
  auto cleared = detail::clear_denominators(m);
  if (cleared.denominator != 1) throw std::invalid_argument("is_totally_unimodular: matrix not integral");
  if (detail::fits_in_int64(cleared.values, size_cap))
    return detail::tu_check(detail::to_int64(cleared.values), size_cap);
  return detail::tu_check(cleared.values, size_cap);
}

/**
 * Bounded k-regularity check: k * R^{-1} is integral for every nonsingular
 * square submatrix R with side at most `size_cap`.
 *
 * With M = M'/L for integral M', R = R'/L and k R^{-1} = k L adj(R') / det(R'),
 * so the test runs entirely over integers.
 */
inline bool is_k_regular(const RationalMatrix& m, long k, std::size_t size_cap) {
  if (k <= 0) throw std::invalid_argument("is_k_regular: k must be positive");
  auto cleared = detail::clear_denominators(m);
  const BigInt multiplier = BigInt(k) * cleared.denominator;
  if (multiplier.fits_slong_p() && std::abs(multiplier.get_si()) < (1L << 20) &&
      detail::fits_in_int64(cleared.values, size_cap)) {
    // The scaled inverse entries are minors; k*L*minor must also fit.
    return detail::regular_check(detail::to_int64(cleared.values), std::int64_t(multiplier.get_si()), size_cap);
  }
  return detail::regular_check(cleared.values, multiplier, size_cap);
}

}  // namespace cycdual
