#pragma once

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace cycdual {

using Bits = boost::dynamic_bitset<>;

/// Matrix over Z_2, one bitset per row.
class GF2Matrix {
 public:
  GF2Matrix() = default;
  GF2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, Bits(cols)) {}

  static GF2Matrix identity(std::size_t n) {
    GF2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return rows_[r][c]; }
  void set(std::size_t r, std::size_t c, bool v) { rows_[r][c] = v; }
  const Bits& row(std::size_t r) const { return rows_[r]; }

  GF2Matrix transpose() const {
    GF2Matrix t(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r)
      for (std::size_t c = rows_[r].find_first(); c != Bits::npos; c = rows_[r].find_next(c)) t.set(c, r, true);
    return t;
  }

  GF2Matrix select_rows(const std::vector<std::size_t>& rs) const {
    GF2Matrix s(rs.size(), cols_);
    for (std::size_t i = 0; i < rs.size(); ++i) s.rows_[i] = rows_[rs[i]];
    return s;
  }

  GF2Matrix select_cols(const std::vector<std::size_t>& cs) const {
    GF2Matrix s(rows(), cs.size());
    for (std::size_t r = 0; r < rows(); ++r)
      for (std::size_t j = 0; j < cs.size(); ++j) s.set(r, j, get(r, cs[j]));
    return s;
  }

  /// Mx over Z_2.
  Bits multiply(const Bits& x) const {
    Bits y(rows());
    for (std::size_t r = 0; r < rows(); ++r) y[r] = (rows_[r] & x).count() % 2 == 1;
    return y;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<Bits> rows_;
};

struct GF2Rank {
  std::size_t rank = 0;
  /// Lexicographically first set of linearly independent rows spanning the row space.
  std::vector<std::size_t> row_basis;
  /// Pivot columns of the reduced echelon form; a basis of the column space.
  std::vector<std::size_t> col_basis;
};

inline GF2Rank gf2_rank(const GF2Matrix& m) {
  GF2Rank out;
  // Rows are inserted one at a time into an echelon basis keyed by leading bit;
  // a row that reduces to zero is dependent on the earlier ones.
  std::vector<Bits> basis;
  std::vector<std::size_t> lead;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Bits v = m.row(r);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (v[lead[i]]) v ^= basis[i];
    const std::size_t p = v.find_first();
    if (p == Bits::npos) continue;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i][p]) basis[i] ^= v;
    basis.push_back(v);
    lead.push_back(p);
    out.row_basis.push_back(r);
  }
  out.rank = basis.size();
  // Pivot columns of the fully reduced form: the smallest-index column basis.
  out.col_basis = lead;
  std::sort(out.col_basis.begin(), out.col_basis.end());
  return out;
}

/// Solves Nx = b over Z_2; free variables are set to zero.
inline std::optional<Bits> gf2_solve(const GF2Matrix& n, const Bits& b) {
  const std::size_t rows = n.rows(), cols = n.cols();
  std::vector<Bits> aug(rows, Bits(cols + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) aug[r][c] = n.get(r, c);
    aug[r][cols] = b[r];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t p = row;
    while (p < rows && !aug[p][c]) ++p;
    if (p == rows) continue;
    std::swap(aug[p], aug[row]);
    for (std::size_t r = 0; r < rows; ++r)
      if (r != row && aug[r][c]) aug[r] ^= aug[row];
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r)
    if (aug[r][cols]) return std::nullopt;
  Bits x(cols);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = aug[i][cols];
  return x;
}

}  // namespace cycdual
