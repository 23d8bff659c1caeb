#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cycdual/matrix.hpp"
#include "cycdual/rational.hpp"

namespace cycdual {

/// maximize c.x subject to Ax <= b, x >= 0.
struct LinearProgram {
  RationalMatrix a;
  std::vector<Rational> b;
  std::vector<Rational> c;

  void validate() const {
    if (a.rows() != b.size() || a.cols() != c.size())
      throw std::invalid_argument("LinearProgram: dimension mismatch (" + std::to_string(a.rows()) + "x" +
                                  std::to_string(a.cols()) + " vs b=" + std::to_string(b.size()) +
                                  ", c=" + std::to_string(c.size()) + ")");
  }
};

enum class LPStatus { optimal, infeasible, unbounded };

inline const char* status_name(LPStatus s) {
  switch (s) {
    case LPStatus::optimal: return "optimal";
    case LPStatus::infeasible: return "infeasible";
    case LPStatus::unbounded: return "unbounded";
  }
  return "?";
}

struct LPSolution {
  LPStatus status = LPStatus::infeasible;
  std::vector<Rational> primal;
  /// Dual values read off the final tableau (reduced costs of the slacks).
  std::vector<Rational> dual;
  Rational objective = 0;
  /// Basic variables: j < n is x_j, n + i is the slack of row i.
  std::vector<std::size_t> primal_basis;
  /// Rows whose slack is nonbasic, i.e. the support candidates of `dual`.
  std::vector<std::size_t> dual_basis;
  std::size_t pivots = 0;
};

class LPError : public std::runtime_error {
 public:
  explicit LPError(LPStatus s) : std::runtime_error(std::string("linear program is ") + status_name(s)), status(s) {}
  LPStatus status;
};

namespace detail {

/**
 * Dense simplex tableau. Row `m` holds reduced costs c_j - z_j, its last
 * entry the negated objective value. Pivoting uses Bland's rule on the
 * fixed column order, so runs terminate and are reproducible.
 */
class Tableau {
 public:
  Tableau(const LinearProgram& lp, bool with_artificial)
      : m_(lp.a.rows()), n_(lp.a.cols()), cols_(n_ + m_ + (with_artificial ? 1 : 0)),
        t_(m_ + 1, std::vector<Rational>(cols_ + 1, Rational(0))), basis_(m_), allowed_(cols_, true) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = lp.a(i, j);
      t_[i][n_ + i] = 1;
      if (with_artificial) t_[i][artificial()] = -1;
      t_[i][cols_] = lp.b[i];
      basis_[i] = n_ + i;
    }
  }

  std::size_t artificial() const { return n_ + m_; }

  void set_objective(const std::vector<Rational>& costs) {
    auto& z = t_[m_];
    for (std::size_t j = 0; j <= cols_; ++j) z[j] = j < costs.size() ? costs[j] : Rational(0);
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational cb = basis_[i] < costs.size() ? costs[basis_[i]] : Rational(0);
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) z[j] -= cb * t_[i][j];
    }
  }

  void pivot(std::size_t r, std::size_t s) {
    ++pivots_;
    auto& pr = t_[r];
    const Rational inv = 1 / pr[s];
    for (auto& x : pr) x *= inv;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || t_[i][s] == 0) continue;
      const Rational f = t_[i][s];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (pr[j] != 0) t_[i][j] -= f * pr[j];
    }
    basis_[r] = s;
  }

  /// Runs Bland-rule simplex to optimality. Returns false if unbounded.
  bool optimize() {
    for (;;) {
      std::size_t s = cols_;
      for (std::size_t j = 0; j < cols_; ++j)
        if (allowed_[j] && t_[m_][j] > 0) {
          s = j;
          break;
        }
      if (s == cols_) return true;
      std::size_t r = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][s] <= 0) continue;
        Rational ratio = t_[i][cols_] / t_[i][s];
        if (r == m_ || ratio < best || (ratio == best && basis_[i] < basis_[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r == m_) return false;
      pivot(r, s);
    }
  }

  /// Phase one: make the starting basis feasible. Returns false if infeasible.
  bool make_feasible() {
    std::size_t worst = m_;
    for (std::size_t i = 0; i < m_; ++i)
      if (t_[i][cols_] < 0 && (worst == m_ || t_[i][cols_] < t_[worst][cols_])) worst = i;
    if (worst == m_) {
      allowed_[artificial()] = false;
      return true;
    }
    std::vector<Rational> aux(cols_, Rational(0));
    aux[artificial()] = -1;
    set_objective(aux);
    pivot(worst, artificial());
    optimize();
    if (-t_[m_][cols_] < 0) return false;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] != artificial()) continue;
      for (std::size_t j = 0; j < artificial(); ++j)
        if (t_[i][j] != 0) {
          pivot(i, j);
          break;
        }
    }
    allowed_[artificial()] = false;
    for (auto& row : t_) row[artificial()] = 0;
    return true;
  }

  LPSolution extract() const {
    LPSolution sol;
    sol.status = LPStatus::optimal;
    sol.primal.assign(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) sol.primal[basis_[i]] = t_[i][cols_];
      sol.primal_basis.push_back(basis_[i]);
    }
    std::sort(sol.primal_basis.begin(), sol.primal_basis.end());
    sol.dual.assign(m_, Rational(0));
    std::vector<bool> slack_basic(m_, false);
    for (auto v : basis_)
      if (v >= n_ && v < n_ + m_) slack_basic[v - n_] = true;
    for (std::size_t i = 0; i < m_; ++i) {
      sol.dual[i] = -t_[m_][n_ + i];
      if (!slack_basic[i]) sol.dual_basis.push_back(i);
    }
    sol.objective = -t_[m_][cols_];
    sol.pivots = pivots_;
    return sol;
  }

  std::size_t pivots() const { return pivots_; }

 private:
  std::size_t m_, n_, cols_;
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> allowed_;
  std::size_t pivots_ = 0;
};

}  // namespace detail

/**
 * Exact simplex. Phase one is skipped when b >= 0; otherwise a single
 * artificial variable is driven out first. On optimality both `primal` and
 * `dual` are basic solutions and c.x == b.y holds exactly.
 */
inline LPSolution solve(const LinearProgram& lp) {
  lp.validate();
  bool needs_phase_one = false;
  for (const auto& bi : lp.b) needs_phase_one = needs_phase_one || bi < 0;
  detail::Tableau t(lp, needs_phase_one);
  if (!t.make_feasible()) {
    LPSolution s;
    s.status = LPStatus::infeasible;
    s.pivots = t.pivots();
    return s;
  }
  t.set_objective(lp.c);
  if (!t.optimize()) {
    LPSolution s;
    s.status = LPStatus::unbounded;
    s.pivots = t.pivots();
    return s;
  }
  return t.extract();
}

/// The explicit dual, minimize b.y s.t. A^T y >= c, y >= 0, written as
/// maximize (-b).y s.t. (-A^T) y <= -c, y >= 0.
inline LinearProgram dual_program(const LinearProgram& lp) {
  LinearProgram d;
  d.a = lp.a.transpose().scaled(Rational(-1));
  for (const auto& ci : lp.c) d.b.push_back(-ci);
  for (const auto& bi : lp.b) d.c.push_back(-bi);
  return d;
}

/**
 * A basic optimal solution of the dual polyhedron {y >= 0 : A^T y >= c},
 * found by solving the dual program on its own rather than reading it off
 * the primal tableau. `primal` must be the solution of lp.
 */
inline std::vector<Rational> solve_dual_basic(const LinearProgram& lp, const LPSolution& primal) {
  if (primal.status != LPStatus::optimal) throw LPError(primal.status);
  const LPSolution d = solve(dual_program(lp));
  if (d.status != LPStatus::optimal) throw LPError(d.status);
  if (-d.objective != primal.objective) throw std::logic_error("strong duality violated");
  return d.primal;
}

inline std::vector<Rational> solve_dual_basic(const LinearProgram& lp) { return solve_dual_basic(lp, solve(lp)); }

/**
 * Exact certificate check: primal and dual feasibility, equal objectives and
 * complementary slackness. Returns an empty string when everything holds,
 * else a description of the first failure.
 */
inline std::string check_optimal_pair(const LinearProgram& lp, const std::vector<Rational>& x,
                                      const std::vector<Rational>& y) {
  if (x.size() != lp.c.size() || y.size() != lp.b.size()) return "dimension mismatch";
  const auto ax = lp.a.multiply(x);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < 0) return "x negative";
  for (std::size_t i = 0; i < ax.size(); ++i)
    if (ax[i] > lp.b[i]) return "Ax <= b violated at row " + std::to_string(i);
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i] < 0) return "y negative";
  const auto aty = lp.a.transpose().multiply(y);
  for (std::size_t j = 0; j < aty.size(); ++j)
    if (aty[j] < lp.c[j]) return "A^T y >= c violated at column " + std::to_string(j);
  if (dot(lp.c, x) != dot(lp.b, y)) return "objectives differ";
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] > 0 && aty[j] != lp.c[j]) return "complementary slackness (x) violated";
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i] > 0 && ax[i] != lp.b[i]) return "complementary slackness (y) violated";
  return {};
}

}  // namespace cycdual
