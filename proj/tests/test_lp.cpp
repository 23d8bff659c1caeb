#include <gtest/gtest.h>

#include <random>

#include "cycdual/graph.hpp"
#include "cycdual/lp.hpp"
#include "cycdual/random.hpp"
#include "support/brute.hpp"

using namespace cycdual;

namespace {

// max f.x s.t. x <= 1, Nx <= 0, x >= 0, built by hand from the incidence matrix.
LinearProgram edge_packing_lp(const DirectedGraph& d, const std::vector<int>& f) {
  const auto n = incidence_matrix_directed(d);
  const std::size_t m = d.num_edges(), nv = d.num_vertices();
  LinearProgram lp{RationalMatrix(m + nv, m), {}, {}};
  for (std::size_t e = 0; e < m; ++e) lp.a(e, e) = 1;
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t e = 0; e < m; ++e) lp.a(m + v, e) = n(v, e);
  lp.b.assign(m, Rational(1));
  lp.b.resize(m + nv, Rational(0));
  for (int x : f) lp.c.emplace_back(x);
  return lp;
}

LinearProgram random_lp(std::mt19937_64& rng, bool allow_negative_b) {
  const std::size_t rows = 1 + uniform_below(rng, 5), cols = 1 + uniform_below(rng, 5);
  LinearProgram lp{RationalMatrix(rows, cols), {}, {}};
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) lp.a(i, j) = make_rational(long(uniform_below(rng, 9)) - 3, 1 + long(uniform_below(rng, 2)));
  for (std::size_t i = 0; i < rows; ++i)
    lp.b.push_back(make_rational(long(uniform_below(rng, 7)) - (allow_negative_b ? 2 : 0), 1));
  for (std::size_t j = 0; j < cols; ++j) lp.c.push_back(make_rational(long(uniform_below(rng, 7)) - 3, 1));
  return lp;
}

}  // namespace

TEST(Simplex, TrivialBound) {
  LinearProgram lp{RationalMatrix(1, 1), {Rational(1)}, {Rational(1)}};
  lp.a(0, 0) = 1;
  const auto s = solve(lp);
  ASSERT_EQ(s.status, LPStatus::optimal);
  EXPECT_EQ(s.objective, 1);
  EXPECT_EQ(s.dual, std::vector<Rational>{Rational(1)});
  EXPECT_EQ(solve_dual_basic(lp), std::vector<Rational>{Rational(1)});
}

TEST(Simplex, InfeasibleAndUnbounded) {
  LinearProgram inf{RationalMatrix(1, 1), {Rational(-1)}, {Rational(1)}};
  inf.a(0, 0) = 1;
  EXPECT_EQ(solve(inf).status, LPStatus::infeasible);
  EXPECT_THROW(solve_dual_basic(inf), LPError);
  LinearProgram unb{RationalMatrix(1, 1), {Rational(1)}, {Rational(1)}};
  unb.a(0, 0) = -1;
  EXPECT_EQ(solve(unb).status, LPStatus::unbounded);
  LinearProgram bad{RationalMatrix(2, 1), {Rational(1)}, {Rational(1)}};
  EXPECT_THROW(solve(bad), std::invalid_argument);
}

TEST(Simplex, PhaseOneFindsFeasibleStart) {
  // x1 + x2 <= 4, -x1 <= -1 (x1 >= 1), maximize x2 - x1.
  LinearProgram lp{RationalMatrix(2, 2), {Rational(4), Rational(-1)}, {Rational(-1), Rational(1)}};
  lp.a(0, 0) = 1, lp.a(0, 1) = 1, lp.a(1, 0) = -1;
  const auto s = solve(lp);
  ASSERT_EQ(s.status, LPStatus::optimal);
  EXPECT_EQ(s.objective, 2);
  EXPECT_EQ(check_optimal_pair(lp, s.primal, s.dual), "");
}

TEST(Simplex, DirectedTriangleAllEdges) {
  DirectedGraph d;
  for (int i = 0; i < 3; ++i) d.add_vertex();
  for (std::size_t i = 0; i < 3; ++i) d.add_edge(i, (i + 1) % 3);
  const auto lp = edge_packing_lp(d, {1, 1, 1});
  const auto s = solve(lp);
  ASSERT_EQ(s.status, LPStatus::optimal);
  EXPECT_EQ(s.objective, 3);
  EXPECT_EQ(s.primal, (std::vector<Rational>{1, 1, 1}));
  const auto y = solve_dual_basic(lp, s);
  EXPECT_TRUE(all_integral(y));
  Rational y1 = 0;
  for (std::size_t e = 0; e < 3; ++e) y1 += y[e];
  EXPECT_EQ(y1, 3);
}

TEST(Simplex, SharedVertexTrianglesMatchBruteForce) {
  // Triangles 0->1->2->0 and 0->3->4->0 share vertex 0; F = the two edges into 0.
  DirectedGraph d;
  for (int i = 0; i < 5; ++i) d.add_vertex();
  d.add_edge(0, 1), d.add_edge(1, 2), d.add_edge(2, 0), d.add_edge(0, 3), d.add_edge(3, 4), d.add_edge(4, 0);
  const std::vector<int> f{0, 0, 1, 0, 0, 1};
  const auto s = solve(edge_packing_lp(d, f));
  ASSERT_EQ(s.status, LPStatus::optimal);
  EXPECT_EQ(s.objective, long(cycdual::testing::max_nullspace_weight(incidence_matrix_directed(d), f)));
  EXPECT_EQ(s.objective, 2);
}

TEST(Simplex, RandomCertificatesAreExact) {
  std::mt19937_64 rng(21);
  int optimal = 0;
  for (int it = 0; it < 400; ++it) {
    const auto lp = random_lp(rng, it % 2 == 1);
    const auto s = solve(lp);
    if (s.status != LPStatus::optimal) continue;
    ++optimal;
    EXPECT_EQ(check_optimal_pair(lp, s.primal, s.dual), "");
    const auto y = solve_dual_basic(lp, s);
    EXPECT_EQ(check_optimal_pair(lp, s.primal, y), "");
    // Same input, same bases.
    const auto again = solve(lp);
    EXPECT_EQ(again.primal_basis, s.primal_basis);
    EXPECT_EQ(again.primal, s.primal);
  }
  EXPECT_GT(optimal, 100);
}

TEST(Simplex, StatusAgreesWithDual) {
  // Primal unbounded implies dual infeasible; primal infeasible with dual feasible implies dual unbounded.
  std::mt19937_64 rng(22);
  for (int it = 0; it < 300; ++it) {
    const auto lp = random_lp(rng, true);
    const auto p = solve(lp), d = solve(dual_program(lp));
    if (p.status == LPStatus::unbounded) EXPECT_EQ(d.status, LPStatus::infeasible);
    if (p.status == LPStatus::optimal) {
      ASSERT_EQ(d.status, LPStatus::optimal);
      EXPECT_EQ(-d.objective, p.objective);
    }
  }
}

TEST(Simplex, TotallyUnimodularInstancesAreIntegral) {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 200; ++it) {
    const auto d = random_directed({2 + uniform_below(rng, 4), uniform_below(rng, 9), true}, rng);
    std::vector<int> f;
    for (std::size_t e = 0; e < d.num_edges(); ++e) f.push_back(int(uniform_below(rng, 2)));
    const auto lp = edge_packing_lp(d, f);
    const auto s = solve(lp);
    ASSERT_EQ(s.status, LPStatus::optimal);
    EXPECT_TRUE(all_integral(s.primal));
    EXPECT_TRUE(all_integral(s.dual));
    const auto y = solve_dual_basic(lp, s);
    EXPECT_TRUE(all_integral(y));
    EXPECT_EQ(s.objective, long(cycdual::testing::max_nullspace_weight(incidence_matrix_directed(d), f)));
  }
}
