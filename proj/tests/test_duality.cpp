#include <gtest/gtest.h>

#include <random>

#include "cycdual/duality.hpp"
#include "cycdual/random.hpp"

using namespace cycdual;

namespace {

const DualityOptions kExhaustive{{}, VerifyLevel::exhaustive};

DirectedGraph directed_cycle(std::size_t k) {
  DirectedGraph d;
  for (std::size_t i = 0; i < k; ++i) d.add_vertex();
  for (std::size_t i = 0; i < k; ++i) d.add_edge(i, (i + 1) % k);
  return d;
}

std::vector<std::size_t> all_of(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

std::vector<std::size_t> random_subset(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < n; ++i)
    if (uniform_below(rng, 2)) v.push_back(i);
  return v;
}

// The contract every engine run must meet.
void expect_sound(const DualityReport& r) {
  EXPECT_TRUE(r.inequality_verified);
  EXPECT_EQ(r.hitting.status, Verification::verified);
  ASSERT_TRUE(r.oracle_max_packing);
  ASSERT_TRUE(r.oracle_min_hitting);
  EXPECT_EQ(r.packing.score, *r.oracle_max_packing);
  EXPECT_LE(*r.oracle_min_hitting, r.hitting.elements.size());
  EXPECT_LE(r.hitting.elements.size(), r.packing.score);
  if (r.lp) {
    // The LP value bounds every integral packing; it is attained when x is integral.
    EXPECT_GE(r.lp->objective, long(r.packing.score));
    EXPECT_EQ(r.lp->packing_from_lp, r.lp->primal_integral);
    if (r.lp->packing_from_lp) EXPECT_EQ(r.lp->objective, long(r.packing.score));
    if (r.lp->hitting_from_lp) EXPECT_TRUE(r.lp->dual_integral || r.lp->tableau_dual_integral);
    ASSERT_TRUE(r.dual_cycle_inequalities);
    EXPECT_TRUE(*r.dual_cycle_inequalities);
  }
}

}  // namespace

TEST(UndirectedEdge, EmptyTarget) {
  UndirectedGraph g;
  g.add_vertex(), g.add_vertex(), g.add_vertex();
  g.add_edge(0, 1), g.add_edge(1, 2), g.add_edge(2, 0);
  const auto r = undirected_edge_duality(g, {});
  EXPECT_EQ(r.packing.score, 0u);
  EXPECT_TRUE(r.hitting.elements.empty());
  EXPECT_TRUE(r.inequality_verified);
}

TEST(UndirectedEdge, FourCycleTwoEdges) {
  UndirectedGraph g;
  for (int i = 0; i < 4; ++i) g.add_vertex();
  for (std::size_t i = 0; i < 4; ++i) g.add_edge(i, (i + 1) % 4);
  const auto r = undirected_edge_duality(g, {0, 2}, kExhaustive);
  EXPECT_EQ(r.packing.score, 2u);
  EXPECT_EQ(r.packing.cycles.size(), 1u);
  EXPECT_EQ(r.hitting.elements.size(), 1u);
  EXPECT_EQ(*r.gf2_rank, 1u);
}

TEST(UndirectedEdge, BowtieOneEdgeEach) {
  UndirectedGraph g;
  for (int i = 0; i < 5; ++i) g.add_vertex();
  g.add_edge(0, 1), g.add_edge(1, 2), g.add_edge(2, 0), g.add_edge(0, 3), g.add_edge(3, 4), g.add_edge(4, 0);
  const auto r = undirected_edge_duality(g, {0, 3}, kExhaustive);
  EXPECT_EQ(r.packing.score, 2u);
  EXPECT_EQ(r.hitting.elements.size(), 2u);
}

TEST(UndirectedEdge, RandomMultigraphs) {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 150; ++it) {
    const auto g = random_undirected({2 + uniform_below(rng, 4), uniform_below(rng, 9), true}, rng);
    const auto r = undirected_edge_duality(g, random_subset(g.num_edges(), rng), kExhaustive);
    EXPECT_TRUE(detail::pairwise_disjoint(g, r.packing.cycles, ElementKind::edge));
    for (const auto& c : r.packing.cycles) EXPECT_TRUE(is_cycle(g, c));
    EXPECT_GE(r.packing.score, *r.gf2_rank);
    EXPECT_GE(*r.gf2_rank, *r.oracle_min_hitting);
    EXPECT_TRUE(r.inequality_verified);
  }
}

TEST(DirectedEdge, TriangleAllEdges) {
  const auto r = directed_edge_duality(directed_cycle(3), {0, 1, 2}, kExhaustive);
  EXPECT_EQ(r.packing.score, 3u);
  EXPECT_LE(r.hitting.elements.size(), 3u);
  EXPECT_EQ(*r.oracle_min_hitting, 1u);
  expect_sound(r);
  EXPECT_TRUE(all_integral(r.lp->primal) && all_integral(r.lp->dual) && all_integral(r.lp->tableau_dual));
}

TEST(DirectedEdge, Acyclic) {
  DirectedGraph d;
  for (int i = 0; i < 4; ++i) d.add_vertex();
  d.add_edge(0, 1), d.add_edge(1, 2), d.add_edge(0, 3);
  const auto r = directed_edge_duality(d, {0, 1, 2}, kExhaustive);
  EXPECT_EQ(r.packing.score, 0u);
  EXPECT_TRUE(r.hitting.elements.empty());
}

TEST(DirectedEdge, TwoDigonsSharingVertex) {
  DirectedGraph d;
  for (int i = 0; i < 3; ++i) d.add_vertex();
  d.add_edge(0, 1), d.add_edge(1, 0), d.add_edge(0, 2), d.add_edge(2, 0);
  const auto r = directed_edge_duality(d, {0, 2}, kExhaustive);
  EXPECT_EQ(r.packing.score, 2u);
  EXPECT_EQ(*r.oracle_min_hitting, 2u);
  expect_sound(r);
}

TEST(DirectedEdge, RandomDigraphs) {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 200; ++it) {
    const auto d = random_directed({2 + uniform_below(rng, 5), uniform_below(rng, 11), true}, rng);
    const auto r = directed_edge_duality(d, random_subset(d.num_edges(), rng), kExhaustive);
    expect_sound(r);
    EXPECT_TRUE(r.lp->packing_from_lp && r.lp->hitting_from_lp);
  }
}

TEST(BidirectedVertex, EmptyTarget) {
  BidirectedGraph b;
  b.add_vertex(), b.add_vertex();
  b.add_edge(0, 1, Sign::plus, Sign::minus);
  b.add_edge(0, 1, Sign::minus, Sign::plus);
  const auto r = bidirected_vertex_duality(b, {}, kExhaustive);
  EXPECT_EQ(r.packing.score, 0u);
  EXPECT_TRUE(r.hitting.elements.empty());
}

TEST(BidirectedVertex, TwoCycleOneVertex) {
  BidirectedGraph b;
  b.add_vertex("u"), b.add_vertex("v");
  b.add_edge(0, 1, Sign::plus, Sign::minus);
  b.add_edge(0, 1, Sign::minus, Sign::plus);
  const auto r = bidirected_vertex_duality(b, {0}, kExhaustive);
  EXPECT_EQ(r.packing.score, 1u);
  EXPECT_EQ(r.hitting.elements.size(), 1u);
  expect_sound(r);
}

TEST(BidirectedVertex, TwoDisjointTrianglesAllVertices) {
  DirectedGraph d;
  for (int i = 0; i < 6; ++i) d.add_vertex();
  d.add_edge(0, 1), d.add_edge(1, 2), d.add_edge(2, 0), d.add_edge(3, 4), d.add_edge(4, 5), d.add_edge(5, 3);
  const auto r = bidirected_vertex_duality(directed_to_bidirected(d), all_of(6), kExhaustive);
  EXPECT_EQ(r.packing.score, 6u);
  EXPECT_EQ(*r.oracle_min_hitting, 2u);
  expect_sound(r);
}

TEST(BidirectedVertex, RandomSignedGraphs) {
  std::mt19937_64 rng(43);
  int fractional = 0;
  for (int it = 0; it < 300; ++it) {
    const auto b = random_bidirected({2 + uniform_below(rng, 4), uniform_below(rng, 9), true}, rng);
    const auto r = bidirected_vertex_duality(b, random_subset(b.num_vertices(), rng), kExhaustive);
    expect_sound(r);
    for (const auto& c : r.packing.cycles) EXPECT_TRUE(is_cycle(b, c));
    fractional += !r.lp->primal_integral || !r.lp->dual_integral;
  }
  // The split LP for signed graphs does have fractional vertices; the engine must survive them.
  EXPECT_GT(fractional, 0);
}

TEST(BidirectedVertex, FractionalPrimalAboveEveryPacking) {
  // A half-integral circulation of B' can use split edges of S while no cycle of B meets S.
  std::mt19937_64 rng(45);
  bool seen = false;
  for (int it = 0; it < 3000 && !seen; ++it) {
    const auto b = random_bidirected({2 + uniform_below(rng, 4), uniform_below(rng, 9), true}, rng);
    const auto r = bidirected_vertex_duality(b, random_subset(b.num_vertices(), rng), kExhaustive);
    if (r.lp->primal_integral || r.packing.score != 0 || r.lp->objective == 0) continue;
    seen = true;
    EXPECT_FALSE(r.lp->packing_from_lp);
    EXPECT_FALSE(r.lp->hitting_from_lp);
    EXPECT_TRUE(r.hitting.elements.empty());
    expect_sound(r);
  }
  EXPECT_TRUE(seen);
}

TEST(DirectedVertex, SpecExamples) {
  auto r = directed_vertex_duality(directed_cycle(3), {1}, kExhaustive);
  EXPECT_EQ(r.packing.score, 1u);
  EXPECT_EQ(r.hitting.elements.size(), 1u);
  expect_sound(r);
  DirectedGraph dag;
  for (int i = 0; i < 3; ++i) dag.add_vertex();
  dag.add_edge(0, 1), dag.add_edge(0, 2);
  r = directed_vertex_duality(dag, all_of(3), kExhaustive);
  EXPECT_EQ(r.packing.score, 0u);
  EXPECT_TRUE(r.hitting.elements.empty());
  for (std::size_t k = 1; k <= 3; ++k) {
    DirectedGraph d;
    for (std::size_t i = 0; i < 2 * k; ++i) d.add_vertex();
    for (std::size_t i = 0; i < k; ++i) d.add_edge(2 * i, 2 * i + 1), d.add_edge(2 * i + 1, 2 * i);
    r = directed_vertex_duality(d, all_of(2 * k), kExhaustive);
    EXPECT_EQ(r.packing.score, 2 * k);
    EXPECT_EQ(*r.oracle_min_hitting, k);
    expect_sound(r);
  }
}

TEST(DirectedVertex, RandomDigraphs) {
  std::mt19937_64 rng(44);
  for (int it = 0; it < 200; ++it) {
    const auto d = random_directed({2 + uniform_below(rng, 5), uniform_below(rng, 11), true}, rng);
    const auto r = directed_vertex_duality(d, random_subset(d.num_vertices(), rng), kExhaustive);
    expect_sound(r);
    EXPECT_TRUE(r.lp->primal_integral);
    for (const auto& c : r.packing.cycles) EXPECT_TRUE(is_cycle(d, c));
  }
}

TEST(Verification, BudgetDowngradesToUnverified) {
  DirectedGraph d;
  for (int i = 0; i < 4; ++i) d.add_vertex();
  for (std::size_t u = 0; u < 4; ++u)
    for (std::size_t v = 0; v < 4; ++v)
      if (u != v) d.add_edge(u, v);
  const auto r = directed_edge_duality(d, all_of(d.num_edges()), {{3, 1000}, VerifyLevel::oracle});
  EXPECT_EQ(r.hitting.status, Verification::unverified);
  EXPECT_TRUE(r.inequality_verified);
  const auto off = directed_edge_duality(d, all_of(d.num_edges()), {{}, VerifyLevel::off});
  EXPECT_EQ(off.hitting.status, Verification::skipped);
  EXPECT_EQ(off.packing.score, r.packing.score);
  EXPECT_THROW(undirected_edge_duality(UndirectedGraph{}, {0}), GraphError);
}

TEST(LogOnly, UndirectedVertexIsConjectural) {
  UndirectedGraph g;
  for (int i = 0; i < 3; ++i) g.add_vertex();
  g.add_edge(0, 1), g.add_edge(1, 2), g.add_edge(2, 0);
  const auto r = oracle_comparison(g, ElementKind::vertex, {0, 1, 2});
  EXPECT_TRUE(r.conjectural);
  EXPECT_TRUE(r.log_only);
  EXPECT_EQ(r.packing.score, 3u);
  EXPECT_EQ(r.hitting.elements.size(), 1u);
}
