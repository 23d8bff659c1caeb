#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cycdual/cycles.hpp"
#include "cycdual/errors.hpp"
#include "cycdual/graph.hpp"
#include "cycdual/random.hpp"
#include "support/brute.hpp"

using namespace cycdual;
using cycdual::testing::count_cycles_by_edge_subsets;

namespace {

DirectedGraph directed_cycle(std::size_t k) {
  DirectedGraph d;
  for (std::size_t i = 0; i < k; ++i) d.add_vertex();
  for (std::size_t i = 0; i < k; ++i) d.add_edge(i, (i + 1) % k);
  return d;
}

std::set<std::size_t> edge_set(const SignedCycle& c) { return {c.edges.begin(), c.edges.end()}; }

}  // namespace

TEST(Graph, RejectsLoopsAndDuplicateNames) {
  DirectedGraph d;
  d.add_vertex("a");
  d.add_vertex("b");
  EXPECT_THROW(d.add_vertex("a"), GraphError);
  EXPECT_THROW(d.add_edge(0, 0), GraphError);
  d.add_edge(0, 1, "e");
  EXPECT_THROW(d.add_edge(1, 0, "e"), GraphError);
  d.add_edge(1, 0);  // digon is fine
  d.add_edge(0, 1);  // so are parallel edges
  EXPECT_EQ(d.num_edges(), 3u);
}

TEST(Incidence, DirectedColumns) {
  DirectedGraph d;
  d.add_vertex("u");
  d.add_vertex("v");
  d.add_edge("u", "v");
  const auto n = incidence_matrix_directed(d);
  EXPECT_EQ(n(0, 0), -1);
  EXPECT_EQ(n(1, 0), 1);
  const auto c3 = incidence_matrix_directed(directed_cycle(3));
  for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(c3(r, 0) + c3(r, 1) + c3(r, 2), 0);
}

TEST(Incidence, BidirectedImageOfDirectedMatches) {
  std::mt19937_64 rng(1);
  for (int it = 0; it < 50; ++it) {
    const auto d = random_directed({1 + uniform_below(rng, 6), 0, true}, rng);
    auto dd = d;
    const std::size_t n = dd.num_vertices();
    if (n >= 2)
      for (std::size_t e = uniform_below(rng, 9); e > 0; --e) {
        std::size_t u = uniform_below(rng, n), v = uniform_below(rng, n - 1);
        dd.add_edge(u, v >= u ? v + 1 : v);
      }
    EXPECT_EQ(incidence_matrix_bidirected(directed_to_bidirected(dd)), incidence_matrix_directed(dd));
  }
}

TEST(Incidence, AlternatingParallelPair) {
  BidirectedGraph b;
  b.add_vertex("u");
  b.add_vertex("v");
  b.add_edge(0, 1, Sign::plus, Sign::minus);
  b.add_edge(0, 1, Sign::minus, Sign::plus);
  const auto m = incidence_matrix_bidirected(b);
  EXPECT_EQ(m(0, 0), 1);
  EXPECT_EQ(m(1, 0), -1);
  EXPECT_EQ(m(0, 1), -1);
  EXPECT_EQ(m(1, 1), 1);
  EXPECT_EQ(enumerate_cycles(b).size(), 1u);
}

TEST(Cycles, CompleteGraphK4HasSeven) {
  UndirectedGraph k4;
  for (int i = 0; i < 4; ++i) k4.add_vertex();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) k4.add_edge(i, j);
  const auto cycles = enumerate_cycles(k4);
  EXPECT_EQ(cycles.size(), 7u);
  std::size_t triangles = 0;
  for (const auto& c : cycles) triangles += c.length() == 3;
  EXPECT_EQ(triangles, 4u);
}

TEST(Cycles, DirectedTriangleAndDigon) {
  EXPECT_EQ(enumerate_cycles(directed_cycle(3)).size(), 1u);
  EXPECT_EQ(enumerate_cycles(directed_to_bidirected(directed_cycle(3))).size(), 1u);
  EXPECT_EQ(enumerate_cycles(directed_to_bidirected(directed_cycle(2))).size(), 1u);
}

TEST(Cycles, DagHasNone) {
  DirectedGraph d;
  for (int i = 0; i < 5; ++i) d.add_vertex();
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) d.add_edge(i, j);
  EXPECT_TRUE(enumerate_cycles(d).empty());
  EXPECT_TRUE(enumerate_cycles(directed_to_bidirected(d)).empty());
}

TEST(Cycles, CountsMatchEdgeSubsetOracle) {
  std::mt19937_64 rng(2);
  for (int it = 0; it < 150; ++it) {
    const GeneratorParams p{2 + uniform_below(rng, 5), uniform_below(rng, 11), true};
    const auto d = random_directed(p, rng);
    const auto u = random_undirected(p, rng);
    const auto b = random_bidirected(p, rng);
    const auto cd = enumerate_cycles(d), cu = enumerate_cycles(u), cb = enumerate_cycles(b);
    // A directed or signed cycle is determined by its edge set; so is an undirected one.
    EXPECT_EQ(cd.size(), count_cycles_by_edge_subsets(d));
    EXPECT_EQ(cu.size(), count_cycles_by_edge_subsets(u));
    EXPECT_EQ(cb.size(), count_cycles_by_edge_subsets(b));
    for (const auto& c : cd) EXPECT_TRUE(is_cycle(d, c));
    for (const auto& c : cu) EXPECT_TRUE(is_cycle(u, c));
    for (const auto& c : cb) EXPECT_TRUE(is_cycle(b, c));
    // Canonical bijection with the bidirected image.
    const auto img = enumerate_cycles(directed_to_bidirected(d));
    ASSERT_EQ(img.size(), cd.size());
    std::set<std::set<std::size_t>> a, bb;
    for (const auto& c : cd) a.insert(edge_set(c));
    for (const auto& c : img) bb.insert(edge_set(c));
    EXPECT_EQ(a, bb);
  }
}

TEST(Cycles, BudgetIsEnforced) {
  UndirectedGraph k5;
  for (int i = 0; i < 5; ++i) k5.add_vertex();
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) k5.add_edge(i, j);
  EXPECT_THROW(enumerate_cycles(k5, {5, 100}), BudgetExceeded);
  EXPECT_EQ(enumerate_cycles(k5).size(), 37u);
}

TEST(VertexSplit, CountsAndTwoCycleImage) {
  BidirectedGraph b;
  b.add_vertex("u");
  b.add_vertex("v");
  b.add_edge(0, 1, Sign::plus, Sign::minus);
  b.add_edge(0, 1, Sign::minus, Sign::plus);
  const auto s = vertex_split(b);
  EXPECT_EQ(s.graph.num_vertices(), 4u);
  EXPECT_EQ(s.graph.num_edges(), 4u);
  const auto cycles = enumerate_cycles(s.graph);
  ASSERT_EQ(cycles.size(), 1u);
  EXPECT_EQ(cycles[0].length(), 4u);
  for (std::size_t v = 0; v < 2; ++v) EXPECT_TRUE(edge_set(cycles[0]).count(s.split_edge[v]));
  // Split edge signs: minus at v+, plus at v-.
  const auto e = s.split_edge[0];
  EXPECT_EQ(s.graph.sign(s.plus_copy(0), e), Sign::minus);
  EXPECT_EQ(s.graph.sign(s.minus_copy(0), e), Sign::plus);
}

TEST(VertexSplit, CycleBijectionAndDisjointness) {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 100; ++it) {
    const auto b = random_bidirected({2 + uniform_below(rng, 5), uniform_below(rng, 10), true}, rng);
    const auto s = vertex_split(b);
    ASSERT_EQ(s.graph.num_vertices(), 2 * b.num_vertices());
    ASSERT_EQ(s.graph.num_edges(), b.num_edges() + b.num_vertices());
    const auto cb = enumerate_cycles(b);
    const auto cs = enumerate_cycles(s.graph);
    ASSERT_EQ(cb.size(), cs.size());
    // Pull back: dropping split edges gives the original edge set; that set is a cycle of B.
    std::set<std::set<std::size_t>> pulled, orig;
    for (const auto& c : cb) orig.insert(edge_set(c));
    for (const auto& c : cs) {
      std::set<std::size_t> es;
      for (auto e : c.edges)
        if (!s.is_split_edge(e))
          es.insert(static_cast<std::size_t>(std::find(s.edge_map.begin(), s.edge_map.end(), e) - s.edge_map.begin()));
      pulled.insert(es);
    }
    EXPECT_EQ(pulled, orig);
    // Edge-disjoint cycles of B' are vertex-disjoint.
    const auto fam = make_family(s.graph.num_vertices(), s.graph.num_edges(), cs);
    for (std::size_t i = 0; i < fam.size(); ++i)
      for (std::size_t j = i + 1; j < fam.size(); ++j)
        if (!fam.edge_sets[i].intersects(fam.edge_sets[j])) EXPECT_FALSE(fam.vertex_sets[i].intersects(fam.vertex_sets[j]));
  }
}

TEST(Subdivide, EmptyAndTriangle) {
  const auto d = directed_cycle(3);
  const auto none = subdivide_edges(d, {});
  EXPECT_EQ(static_cast<const GraphBase&>(none.graph), static_cast<const GraphBase&>(d));
  EXPECT_TRUE(none.subdivision_vertices.empty());
  const auto one = subdivide_edges(d, {1});
  ASSERT_EQ(one.subdivision_vertices.size(), 1u);
  const auto cycles = enumerate_cycles(one.graph);
  ASSERT_EQ(cycles.size(), 1u);
  EXPECT_EQ(cycles[0].length(), 4u);
}

TEST(Subdivide, BidirectedTwoCycleBothEdges) {
  BidirectedGraph b;
  b.add_vertex();
  b.add_vertex();
  b.add_edge(0, 1, Sign::plus, Sign::minus);
  b.add_edge(0, 1, Sign::minus, Sign::plus);
  const auto s = subdivide_edges(b, {0, 1});
  const auto cycles = enumerate_cycles(s.graph);
  ASSERT_EQ(cycles.size(), 1u);
  EXPECT_EQ(cycles[0].length(), 4u);
}

TEST(Subdivide, PreservesCyclesThroughMappedEdges) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 80; ++it) {
    const auto b = random_bidirected({2 + uniform_below(rng, 4), uniform_below(rng, 9), true}, rng);
    std::vector<std::size_t> f;
    for (std::size_t e = 0; e < b.num_edges(); ++e)
      if (uniform_below(rng, 2)) f.push_back(e);
    const auto s = subdivide_edges(b, f);
    const auto before = enumerate_cycles(b), after = enumerate_cycles(s.graph);
    ASSERT_EQ(before.size(), after.size());
    std::set<std::set<std::size_t>> x, y;
    for (const auto& c : before) x.insert(edge_set(c));
    for (const auto& c : after) {
      std::set<std::size_t> es;
      for (auto e : c.edges) es.insert(s.edge_origin[e]);
      y.insert(es);
    }
    EXPECT_EQ(x, y);
  }
}

TEST(Peel, DirectedUnionOfCyclesPeelsCompletely) {
  std::mt19937_64 rng(6);
  for (int it = 0; it < 100; ++it) {
    const auto d = random_directed({2 + uniform_below(rng, 5), uniform_below(rng, 10), true}, rng);
    const auto fam = cycle_family(d);
    Bits used(d.num_edges());
    for (std::size_t i = 0; i < fam.size(); ++i)
      if (!fam.edge_sets[i].intersects(used) && uniform_below(rng, 2)) used |= fam.edge_sets[i];
    const auto peeled = peel_cycles(d, used);
    ASSERT_TRUE(peeled);
    Bits back(d.num_edges());
    for (const auto& c : *peeled) {
      EXPECT_TRUE(is_cycle(d, c));
      EXPECT_FALSE(back.intersects(to_bits(c.edges, d.num_edges())));
      back |= to_bits(c.edges, d.num_edges());
    }
    EXPECT_EQ(back, used);
  }
}
