#include <gtest/gtest.h>

#include <random>

#include "cycdual/io.hpp"
#include "cycdual/random.hpp"

using namespace cycdual;

namespace {

template <typename G>
void expect_round_trip(const G& g) {
  const auto text = dump(graph_to_json(g));
  const auto back = parse_graph(text);
  ASSERT_TRUE(std::holds_alternative<G>(back));
  EXPECT_EQ(std::get<G>(back), g);
  EXPECT_EQ(dump(graph_to_json(back)), text);
}

}  // namespace

TEST(Io, RoundTripRandomGraphs) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + uniform_below(rng, 6);
    const std::size_t m = n < 2 ? 0 : uniform_below(rng, 9);
    const GeneratorParams p{n, m, true};
    expect_round_trip(random_directed(p, rng));
    expect_round_trip(random_undirected(p, rng));
    expect_round_trip(random_bidirected(p, rng));
  }
}

TEST(Io, RoundTripEmptyAndNamed) {
  expect_round_trip(DirectedGraph{});
  BidirectedGraph b;
  b.add_vertex("u"), b.add_vertex("v");
  b.add_edge(0, 1, Sign::plus, Sign::minus, "f");
  b.add_edge(0, 1, Sign::minus, Sign::plus, "g");
  expect_round_trip(b);
}

TEST(Io, ParsesDocumentedFormat) {
  const auto g = parse_graph(R"({"kind":"bidirected","vertices":["u","v"],
    "edges":[{"id":"f","ends":["u","v"],"signs":["+","-"]}]})");
  const auto& b = std::get<BidirectedGraph>(g);
  EXPECT_EQ(b.num_vertices(), 2u);
  EXPECT_EQ(b.sign(0, 0), Sign::plus);
  EXPECT_EQ(b.sign(1, 0), Sign::minus);
}

TEST(Io, MalformedInputsAreParseErrors) {
  const char* bad[] = {
      "not json",
      "[]",
      R"({"vertices":[],"edges":[]})",
      R"({"kind":"mixed","vertices":[],"edges":[]})",
      R"({"kind":"directed","vertices":["a"],"edges":[{"id":"e","ends":["a","b"]}]})",
      R"({"kind":"directed","vertices":["a","a"],"edges":[]})",
      R"({"kind":"directed","vertices":["a"],"edges":[{"id":"e","ends":["a","a"]}]})",
      R"({"kind":"directed","vertices":["a","b"],"edges":[{"id":"e","ends":["a","b"],"signs":["+","-"]}]})",
      R"({"kind":"bidirected","vertices":["a","b"],"edges":[{"id":"e","ends":["a","b"],"signs":["+","*"]}]})",
      R"({"kind":"bidirected","vertices":["a","b"],"edges":[{"id":"e","ends":["a","b"]}]})",
      R"({"kind":"directed","vertices":[1],"edges":[]})",
      R"({"kind":"directed","vertices":["a","b"],"edges":[{"id":"e","ends":["a"]}]})",
  };
  for (const char* text : bad) EXPECT_THROW(parse_graph(text), ParseError) << text;
}

TEST(Io, RationalStrings) {
  EXPECT_EQ(rational_string(Rational(3, 2)), "3/2");
  EXPECT_EQ(rational_string(Rational(-4, 2)), "-2");
}
