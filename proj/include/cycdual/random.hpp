#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cycdual/graph.hpp"

namespace cycdual {

/// Uniform draw from [0, bound) by rejection. Unlike the standard
/// distributions its output is the same on every standard library.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

struct GeneratorParams {
  std::size_t n = 0;
  std::size_t m = 0;
  bool allow_parallel = true;
};

namespace detail {

/// m random endpoint pairs (u != v); with allow_parallel false, distinct
/// unordered pairs (directed generators then also avoid digons).
inline std::vector<std::pair<std::size_t, std::size_t>> random_pairs(const GeneratorParams& p, std::mt19937_64& rng) {
  if (p.m > 0 && p.n < 2) throw std::invalid_argument("need at least two vertices for edges");
  if (!p.allow_parallel && p.m > p.n * (p.n - 1) / 2) throw std::invalid_argument("too many edges for a simple graph");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  while (out.size() < p.m) {
    std::size_t u = uniform_below(rng, p.n), v = uniform_below(rng, p.n - 1);
    if (v >= u) ++v;
    if (!p.allow_parallel) {
      const auto key = std::minmax(u, v);
      if (std::any_of(out.begin(), out.end(), [&](const auto& q) { return std::minmax(q.first, q.second) == key; }))
        continue;
    }
    out.emplace_back(u, v);
  }
  return out;
}

}  // namespace detail

inline DirectedGraph random_directed(const GeneratorParams& p, std::mt19937_64& rng) {
  DirectedGraph d;
  for (std::size_t v = 0; v < p.n; ++v) d.add_vertex();
  for (auto [u, v] : detail::random_pairs(p, rng)) d.add_edge(u, v);
  return d;
}

inline UndirectedGraph random_undirected(const GeneratorParams& p, std::mt19937_64& rng) {
  UndirectedGraph g;
  for (std::size_t v = 0; v < p.n; ++v) g.add_vertex();
  for (auto [u, v] : detail::random_pairs(p, rng)) g.add_edge(u, v);
  return g;
}

inline BidirectedGraph random_bidirected(const GeneratorParams& p, std::mt19937_64& rng) {
  BidirectedGraph b;
  for (std::size_t v = 0; v < p.n; ++v) b.add_vertex();
  for (auto [u, v] : detail::random_pairs(p, rng)) {
    const Sign su = uniform_below(rng, 2) ? Sign::minus : Sign::plus;
    const Sign sv = uniform_below(rng, 2) ? Sign::minus : Sign::plus;
    b.add_edge(u, v, su, sv);
  }
  return b;
}

inline BidirectedGraph random_bidirected_graph(std::size_t n, std::size_t m, std::mt19937_64& rng,
                                               bool allow_parallel = true) {
  return random_bidirected({n, m, allow_parallel}, rng);
}

}  // namespace cycdual
