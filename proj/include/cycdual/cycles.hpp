#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "cycdual/errors.hpp"
#include "cycdual/gf2.hpp"
#include "cycdual/graph.hpp"

namespace cycdual {

/// Explicit limits for the exhaustive searches. Exceeding one throws
/// BudgetExceeded; nothing is ever silently truncated.
struct EnumerationBudget {
  std::size_t max_cycles = 100000;
  std::size_t max_subsets = 1000000;
};

namespace detail {

template <AnyGraph G>
class CycleEnumerator {
 public:
  CycleEnumerator(const G& g, std::size_t max_cycles, const Bits* edge_mask)
      : g_(g), max_cycles_(max_cycles), mask_(edge_mask), on_path_(g.num_vertices(), false) {}

  std::vector<SignedCycle> run() {
    for (std::size_t s = 0; s < g_.num_vertices(); ++s) {
      start_ = s;
      on_path_[s] = true;
      path_v_.assign(1, s);
      for (std::size_t e : g_.incident(s)) {
        if (!usable(e) || !leaves(e, s)) continue;
        const std::size_t w = g_.other_end(e, s);
        if (w <= s) continue;
        path_e_.assign(1, e);
        extend(w, e);
      }
      on_path_[s] = false;
    }
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  bool usable(std::size_t e) const { return mask_ == nullptr || (*mask_)[e]; }

  /// Whether e may be traversed away from v (orientation only).
  bool leaves(std::size_t e, std::size_t v) const {
    if constexpr (G::kind == GraphKind::directed) return g_.ends(e).first == v;
    return true;
  }

  /// Whether a walk arriving at v along `in` may continue along `out`.
  bool turns(std::size_t v, std::size_t in, std::size_t out) const {
    if (in == out) return false;
    if constexpr (G::kind == GraphKind::bidirected) return g_.sign(v, in) != g_.sign(v, out);
    return true;
  }

  void extend(std::size_t v, std::size_t in) {
    on_path_[v] = true;
    path_v_.push_back(v);
    for (std::size_t f : g_.incident(v)) {
      if (!usable(f) || !leaves(f, v) || !turns(v, in, f)) continue;
      const std::size_t w = g_.other_end(f, v);
      if (w == start_) {
        if (!turns(start_, f, path_e_.front())) continue;
        record(f);
      } else if (w > start_ && !on_path_[w]) {
        path_e_.push_back(f);
        extend(w, f);
        path_e_.pop_back();
      }
    }
    path_v_.pop_back();
    on_path_[v] = false;
  }

  void record(std::size_t closing) {
    const std::size_t k = path_e_.size() + 1;
    if constexpr (G::kind != GraphKind::directed) {
      // Each undirected or signed cycle is met once per direction; keep one.
      const bool canonical = k >= 3 ? path_v_[1] < path_v_.back() : path_e_.front() < closing;
      if (!canonical) return;
    }
    if (out_.size() >= max_cycles_) throw BudgetExceeded("cycles (max " + std::to_string(max_cycles_) + ")");
    SignedCycle c{path_v_, path_e_};
    c.edges.push_back(closing);
    out_.push_back(std::move(c));
  }

  const G& g_;
  std::size_t max_cycles_;
  const Bits* mask_;
  std::vector<bool> on_path_;
  std::size_t start_ = 0;
  std::vector<std::size_t> path_v_, path_e_;
  std::vector<SignedCycle> out_;
};

}  // namespace detail

/**
 * All cycles of g in canonical form and sorted order. Directed graphs yield
 * directed cycles, bidirected graphs sign-switching cycles (2-cycles on
 * parallel edges included), undirected graphs ordinary cycles.
 */
template <AnyGraph G>
std::vector<SignedCycle> enumerate_cycles(const G& g, const EnumerationBudget& budget = {}) {
  return detail::CycleEnumerator<G>(g, budget.max_cycles, nullptr).run();
}

/// Cycles using only edges in `edges`.
template <AnyGraph G>
std::vector<SignedCycle> enumerate_cycles_within(const G& g, const Bits& edges, const EnumerationBudget& budget = {}) {
  return detail::CycleEnumerator<G>(g, budget.max_cycles, &edges).run();
}

/// Cycles together with their vertex and edge sets as bitsets.
struct CycleFamily {
  std::size_t num_vertices = 0;
  std::size_t num_edges = 0;
  std::vector<SignedCycle> cycles;
  std::vector<Bits> vertex_sets;
  std::vector<Bits> edge_sets;

  std::size_t size() const { return cycles.size(); }
};

inline CycleFamily make_family(std::size_t nv, std::size_t ne, std::vector<SignedCycle> cycles) {
  CycleFamily f{nv, ne, std::move(cycles), {}, {}};
  for (const auto& c : f.cycles) {
    Bits vs(nv), es(ne);
    for (auto v : c.vertices) vs.set(v);
    for (auto e : c.edges) es.set(e);
    f.vertex_sets.push_back(std::move(vs));
    f.edge_sets.push_back(std::move(es));
  }
  return f;
}

template <AnyGraph G>
CycleFamily cycle_family(const G& g, const EnumerationBudget& budget = {}) {
  return make_family(g.num_vertices(), g.num_edges(), enumerate_cycles(g, budget));
}

inline Bits to_bits(const std::vector<std::size_t>& items, std::size_t n) {
  Bits b(n);
  for (auto i : items) {
    if (i >= n) throw GraphError("index out of range");
    b.set(i);
  }
  return b;
}

inline std::vector<std::size_t> to_indices(const Bits& b) {
  std::vector<std::size_t> out;
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(i);
  return out;
}

/**
 * Splits an edge set in which every vertex is balanced (in = out for
 * directed graphs, even degree for undirected ones) into edge-disjoint
 * cycles. The walk starts at the smallest vertex with remaining support and
 * always takes the smallest unused feasible edge; whenever it revisits a
 * vertex the closed part is cut off as a cycle. Returns nullopt when the
 * walk gets stuck, i.e. the set was not balanced.
 */
template <AnyGraph G>
  requires(G::kind != GraphKind::bidirected)
std::optional<std::vector<SignedCycle>> peel_cycles(const G& g, const Bits& edges) {
  Bits left = edges;
  std::vector<SignedCycle> out;
  const bool directed = G::kind == GraphKind::directed;
  while (left.any()) {
    std::size_t start = g.num_vertices();
    for (std::size_t v = 0; v < g.num_vertices() && start == g.num_vertices(); ++v)
      for (auto e : g.incident(v))
        if (left[e] && (!directed || g.ends(e).first == v)) {
          start = v;
          break;
        }
    if (start == g.num_vertices()) return std::nullopt;
    std::vector<std::size_t> walk_v{start}, walk_e;
    std::vector<std::size_t> pos(g.num_vertices(), SIZE_MAX);
    pos[start] = 0;
    while (!walk_v.empty()) {
      const std::size_t v = walk_v.back();
      std::size_t next = SIZE_MAX;
      for (auto e : g.incident(v))
        if (left[e] && (!directed || g.ends(e).first == v)) {
          next = e;
          break;
        }
      if (next == SIZE_MAX) {
        if (walk_v.size() == 1) break;
        return std::nullopt;
      }
      left.reset(next);
      const std::size_t w = g.other_end(next, v);
      walk_e.push_back(next);
      if (pos[w] != SIZE_MAX) {
        SignedCycle c;
        const std::size_t p = pos[w];
        c.vertices.assign(walk_v.begin() + static_cast<std::ptrdiff_t>(p), walk_v.end());
        c.edges.assign(walk_e.begin() + static_cast<std::ptrdiff_t>(p), walk_e.end());
        for (std::size_t i = p + 1; i < walk_v.size(); ++i) pos[walk_v[i]] = SIZE_MAX;
        walk_v.resize(p + 1);
        walk_e.resize(p);
        out.push_back(canonicalize(c, !directed));
        if (walk_v.size() == 1) break;
      } else {
        pos[w] = walk_v.size();
        walk_v.push_back(w);
      }
    }
  }
  return out;
}

/**
 * Exact decomposition of an edge set of a bidirected graph into
 * edge-disjoint sign-switching cycles, by backtracking over the cycles the
 * set contains. nullopt means no such decomposition exists. The first
 * decomposition in canonical cycle order is returned.
 */
inline std::optional<std::vector<SignedCycle>> decompose_into_cycles(const BidirectedGraph& g, const Bits& edges,
                                                                     const EnumerationBudget& budget = {}) {
  if (edges.none()) return std::vector<SignedCycle>{};
  // Balanced signs at every vertex are necessary; reject cheaply first.
  std::vector<int> balance(g.num_vertices(), 0);
  for (auto e = edges.find_first(); e != Bits::npos; e = edges.find_next(e)) {
    balance[g.ends(e).first] += sign_value(g.signs(e)[0]);
    balance[g.ends(e).second] += sign_value(g.signs(e)[1]);
  }
  for (int b : balance)
    if (b != 0) return std::nullopt;
  const auto fam = make_family(g.num_vertices(), g.num_edges(), enumerate_cycles_within(g, edges, budget));
  std::vector<std::size_t> chosen;
  std::size_t nodes = 0;
  auto search = [&](auto&& self, Bits& left) -> bool {
    if (left.none()) return true;
    if (++nodes > budget.max_subsets) throw BudgetExceeded("subsets (cycle decomposition)");
    const std::size_t e = left.find_first();
    for (std::size_t i = 0; i < fam.size(); ++i) {
      if (!fam.edge_sets[i][e] || !fam.edge_sets[i].is_subset_of(left)) continue;
      left -= fam.edge_sets[i];
      chosen.push_back(i);
      if (self(self, left)) return true;
      chosen.pop_back();
      left |= fam.edge_sets[i];
    }
    return false;
  };
  Bits left = edges;
  if (!search(search, left)) return std::nullopt;
  std::vector<SignedCycle> out;
  for (auto i : chosen) out.push_back(fam.cycles[i]);
  return out;
}

}  // namespace cycdual
