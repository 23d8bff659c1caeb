#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "cycdual/duality.hpp"
#include "cycdual/errors.hpp"
#include "cycdual/graph.hpp"
#include "cycdual/oracles.hpp"

namespace cycdual {

/**
 * A cubic tree stored as a rooted parent list, plus the leaf of every graph
 * vertex. Tree edge i is {i, parent[i]} for each non-root node i. With one
 * vertex the tree is a single leaf; with two it is a single edge.
 */
struct CycleDecomposition {
  std::vector<std::ptrdiff_t> parent;  // -1 at the root
  std::vector<std::size_t> leaf_of;    // graph vertex -> tree node

  std::size_t num_nodes() const { return parent.size(); }
  std::vector<std::size_t> tree_edges() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < parent.size(); ++i)
      if (parent[i] >= 0) out.push_back(i);
    return out;
  }
  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(parent.size());
    for (std::size_t i = 0; i < parent.size(); ++i)
      if (parent[i] >= 0) {
        adj[i].push_back(static_cast<std::size_t>(parent[i]));
        adj[static_cast<std::size_t>(parent[i])].push_back(i);
      }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
  }
  bool operator==(const CycleDecomposition&) const = default;
};

/// Throws GraphError unless `dec` is a cubic tree whose leaves biject to the n vertices.
inline void validate_decomposition(const CycleDecomposition& dec, std::size_t n) {
  const std::size_t nodes = dec.num_nodes();
  if (dec.leaf_of.size() != n) throw GraphError("decomposition: leaf map size differs from vertex count");
  if (n == 0) {
    if (nodes != 0) throw GraphError("decomposition: empty graph needs an empty tree");
    return;
  }
  const std::size_t expected = n <= 2 ? n : 2 * n - 2;
  if (nodes != expected) throw GraphError("decomposition: wrong number of tree nodes");
  std::size_t roots = 0;
  for (std::size_t i = 0; i < nodes; ++i) {
    if (dec.parent[i] < 0) ++roots;
    else if (static_cast<std::size_t>(dec.parent[i]) >= nodes) throw GraphError("decomposition: parent out of range");
  }
  if (roots != 1) throw GraphError("decomposition: tree must have exactly one root");
  // Every node must reach the root without repeating.
  for (std::size_t i = 0; i < nodes; ++i) {
    std::size_t steps = 0;
    for (std::ptrdiff_t x = static_cast<std::ptrdiff_t>(i); x >= 0; x = dec.parent[static_cast<std::size_t>(x)])
      if (++steps > nodes) throw GraphError("decomposition: parent list has a cycle");
  }
  const auto adj = dec.adjacency();
  std::vector<bool> is_leaf_image(nodes, false);
  for (auto t : dec.leaf_of) {
    if (t >= nodes || is_leaf_image[t]) throw GraphError("decomposition: leaf map is not injective");
    is_leaf_image[t] = true;
  }
  for (std::size_t i = 0; i < nodes; ++i) {
    const std::size_t deg = adj[i].size();
    if (is_leaf_image[i] ? deg > 1 : deg != 3) throw GraphError("decomposition: tree is not cubic");
    if (is_leaf_image[i] && n >= 2 && deg != 1) throw GraphError("decomposition: leaf has no neighbour");
  }
}

namespace detail {

/// Tree nodes on the child side of tree edge `child`.
inline std::vector<bool> subtree_nodes(const CycleDecomposition& dec, std::size_t child) {
  std::vector<bool> in(dec.num_nodes(), false);
  for (std::size_t i = 0; i < dec.num_nodes(); ++i) {
    for (std::ptrdiff_t x = static_cast<std::ptrdiff_t>(i); x >= 0; x = dec.parent[static_cast<std::size_t>(x)])
      if (static_cast<std::size_t>(x) == child) {
        in[i] = true;
        break;
      }
  }
  return in;
}

/// Parent list of an edge-listed tree, rooted at `root`, children visited in index order.
inline std::vector<std::ptrdiff_t> root_tree(std::size_t nodes, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                             std::size_t root) {
  std::vector<std::vector<std::size_t>> adj(nodes);
  for (const auto& [a, b] : edges) adj[a].push_back(b), adj[b].push_back(a);
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<std::ptrdiff_t> parent(nodes, -1);
  std::vector<bool> seen(nodes, false);
  std::vector<std::size_t> stack{root};
  seen[root] = true;
  while (!stack.empty()) {
    const auto x = stack.back();
    stack.pop_back();
    for (auto y : adj[x])
      if (!seen[y]) {
        seen[y] = true;
        parent[y] = static_cast<std::ptrdiff_t>(x);
        stack.push_back(y);
      }
  }
  return parent;
}

}  // namespace detail

/// Side A holds the vertices whose leaves lie below tree edge `tree_edge` (a non-root node).
template <AnyGraph G>
EdgeCut induced_cut(const G& g, const CycleDecomposition& dec, std::size_t tree_edge) {
  if (tree_edge >= dec.num_nodes() || dec.parent[tree_edge] < 0) throw GraphError("induced_cut: not a tree edge");
  const auto below = detail::subtree_nodes(dec, tree_edge);
  std::vector<std::size_t> side_a;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (below[dec.leaf_of[v]]) side_a.push_back(v);
  return make_cut(g, side_a);
}

/**
 * Every leaf-labelled cubic tree on n leaves, (2n-5)!! of them for n >= 3.
 * Leaves are nodes 0..n-1 (leaf_of is the identity), internal nodes follow.
 * Leaf k >= 3 is attached by subdividing each edge of the tree on leaves
 * 0..k-1 in turn. `visit` returns false to stop early.
 */
template <typename Visit>
void for_each_cubic_tree(std::size_t n, Visit&& visit) {
  std::vector<std::size_t> id(n);
  for (std::size_t v = 0; v < n; ++v) id[v] = v;
  if (n <= 2) {
    CycleDecomposition d{std::vector<std::ptrdiff_t>(n, -1), id};
    if (n == 2) d.parent[1] = 0;
    visit(d);
    return;
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges{{0, n}, {1, n}, {2, n}};
  bool go_on = true;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (!go_on) return;
    if (k == n) {
      go_on = visit(CycleDecomposition{detail::root_tree(2 * n - 2, edges, n), id});
      return;
    }
    const std::size_t inner = n + k - 2;
    const std::size_t count = edges.size();
    for (std::size_t i = 0; i < count && go_on; ++i) {
      const auto [a, b] = edges[i];
      edges[i] = {a, inner};
      edges.push_back({inner, b});
      edges.push_back({k, inner});
      self(self, k + 1);
      edges.pop_back();
      edges.pop_back();
      edges[i] = {a, b};
    }
  };
  rec(rec, 3);
}

inline std::uint64_t cubic_tree_count(std::size_t n) {
  std::uint64_t c = 1;
  for (std::size_t k = 3; k < n; ++k) c *= 2 * k - 3;
  return c;
}

/**
 * cp(F) computed twice: by the packing oracle on the graph itself
 * (vertex-disjoint cycles, F-edges counted) and by the vertex-split LP with
 * unit weight on the images of F. `value` is the oracle's when it finished.
 */
struct Porosity {
  std::size_t value = 0;
  Rational lp_value = 0;
  std::optional<std::size_t> oracle_value;
  bool lp_integral = true;
  /// False when the oracle ran out of budget and `value` rests on the LP alone.
  bool verified = false;
  bool agree() const { return oracle_value && Rational(static_cast<long>(*oracle_value)) == lp_value; }
};

namespace detail {

template <AnyGraph G>
BidirectedGraph as_bidirected(const G& g) {
  if constexpr (G::kind == GraphKind::directed) return directed_to_bidirected(g);
  else return g;
}

}  // namespace detail

template <AnyGraph G>
  requires(G::kind != GraphKind::undirected)
Porosity cycle_porosity(const G& g, const EdgeCut& cut, const EnumerationBudget& budget = {}) {
  Porosity p;
  const auto b = detail::as_bidirected(g);
  std::vector<Rational> weights(b.num_edges() + b.num_vertices(), Rational(0));
  for (auto e : cut.cut_edges) weights.at(e) = 1;  // B' keeps B's edge indices
  const auto sp = detail::split_packing(b, weights, budget);
  p.lp_value = sp.lp.primal.objective;
  p.lp_integral = all_integral(sp.lp.primal.primal);
  try {
    p.oracle_value = max_packing(g, Target{ElementKind::edge, cut.cut_edges}, ElementKind::vertex, budget).score;
    p.value = *p.oracle_value;
    p.verified = true;
  } catch (const BudgetExceeded&) {
    p.value = static_cast<std::size_t>(mpz_class(p.lp_value.get_num() / p.lp_value.get_den()).get_ui());
  }
  return p;
}

/// Width of one decomposition, with the porosity of every tree edge.
struct DecompositionWidth {
  std::size_t width = 0;
  std::map<std::size_t, Porosity> per_edge;  // tree edge -> porosity of its cut
  bool all_agree = true;
  bool verified = true;
};

template <AnyGraph G>
DecompositionWidth decomposition_width(const G& g, const CycleDecomposition& dec, const EnumerationBudget& budget = {}) {
  validate_decomposition(dec, g.num_vertices());
  DecompositionWidth w;
  for (auto t : dec.tree_edges()) {
    const auto p = cycle_porosity(g, induced_cut(g, dec, t), budget);
    w.width = std::max(w.width, p.value);
    w.all_agree = w.all_agree && p.agree();
    w.verified = w.verified && p.verified;
    w.per_edge.emplace(t, p);
  }
  return w;
}

struct CycleWidth {
  std::size_t width = 0;
  CycleDecomposition witness;
  std::uint64_t trees_checked = 0;
  std::size_t cuts_evaluated = 0;
  /// Every distinct cut's oracle and LP porosity matched.
  bool all_agree = true;
};

/**
 * Minimum width over all cubic trees on |V| leaves. Porosity depends only on
 * the vertex bipartition, so each distinct cut is evaluated once.
 */
template <AnyGraph G>
CycleWidth cycle_width_bruteforce(const G& g, std::size_t n_cap = 8, const EnumerationBudget& budget = {}) {
  const std::size_t n = g.num_vertices();
  if (n > n_cap) throw BudgetExceeded("cycle-width vertex cap (" + std::to_string(n_cap) + ")");
  if (n > 63) throw BudgetExceeded("cycle-width vertex cap (63)");
  std::map<std::uint64_t, std::size_t> memo;
  CycleWidth best;
  bool have = false;
  const std::uint64_t full = n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n));
  for_each_cubic_tree(n, [&](const CycleDecomposition& dec) {
    ++best.trees_checked;
    std::size_t width = 0;
    for (auto t : dec.tree_edges()) {
      const auto below = detail::subtree_nodes(dec, t);
      std::uint64_t mask = 0;
      for (std::size_t v = 0; v < n; ++v)
        if (below[dec.leaf_of[v]]) mask |= std::uint64_t{1} << v;
      const std::uint64_t key = std::min(mask, full & ~mask);
      auto it = memo.find(key);
      if (it == memo.end()) {
        const auto p = cycle_porosity(g, induced_cut(g, dec, t), budget);
        best.all_agree = best.all_agree && p.agree();
        it = memo.emplace(key, p.value).first;
      }
      width = std::max(width, it->second);
      if (have && width >= best.width) break;
    }
    if (!have || width < best.width) {
      have = true;
      best.width = width;
      best.witness = dec;
    }
    return true;
  });
  best.cuts_evaluated = memo.size();
  return best;
}

/// Y_e for one tree edge, with what was checked about it.
struct HittingSetYe {
  EdgeCut cut;
  std::vector<std::size_t> vertices;
  std::size_t porosity = 0;  // packing score of the engine run
  Verification status = Verification::skipped;
};

/**
 * For every tree edge: subdivide the cut, run the vertex engine with S the
 * subdivision vertices, and replace each subdivision vertex in the hitting
 * set by the endpoint of its cut edge on side A. Every cycle through a cut
 * edge passes both endpoints, so the replacement still hits it.
 */
template <AnyGraph G>
  requires(G::kind != GraphKind::undirected)
std::map<std::size_t, HittingSetYe> hitting_sets_Ye(const G& g, const CycleDecomposition& dec,
                                                    const DualityOptions& opt = {}) {
  validate_decomposition(dec, g.num_vertices());
  std::map<std::size_t, HittingSetYe> out;
  std::optional<CycleFamily> fam;
  try {
    fam = cycle_family(g, opt.budget);
  } catch (const BudgetExceeded&) {
  }
  for (auto t : dec.tree_edges()) {
    HittingSetYe y;
    y.cut = induced_cut(g, dec, t);
    const auto sub = subdivide_edges(g, y.cut.cut_edges);
    DualityReport rep;
    const DualityOptions engine_opt{opt.budget, VerifyLevel::off};
    if constexpr (G::kind == GraphKind::directed) rep = directed_vertex_duality(sub.graph, sub.subdivision_vertices, engine_opt);
    else rep = bidirected_vertex_duality(sub.graph, sub.subdivision_vertices, engine_opt);
    y.porosity = rep.packing.score;
    std::vector<bool> in_a(g.num_vertices(), false);
    for (auto v : y.cut.side_a) in_a[v] = true;
    for (auto v : rep.hitting.elements) {
      if (v < g.num_vertices()) {
        y.vertices.push_back(v);
        continue;
      }
      const auto i = static_cast<std::size_t>(
          std::find(sub.subdivision_vertices.begin(), sub.subdivision_vertices.end(), v) - sub.subdivision_vertices.begin());
      const auto [a, b] = g.ends(sub.subdivided_edge.at(i));
      y.vertices.push_back(in_a[a] ? a : b);
    }
    y.vertices = detail::sorted_unique(std::move(y.vertices));
    if (y.vertices.size() > y.porosity) throw std::logic_error("Y_e is larger than the porosity of its cut");
    if (opt.verify != VerifyLevel::off) {
      y.status = fam ? (verify_hitting(*fam, Target{ElementKind::edge, y.cut.cut_edges}, ElementKind::vertex, y.vertices)
                            ? Verification::verified
                            : Verification::failed)
                     : Verification::unverified;
    }
    out.emplace(t, std::move(y));
  }
  return out;
}

namespace detail {

/// Vertices v reachable from s in g - removed. Directed: along orientation.
/// Bidirected: along a vertex-simple path whose sign switches at every inner
/// vertex, leaving s on a minus half-edge and entering v on a plus one (so a
/// digraph's image reaches exactly what the digraph reaches).
template <AnyGraph G>
std::vector<bool> reachable_from(const G& g, std::size_t s, const std::vector<bool>& removed) {
  const std::size_t n = g.num_vertices();
  std::vector<bool> reach(n, false);
  reach[s] = true;
  if constexpr (G::kind == GraphKind::bidirected) {
    std::vector<bool> on_path(n, false);
    on_path[s] = true;
    auto rec = [&](auto&& self, std::size_t v, std::size_t in) -> void {
      for (auto e : g.incident(v)) {
        if (e == in || g.sign(v, e) == g.sign(v, in)) continue;
        const auto w = g.other_end(e, v);
        if (removed[w] || on_path[w]) continue;
        if (g.sign(w, e) == Sign::plus) reach[w] = true;
        on_path[w] = true;
        self(self, w, e);
        on_path[w] = false;
      }
    };
    for (auto e : g.incident(s)) {
      const auto w = g.other_end(e, s);
      if (g.sign(s, e) != Sign::minus || removed[w]) continue;
      if (g.sign(w, e) == Sign::plus) reach[w] = true;
      on_path[w] = true;
      rec(rec, w, e);
      on_path[w] = false;
    }
  } else {
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto e : g.incident(v)) {
        if constexpr (G::kind == GraphKind::directed)
          if (g.tail(e) != v) continue;
        const auto w = g.other_end(e, v);
        if (!removed[w] && !reach[w]) reach[w] = true, stack.push_back(w);
      }
    }
  }
  return reach;
}

}  // namespace detail

/**
 * Strong components of g - removed, each sorted, listed by smallest vertex.
 * For bidirected graphs mutual sign-alternating reachability (oriented as in
 * reachable_from) is used and its transitive closure taken; that relation is
 * a stand-in of our own, not the external definition the game is usually
 * stated with.
 */
template <AnyGraph G>
std::vector<std::vector<std::size_t>> strong_components(const G& g, const std::vector<std::size_t>& removed = {}) {
  const std::size_t n = g.num_vertices();
  std::vector<bool> gone(n, false);
  for (auto v : removed) gone.at(v) = true;
  std::vector<std::vector<bool>> reach(n);
  for (std::size_t v = 0; v < n; ++v)
    if (!gone[v]) reach[v] = detail::reachable_from(g, v, gone);
  std::vector<std::ptrdiff_t> comp(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (gone[v] || comp[v] >= 0) continue;
    std::vector<std::size_t> members{v}, stack{v};
    comp[v] = static_cast<std::ptrdiff_t>(out.size());
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      for (std::size_t y = 0; y < n; ++y)
        if (!gone[y] && comp[y] < 0 && reach[x][y] && reach[y][x]) {
          comp[y] = comp[v];
          members.push_back(y);
          stack.push_back(y);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

/// Underlying graph connected and every edge on some cycle.
inline bool is_circular(const BidirectedGraph& b, const EnumerationBudget& budget = {}) {
  const std::size_t n = b.num_vertices();
  if (n == 0) return true;
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto e : b.incident(v)) {
      const auto w = b.other_end(e, v);
      if (!seen[w]) seen[w] = true, stack.push_back(w);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) return false;
  Bits covered(b.num_edges());
  for (const auto& c : enumerate_cycles(b, budget))
    for (auto e : c.edges) covered.set(e);
  return covered.all();
}

enum class RobberMode { adversarial, scripted };

struct GameRound {
  std::size_t round = 0;
  std::vector<std::size_t> cops;
  std::vector<std::size_t> robber;  // empty once caught
  std::string phase;
  bool operator==(const GameRound&) const = default;
};

/// The Y_e strategy: a decomposition and its hitting sets.
struct CopStrategy {
  CycleDecomposition decomposition;
  std::map<std::size_t, std::vector<std::size_t>> y;  // tree edge -> Y_e
  std::size_t width = 0;
};

template <AnyGraph G>
  requires(G::kind != GraphKind::undirected)
CopStrategy make_cop_strategy(const G& g, const CycleDecomposition& dec, const DualityOptions& opt = {}) {
  CopStrategy s{dec, {}, decomposition_width(g, dec, opt.budget).width};
  for (auto& [t, ye] : hitting_sets_Ye(g, dec, opt)) {
    if (ye.status == Verification::failed) throw std::logic_error("Y_e misses a cycle through its cut");
    if (ye.vertices.size() > s.width) throw std::logic_error("Y_e exceeds the decomposition width");
    s.y.emplace(t, std::move(ye.vertices));
  }
  return s;
}

struct GameResult {
  bool caught = false;
  std::size_t cop_budget = 0;  // 3 max(k, 1)
  std::size_t max_cops = 0;
  bool within_budget = true;
  /// Rounds until the catch on the longest line of play.
  std::size_t rounds = 0;
  std::size_t positions_explored = 0;
  /// The robber left the side of the cut the strategy assumed; a strategy failure.
  std::optional<std::string> escape;
  /// Adversarial: the longest line; scripted: the line played.
  std::vector<GameRound> transcript;
};

namespace detail {

/// One match of the Y_e strategy; the robber is either the script or every legal reply.
template <AnyGraph G>
class CopsAndRobberGame {
 public:
  CopsAndRobberGame(const G& g, const CopStrategy& s, RobberMode mode, std::vector<std::size_t> script)
      : g_(g), s_(s), mode_(mode), script_(std::move(script)), adj_(s.decomposition.adjacency()) {
    leaf_vertex_.assign(s.decomposition.num_nodes(), npos);
    for (std::size_t v = 0; v < s.decomposition.leaf_of.size(); ++v) leaf_vertex_[s.decomposition.leaf_of[v]] = v;
  }

  GameResult run() {
    GameResult r;
    r.cop_budget = budget_ = 3 * std::max<std::size_t>(s_.width, 1);
    const auto edges = s_.decomposition.tree_edges();
    // With one vertex there are no tree edges: start empty and capture its leaf.
    State start{edges.empty() ? Phase::capture_first : Phase::initial, edges.empty() ? npos : edges.front(), npos};
    std::vector<std::size_t> c0 = edges.empty() ? std::vector<std::size_t>{} : s_.y.at(edges.front());
    const auto options = components_within(c0, std::nullopt);
    Line line = play_robber(0, start, c0, options, "initial");
    r.caught = line.caught;
    r.max_cops = line.max_cops;
    r.rounds = line.rounds;
    r.escape = line.escape;
    r.transcript = std::move(line.rounds_played);
    r.positions_explored = explored_;
    r.within_budget = r.max_cops <= r.cop_budget;
    return r;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  enum class Phase { initial, at_edge, expanded, capture_first };

  // The strategy's memory: the edge f it sits on and, after an expansion, f1 and f2.
  struct State {
    Phase phase;
    std::size_t f;
    std::size_t inner;  // endpoint of f inside the robber's subtree
    auto operator<=>(const State&) const = default;
  };

  struct Line {
    bool caught = true;
    std::size_t max_cops = 0;
    std::size_t rounds = 0;
    std::optional<std::string> escape;
    std::vector<GameRound> rounds_played;
  };

  std::size_t other(std::size_t tree_edge, std::size_t node) const {
    const auto p = static_cast<std::size_t>(s_.decomposition.parent[tree_edge]);
    return node == tree_edge ? p : tree_edge;
  }
  /// The tree edge joining two adjacent nodes.
  std::size_t edge_between(std::size_t a, std::size_t b) const {
    return s_.decomposition.parent[a] == static_cast<std::ptrdiff_t>(b) ? a : b;
  }
  /// Graph vertices whose leaves lie in the component of T - f containing `node`.
  std::vector<bool> side(std::size_t f, std::size_t node) const {
    std::vector<bool> in(g_.num_vertices(), false);
    std::vector<bool> seen(adj_.size(), false);
    std::vector<std::size_t> stack{node};
    seen[node] = true;
    seen[other(f, node)] = true;
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      if (leaf_vertex_[x] != npos) in[leaf_vertex_[x]] = true;
      for (auto y : adj_[x])
        if (!seen[y]) seen[y] = true, stack.push_back(y);
    }
    return in;
  }
  bool inside(const std::vector<std::size_t>& r, const std::vector<bool>& in) const {
    return std::all_of(r.begin(), r.end(), [&](std::size_t v) { return in[v]; });
  }

  /// Strong components of g - cops, restricted to those inside `within` (a component of g - shared).
  std::vector<std::vector<std::size_t>> components_within(const std::vector<std::size_t>& cops,
                                                          const std::optional<std::vector<std::size_t>>& within) const {
    auto comps = strong_components(g_, cops);
    if (!within) return comps;
    std::vector<bool> in(g_.num_vertices(), false);
    for (auto v : *within) in[v] = true;
    std::erase_if(comps, [&](const auto& c) { return !inside(c, in); });
    return comps;
  }

  /// Legal robber replies when the cops move from `from` to `to` with the robber on `robber`.
  std::vector<std::vector<std::size_t>> replies(const std::vector<std::size_t>& from, const std::vector<std::size_t>& to,
                                                const std::vector<std::size_t>& robber) const {
    std::vector<std::size_t> shared;
    std::set_intersection(from.begin(), from.end(), to.begin(), to.end(), std::back_inserter(shared));
    for (const auto& big : strong_components(g_, shared))
      if (std::find(big.begin(), big.end(), robber.front()) != big.end()) return components_within(to, big);
    throw std::logic_error("robber component vanished");
  }

  /// The robber picks among `options` (one per legal component); empty options mean the catch.
  Line play_robber(std::size_t round, const State& st, const std::vector<std::size_t>& cops,
                   const std::vector<std::vector<std::size_t>>& options, std::string_view phase) {
    Line best;
    best.max_cops = cops.size();
    if (options.empty()) {
      best.rounds = round;
      best.rounds_played.push_back(GameRound{round, cops, {}, std::string(phase)});
      return best;
    }
    std::vector<std::size_t> picks;
    if (mode_ == RobberMode::adversarial) {
      for (std::size_t i = 0; i < options.size(); ++i) picks.push_back(i);
    } else {
      std::size_t pick = 0;
      if (script_pos_ < script_.size()) {
        const auto v = script_[script_pos_++];
        auto it = std::find_if(options.begin(), options.end(),
                               [&](const auto& c) { return std::find(c.begin(), c.end(), v) != c.end(); });
        if (it == options.end())
          throw IllegalMove("round " + std::to_string(round) + ": no legal robber component contains vertex " +
                            std::to_string(v));
        pick = static_cast<std::size_t>(it - options.begin());
      }
      picks.push_back(pick);
    }
    bool first = true;
    for (auto i : picks) {
      Line sub = after_robber(round, st, cops, options[i]);
      sub.rounds_played.insert(sub.rounds_played.begin(), GameRound{round, cops, options[i], std::string(phase)});
      sub.max_cops = std::max(sub.max_cops, cops.size());
      // Prefer lines the cops lose, then longer ones.
      const bool better = first || (best.caught && !sub.caught) ||
                          (best.caught == sub.caught && sub.rounds > best.rounds);
      const std::size_t worst_cops = std::max(best.max_cops, sub.max_cops);
      if (better) best = std::move(sub);
      best.max_cops = worst_cops;
      first = false;
    }
    return best;
  }

  /// Cops' move given the robber's current component.
  Line after_robber(std::size_t round, const State& st, const std::vector<std::size_t>& cops,
                    const std::vector<std::size_t>& robber) {
    // Positions are memoised with rounds counted from the current one.
    const auto key = std::make_tuple(st, cops, robber);
    if (mode_ == RobberMode::adversarial) {
      if (auto it = memo_.find(key); it != memo_.end()) return shifted(it->second, round, true);
    }
    ++explored_;
    Line out = cops_move(round, st, cops, robber);
    if (mode_ == RobberMode::adversarial) memo_.emplace(key, shifted(out, round, false));
    return out;
  }

  static Line shifted(Line l, std::size_t by, bool up) {
    auto move = [&](std::size_t& r) { r = up ? r + by : r - by; };
    move(l.rounds);
    for (auto& gr : l.rounds_played) move(gr.round);
    return l;
  }

  /// Occupying the robber's only vertex leaves her nowhere to go.
  Line capture(std::size_t round, const State& st, const std::vector<std::size_t>& cops,
               const std::vector<std::size_t>& next, const std::vector<std::size_t>& robber) {
    const auto options = replies(cops, next, robber);
    if (!options.empty()) return escaped(round, "robber survived the capture move");
    return play_robber(round + 1, st, next, options, "capture");
  }

  Line escaped(std::size_t round, std::string why) {
    Line l;
    l.caught = false;
    l.rounds = round;
    l.escape = std::move(why);
    return l;
  }

  Line cops_move(std::size_t round, const State& st, const std::vector<std::size_t>& cops,
                 const std::vector<std::size_t>& robber) {
    if (st.phase == Phase::capture_first) {
      // Single-vertex graph: occupy the one leaf.
      std::vector<std::size_t> next = cops;
      next.push_back(robber.front());
      next = sorted_unique(std::move(next));
      return capture(round, st, cops, next, robber);
    }
    // A robber on a lone vertex is caught by one more cop, wherever the walk is.
    if (robber.size() == 1 && cops.size() < budget_) {
      auto next = cops;
      next.push_back(robber.front());
      return capture(round, st, cops, sorted_unique(std::move(next)), robber);
    }
    std::size_t f = st.f, inner = st.inner;
    if (st.phase == Phase::initial || st.phase == Phase::at_edge) {
      if (st.phase == Phase::initial) {
        // The robber's component decides which subtree of T - f we follow.
        const std::size_t a = f, b = static_cast<std::size_t>(s_.decomposition.parent[f]);
        if (inside(robber, side(f, a))) inner = a;
        else if (inside(robber, side(f, b))) inner = b;
        else return escaped(round, "initial robber component crosses the cut of tree edge " + std::to_string(f));
      } else if (!inside(robber, side(f, inner))) {
        return escaped(round, "robber left the subtree behind tree edge " + std::to_string(f));
      }
      if (leaf_vertex_[inner] != npos) {
        std::vector<std::size_t> next = cops;
        next.push_back(leaf_vertex_[inner]);
        next = sorted_unique(std::move(next));
        return capture(round, State{Phase::at_edge, f, inner}, cops, next, robber);
      }
      std::vector<std::size_t> next = cops;
      for (auto t : adj_[inner]) {
        if (t == other(f, inner)) continue;
        const auto& ye = s_.y.at(edge_between(inner, t));
        next.insert(next.end(), ye.begin(), ye.end());
      }
      next = sorted_unique(std::move(next));
      return play_robber(round + 1, State{Phase::expanded, f, inner}, next, replies(cops, next, robber),
                         "expand");
    }
    // Expanded: the robber sits beyond f1 or f2; retreat to that edge's Y.
    for (auto t : adj_[inner]) {
      if (t == other(f, inner)) continue;
      const std::size_t fj = edge_between(inner, t);
      if (!inside(robber, side(fj, t))) continue;
      const auto& next = s_.y.at(fj);
      return play_robber(round + 1, State{Phase::at_edge, fj, t}, next, replies(cops, next, robber), "contract");
    }
    return escaped(round, "robber is not beyond either child edge of tree node " + std::to_string(inner));
  }

  const G& g_;
  const CopStrategy& s_;
  RobberMode mode_;
  std::vector<std::size_t> script_;
  std::size_t script_pos_ = 0;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> leaf_vertex_;
  std::map<std::tuple<State, std::vector<std::size_t>, std::vector<std::size_t>>, Line> memo_;
  std::size_t explored_ = 0;
  std::size_t budget_ = 0;
};

}  // namespace detail

/**
 * Plays the Y_e strategy. The adversarial robber tries every legal reply and
 * the result describes the worst line for the cops; the scripted robber
 * names, each time it moves, a vertex of the component it wants. A script
 * that runs out picks the first legal component.
 */
template <AnyGraph G>
  requires(G::kind != GraphKind::undirected)
GameResult play_cops_and_robbers(const G& g, const CopStrategy& s, RobberMode mode,
                                 const std::vector<std::size_t>& script = {}) {
  validate_decomposition(s.decomposition, g.num_vertices());
  if (g.num_vertices() == 0) return GameResult{true, 3, 0, true, 0, 0, std::nullopt, {}};
  return detail::CopsAndRobberGame<G>(g, s, mode, script).run();
}

}  // namespace cycdual
