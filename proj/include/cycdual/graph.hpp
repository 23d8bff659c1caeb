#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cycdual/errors.hpp"
#include "cycdual/matrix.hpp"

namespace cycdual {

enum class Sign : std::uint8_t { plus, minus };

constexpr Sign operator-(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
constexpr int sign_value(Sign s) { return s == Sign::plus ? 1 : -1; }
constexpr char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

enum class GraphKind { undirected, directed, bidirected };

constexpr std::string_view kind_name(GraphKind k) {
  switch (k) {
    case GraphKind::undirected: return "undirected";
    case GraphKind::directed: return "directed";
    case GraphKind::bidirected: return "bidirected";
  }
  return "";
}

struct EdgeEnds {
  std::size_t first;
  std::size_t second;
  bool operator==(const EdgeEnds&) const = default;
};

/**
 * Vertex and edge bookkeeping shared by the three graph kinds.
 *
 * Vertices and edges are identified by their insertion index; names are
 * opaque labels used for I/O. Insertion order is the canonical order that all
 * matrix layouts and tie-breaks derive from. Loops are rejected; parallel
 * edges are fine.
 */
class GraphBase {
 public:
  std::size_t num_vertices() const { return vertex_names_.size(); }
  std::size_t num_edges() const { return ends_.size(); }

  std::size_t add_vertex(std::string name = {}) {
    if (name.empty()) name = "v" + std::to_string(num_vertices());
    if (vertex_index_.contains(name)) throw GraphError("duplicate vertex id '" + name + "'");
    vertex_index_.emplace(name, num_vertices());
    vertex_names_.push_back(std::move(name));
    incident_.emplace_back();
    return num_vertices() - 1;
  }

  const std::string& vertex_name(std::size_t v) const { return vertex_names_.at(v); }
  const std::string& edge_name(std::size_t e) const { return edge_names_.at(e); }

  std::optional<std::size_t> find_vertex(std::string_view name) const {
    auto it = vertex_index_.find(std::string(name));
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> find_edge(std::string_view name) const {
    auto it = edge_index_.find(std::string(name));
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t vertex(std::string_view name) const {
    if (auto v = find_vertex(name)) return *v;
    throw GraphError("unknown vertex id '" + std::string(name) + "'");
  }
  std::size_t edge(std::string_view name) const {
    if (auto e = find_edge(name)) return *e;
    throw GraphError("unknown edge id '" + std::string(name) + "'");
  }

  /// First name of the form base, base', base'', ... not yet taken.
  std::string fresh_vertex_name(std::string base) const {
    while (vertex_index_.contains(base)) base += '\'';
    return base;
  }
  std::string fresh_edge_name(std::string base) const {
    while (edge_index_.contains(base)) base += '\'';
    return base;
  }

  const EdgeEnds& ends(std::size_t e) const { return ends_.at(e); }
  /// Edges at v, in edge order.
  const std::vector<std::size_t>& incident(std::size_t v) const { return incident_.at(v); }
  std::size_t other_end(std::size_t e, std::size_t v) const {
    const auto& en = ends_[e];
    return en.first == v ? en.second : en.first;
  }

  bool operator==(const GraphBase& o) const {
    return vertex_names_ == o.vertex_names_ && edge_names_ == o.edge_names_ && ends_ == o.ends_;
  }

 protected:
  std::size_t add_edge_impl(std::size_t u, std::size_t v, std::string name) {
    if (u >= num_vertices() || v >= num_vertices()) throw GraphError("edge endpoint out of range");
    if (u == v) throw GraphError("loops are not allowed (vertex '" + vertex_names_[u] + "')");
    if (name.empty()) name = "e" + std::to_string(num_edges());
    if (edge_index_.contains(name)) throw GraphError("duplicate edge id '" + name + "'");
    edge_index_.emplace(name, num_edges());
    edge_names_.push_back(std::move(name));
    ends_.push_back({u, v});
    incident_[u].push_back(num_edges() - 1);
    incident_[v].push_back(num_edges() - 1);
    return num_edges() - 1;
  }


 private:
  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
  std::unordered_map<std::string, std::size_t> vertex_index_;
  std::unordered_map<std::string, std::size_t> edge_index_;
  std::vector<EdgeEnds> ends_;
  std::vector<std::vector<std::size_t>> incident_;
};

class UndirectedGraph : public GraphBase {
 public:
  static constexpr GraphKind kind = GraphKind::undirected;

  std::size_t add_edge(std::size_t u, std::size_t v, std::string name = {}) {
    return add_edge_impl(u, v, std::move(name));
  }
  std::size_t add_edge(std::string_view u, std::string_view v, std::string name = {}) {
    return add_edge(vertex(u), vertex(v), std::move(name));
  }
  bool operator==(const UndirectedGraph&) const = default;
};

/// Edges stored as (tail, head).
class DirectedGraph : public GraphBase {
 public:
  static constexpr GraphKind kind = GraphKind::directed;

  std::size_t add_edge(std::size_t tail, std::size_t head, std::string name = {}) {
    return add_edge_impl(tail, head, std::move(name));
  }
  std::size_t add_edge(std::string_view tail, std::string_view head, std::string name = {}) {
    return add_edge(vertex(tail), vertex(head), std::move(name));
  }
  std::size_t tail(std::size_t e) const { return ends(e).first; }
  std::size_t head(std::size_t e) const { return ends(e).second; }
  bool operator==(const DirectedGraph&) const = default;
};

/// Undirected multigraph with a sign on every half-edge.
class BidirectedGraph : public GraphBase {
 public:
  static constexpr GraphKind kind = GraphKind::bidirected;

  std::size_t add_edge(std::size_t u, std::size_t v, Sign at_u, Sign at_v, std::string name = {}) {
    const std::size_t e = add_edge_impl(u, v, std::move(name));
    signs_.push_back({at_u, at_v});
    return e;
  }
  std::size_t add_edge(std::string_view u, std::string_view v, Sign at_u, Sign at_v, std::string name = {}) {
    return add_edge(vertex(u), vertex(v), at_u, at_v, std::move(name));
  }

  /// sigma(v, e); v must be an endpoint of e.
  Sign sign(std::size_t v, std::size_t e) const {
    const auto& en = ends(e);
    if (v == en.first) return signs_[e][0];
    if (v == en.second) return signs_[e][1];
    throw GraphError("vertex is not incident to edge");
  }
  /// Signs at (ends(e).first, ends(e).second).
  const std::array<Sign, 2>& signs(std::size_t e) const { return signs_.at(e); }

  bool operator==(const BidirectedGraph&) const = default;

 private:
  std::vector<std::array<Sign, 2>> signs_;
};

template <typename G>
concept AnyGraph = std::is_base_of_v<GraphBase, G> && requires { G::kind; };

/**
 * A vertex-simple closed walk v0 e0 v1 e1 ... v_{k-1} e_{k-1} v0 with k >= 2.
 * edges[i] joins vertices[i] and vertices[(i+1) % k]. In directed graphs the
 * walk follows edge orientation; in bidirected graphs the sign switches at
 * every vertex.
 */
struct SignedCycle {
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> edges;

  std::size_t length() const { return edges.size(); }
  auto operator<=>(const SignedCycle&) const = default;
};

/// A vertex bipartition with the edges crossing it.
struct EdgeCut {
  std::vector<std::size_t> side_a;
  std::vector<std::size_t> side_b;
  std::vector<std::size_t> cut_edges;
  bool operator==(const EdgeCut&) const = default;
};

template <AnyGraph G>
EdgeCut make_cut(const G& g, const std::vector<std::size_t>& side_a) {
  std::vector<bool> in_a(g.num_vertices(), false);
  for (auto v : side_a) in_a.at(v) = true;
  EdgeCut cut;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) (in_a[v] ? cut.side_a : cut.side_b).push_back(v);
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    if (in_a[g.ends(e).first] != in_a[g.ends(e).second]) cut.cut_edges.push_back(e);
  return cut;
}

/// Column of e: +1 at head, -1 at tail.
inline IntMatrix incidence_matrix_directed(const DirectedGraph& d) {
  IntMatrix n(d.num_vertices(), d.num_edges());
  for (std::size_t e = 0; e < d.num_edges(); ++e) {
    n(d.head(e), e) = 1;
    n(d.tail(e), e) = -1;
  }
  return n;
}

/// Entry (v, e) is sigma(v, e) as +-1, zero off the support.
inline IntMatrix incidence_matrix_bidirected(const BidirectedGraph& b) {
  IntMatrix m(b.num_vertices(), b.num_edges());
  for (std::size_t e = 0; e < b.num_edges(); ++e) {
    m(b.ends(e).first, e) = sign_value(b.signs(e)[0]);
    m(b.ends(e).second, e) = sign_value(b.signs(e)[1]);
  }
  return m;
}

/// Same vertices and edges; plus at the head, minus at the tail.
inline BidirectedGraph directed_to_bidirected(const DirectedGraph& d) {
  BidirectedGraph b;
  for (std::size_t v = 0; v < d.num_vertices(); ++v) b.add_vertex(d.vertex_name(v));
  for (std::size_t e = 0; e < d.num_edges(); ++e) b.add_edge(d.tail(e), d.head(e), Sign::minus, Sign::plus, d.edge_name(e));
  return b;
}

/**
 * B' from B: every v becomes v+ (keeping v's plus half-edges) and v- (keeping
 * its minus half-edges), joined by a split edge signed minus at v+ and plus
 * at v-. Edge-disjoint cycles of B' are vertex-disjoint, and cycles of B and
 * B' correspond one-to-one.
 *
 * Layout of B': vertex 2v is v+, 2v+1 is v-; edges 0..m-1 are the images of
 * B's edges in order, edge m+v is the split edge of v.
 */
struct VertexSplit {
  BidirectedGraph graph;
  std::vector<std::size_t> split_edge;  // vertex of B -> edge of B'
  std::vector<std::size_t> edge_map;    // edge of B -> edge of B'

  std::size_t plus_copy(std::size_t v) const { return 2 * v; }
  std::size_t minus_copy(std::size_t v) const { return 2 * v + 1; }
  std::size_t original_vertex(std::size_t split_vertex) const { return split_vertex / 2; }
  bool is_split_edge(std::size_t e) const { return e >= edge_map.size(); }
  /// Only meaningful when is_split_edge(e).
  std::size_t split_vertex_of(std::size_t e) const { return e - edge_map.size(); }
};

inline VertexSplit vertex_split(const BidirectedGraph& b) {
  VertexSplit out;
  auto& g = out.graph;
  for (std::size_t v = 0; v < b.num_vertices(); ++v) {
    // Reserve all names first so the +/- suffixes cannot collide with originals.
    g.add_vertex(g.fresh_vertex_name(b.vertex_name(v) + "+"));
    g.add_vertex(g.fresh_vertex_name(b.vertex_name(v) + "-"));
  }
  auto copy_for = [](std::size_t v, Sign s) { return s == Sign::plus ? 2 * v : 2 * v + 1; };
  for (std::size_t e = 0; e < b.num_edges(); ++e) {
    const auto [u, v] = b.ends(e);
    const auto s = b.signs(e);
    out.edge_map.push_back(g.add_edge(copy_for(u, s[0]), copy_for(v, s[1]), s[0], s[1], b.edge_name(e)));
  }
  for (std::size_t v = 0; v < b.num_vertices(); ++v) {
    out.split_edge.push_back(g.add_edge(2 * v, 2 * v + 1, Sign::minus, Sign::plus,
                                        g.fresh_edge_name("split(" + b.vertex_name(v) + ")")));
  }
  return out;
}

/**
 * Graph with every edge of F replaced by a path of length two through a new
 * vertex. New vertices come after the old ones; edges keep their relative
 * order, a subdivided edge contributing its two halves in place.
 */
template <typename G>
struct Subdivision {
  G graph;
  std::vector<std::size_t> subdivision_vertices;
  std::vector<std::size_t> subdivided_edge;  // parallel to subdivision_vertices: original edge
  /// For each original edge: its image(s) in the new graph (1 or 2 edges).
  std::vector<std::vector<std::size_t>> edge_images;
  std::vector<std::size_t> edge_origin;  // new edge -> original edge
};

template <AnyGraph G>
Subdivision<G> subdivide_edges(const G& g, const std::vector<std::size_t>& f) {
  std::vector<bool> in_f(g.num_edges(), false);
  for (auto e : f) {
    if (e >= g.num_edges()) throw GraphError("subdivide_edges: edge out of range");
    in_f[e] = true;
  }
  Subdivision<G> out;
  auto& h = out.graph;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) h.add_vertex(g.vertex_name(v));
  std::vector<std::size_t> mid(g.num_edges(), 0);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (!in_f[e]) continue;
    // Reserve names against the original vertex names first.
    mid[e] = h.add_vertex(h.fresh_vertex_name("sub(" + g.edge_name(e) + ")"));
    out.subdivision_vertices.push_back(mid[e]);
    out.subdivided_edge.push_back(e);
  }
  auto half_name = [&](std::size_t e, int part) {
    std::string base = g.edge_name(e) + "/" + std::to_string(part);
    while (g.find_edge(base) || h.find_edge(base)) base += '\'';
    return base;
  };
  out.edge_images.resize(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.ends(e);
    std::vector<std::size_t> img;
    if constexpr (G::kind == GraphKind::bidirected) {
      const auto s = g.signs(e);
      if (!in_f[e]) {
        img.push_back(h.add_edge(u, v, s[0], s[1], g.edge_name(e)));
      } else {
        img.push_back(h.add_edge(u, mid[e], s[0], Sign::plus, half_name(e, 1)));
        img.push_back(h.add_edge(mid[e], v, Sign::minus, s[1], half_name(e, 2)));
      }
    } else {
      if (!in_f[e]) {
        img.push_back(h.add_edge(u, v, g.edge_name(e)));
      } else {
        img.push_back(h.add_edge(u, mid[e], half_name(e, 1)));
        img.push_back(h.add_edge(mid[e], v, half_name(e, 2)));
      }
    }
    out.edge_origin.insert(out.edge_origin.end(), img.size(), e);
    out.edge_images[e] = std::move(img);
  }
  return out;
}

/// Checks the SignedCycle invariants against g.
template <AnyGraph G>
bool is_cycle(const G& g, const SignedCycle& c) {
  const std::size_t k = c.edges.size();
  if (k < 2 || c.vertices.size() != k) return false;
  std::vector<std::size_t> vs = c.vertices, es = c.edges;
  std::sort(vs.begin(), vs.end());
  std::sort(es.begin(), es.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) return false;
  if (std::adjacent_find(es.begin(), es.end()) != es.end()) return false;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t e = c.edges[i], a = c.vertices[i], b = c.vertices[(i + 1) % k];
    if (e >= g.num_edges() || a >= g.num_vertices() || b >= g.num_vertices()) return false;
    const auto en = g.ends(e);
    if constexpr (G::kind == GraphKind::directed) {
      if (en.first != a || en.second != b) return false;
    } else {
      if (!((en.first == a && en.second == b) || (en.first == b && en.second == a))) return false;
    }
    if constexpr (G::kind == GraphKind::bidirected) {
      const std::size_t prev = c.edges[(i + k - 1) % k];
      if (g.sign(a, prev) == g.sign(a, e)) return false;
    }
  }
  return true;
}

/**
 * Rotates (and, when `reflect`, possibly reverses) a cycle into canonical
 * form: smallest vertex first, then the direction with the smaller second
 * vertex, or for 2-cycles the smaller first edge.
 */
inline SignedCycle canonicalize(const SignedCycle& c, bool reflect) {
  const std::size_t k = c.edges.size();
  if (k == 0) return c;
  const std::size_t start = static_cast<std::size_t>(std::min_element(c.vertices.begin(), c.vertices.end()) - c.vertices.begin());
  SignedCycle fwd;
  for (std::size_t i = 0; i < k; ++i) {
    fwd.vertices.push_back(c.vertices[(start + i) % k]);
    fwd.edges.push_back(c.edges[(start + i) % k]);
  }
  if (!reflect) return fwd;
  SignedCycle rev;
  rev.vertices.push_back(fwd.vertices[0]);
  for (std::size_t i = k - 1; i >= 1; --i) rev.vertices.push_back(fwd.vertices[i]);
  for (std::size_t i = k; i-- > 0;) rev.edges.push_back(fwd.edges[i]);
  const bool keep = k >= 3 ? fwd.vertices[1] < rev.vertices[1] : fwd.edges[0] < rev.edges[0];
  return keep ? fwd : rev;
}

}  // namespace cycdual
