#pragma once

#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cycdual/certificates.hpp"
#include "cycdual/duality.hpp"
#include "cycdual/errors.hpp"
#include "cycdual/graph.hpp"
#include "cycdual/oracles.hpp"
#include "cycdual/widths.hpp"

namespace cycdual {

/// Key order is insertion order, so serialization is reproducible byte for byte.
using Json = nlohmann::ordered_json;

/** Input that is not valid JSON or not a valid graph/decomposition document. */
class ParseError : public GraphError {
 public:
  using GraphError::GraphError;
};

using AnyGraphValue = std::variant<UndirectedGraph, DirectedGraph, BidirectedGraph>;

inline std::string sign_string(Sign s) { return std::string(1, sign_char(s)); }

inline Sign parse_sign(const Json& j) {
  if (j == "+") return Sign::plus;
  if (j == "-") return Sign::minus;
  throw ParseError("sign must be \"+\" or \"-\"");
}

template <AnyGraph G>
Json graph_to_json(const G& g) {
  Json j;
  j["kind"] = std::string(kind_name(G::kind));
  j["vertices"] = Json::array();
  for (std::size_t v = 0; v < g.num_vertices(); ++v) j["vertices"].push_back(g.vertex_name(v));
  j["edges"] = Json::array();
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    Json je;
    je["id"] = g.edge_name(e);
    je["ends"] = {g.vertex_name(g.ends(e).first), g.vertex_name(g.ends(e).second)};
    if constexpr (G::kind == GraphKind::bidirected) je["signs"] = {sign_string(g.signs(e)[0]), sign_string(g.signs(e)[1])};
    j["edges"].push_back(std::move(je));
  }
  return j;
}

inline Json graph_to_json(const AnyGraphValue& g) {
  return std::visit([](const auto& x) { return graph_to_json(x); }, g);
}

/// Two-space indented JSON with a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::string string_of(const Json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

template <AnyGraph G>
G graph_from_json(const Json& j) {
  G g;
  const auto& vs = field(j, "vertices");
  const auto& es = field(j, "edges");
  if (!vs.is_array() || !es.is_array()) throw ParseError("\"vertices\" and \"edges\" must be arrays");
  for (const auto& v : vs) g.add_vertex(string_of(v, "vertex id"));
  for (const auto& e : es) {
    const auto id = string_of(field(e, "id"), "edge id");
    const auto& ends = field(e, "ends");
    if (!ends.is_array() || ends.size() != 2) throw ParseError("edge '" + id + "': \"ends\" must have two entries");
    const auto u = g.vertex(string_of(ends[0], "endpoint")), v = g.vertex(string_of(ends[1], "endpoint"));
    if constexpr (G::kind == GraphKind::bidirected) {
      const auto& signs = field(e, "signs");
      if (!signs.is_array() || signs.size() != 2) throw ParseError("edge '" + id + "': \"signs\" must have two entries");
      g.add_edge(u, v, parse_sign(signs[0]), parse_sign(signs[1]), id);
    } else {
      if (e.contains("signs")) throw ParseError("edge '" + id + "': only bidirected edges carry signs");
      g.add_edge(u, v, id);
    }
  }
  return g;
}

}  // namespace detail

/// Parses the graph format. Every failure, including GraphError from
/// construction (duplicate ids, loops), surfaces as ParseError.
inline AnyGraphValue parse_graph(const std::string& text) {
  const Json j = parse_json(text);
  try {
    const auto kind = detail::string_of(detail::field(j, "kind"), "\"kind\"");
    if (kind == "undirected") return detail::graph_from_json<UndirectedGraph>(j);
    if (kind == "directed") return detail::graph_from_json<DirectedGraph>(j);
    if (kind == "bidirected") return detail::graph_from_json<BidirectedGraph>(j);
    throw ParseError("unknown graph kind '" + kind + "'");
  } catch (const ParseError&) {
    throw;
  } catch (const GraphError& e) {
    throw ParseError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed graph: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string rational_string(Rational q) {
  q.canonicalize();
  return q.get_str();
}

inline Json rationals_json(const std::vector<Rational>& v) {
  Json j = Json::array();
  for (const auto& q : v) j.push_back(rational_string(q));
  return j;
}

template <AnyGraph G>
Json cycle_json(const G& g, const SignedCycle& c) {
  Json j;
  j["vertices"] = Json::array();
  j["edges"] = Json::array();
  for (auto v : c.vertices) j["vertices"].push_back(g.vertex_name(v));
  for (auto e : c.edges) j["edges"].push_back(g.edge_name(e));
  return j;
}

template <AnyGraph G>
Json element_names(const G& g, ElementKind kind, const std::vector<std::size_t>& xs) {
  Json j = Json::array();
  for (auto x : xs) j.push_back(kind == ElementKind::vertex ? g.vertex_name(x) : g.edge_name(x));
  return j;
}

template <AnyGraph G>
Json vertex_names(const G& g, const std::vector<std::size_t>& vs) {
  return element_names(g, ElementKind::vertex, vs);
}

template <AnyGraph G>
Json report_to_json(const G& g, const DualityReport& r) {
  Json j;
  j["graph_kind"] = std::string(kind_name(r.graph_kind));
  j["engine"] = std::string(r.engine);
  j["target"] = {{"kind", std::string(element_name(r.target.kind))},
                 {"elements", element_names(g, r.target.kind, r.target.elements)}};
  Json pack;
  pack["disjointness"] = std::string(element_name(r.packing.disjointness));
  pack["score"] = r.packing.score;
  pack["cycles"] = Json::array();
  for (const auto& c : r.packing.cycles) pack["cycles"].push_back(cycle_json(g, c));
  j["packing"] = std::move(pack);
  j["hitting"] = {{"kind", std::string(element_name(r.hitting.kind))},
                  {"elements", element_names(g, r.hitting.kind, r.hitting.elements)},
                  {"size", r.hitting.elements.size()},
                  {"status", std::string(verification_name(r.hitting.status))}};
  j["inequality_verified"] = r.inequality_verified;
  j["conjectural"] = r.conjectural;
  j["log_only"] = r.log_only;
  j["dual_cycle_inequalities"] = r.dual_cycle_inequalities ? Json(*r.dual_cycle_inequalities) : Json(nullptr);
  if (r.lp) {
    j["lp"] = {{"objective", rational_string(r.lp->objective)},
               {"primal", rationals_json(r.lp->primal)},
               {"dual", rationals_json(r.lp->dual)},
               {"tableau_dual", rationals_json(r.lp->tableau_dual)},
               {"primal_integral", r.lp->primal_integral},
               {"dual_integral", r.lp->dual_integral},
               {"tableau_dual_integral", r.lp->tableau_dual_integral},
               {"packing_from_lp", r.lp->packing_from_lp},
               {"hitting_from_lp", r.lp->hitting_from_lp},
               {"hitting_before_pruning",
                r.lp->dual_support ? element_names(g, r.hitting.kind, *r.lp->dual_support) : Json(nullptr)}};
  } else {
    j["lp"] = nullptr;
  }
  j["gf2_rank"] = r.gf2_rank ? Json(*r.gf2_rank) : Json(nullptr);
  j["oracle_max_packing"] = r.oracle_max_packing ? Json(*r.oracle_max_packing) : Json(nullptr);
  j["oracle_min_hitting"] = r.oracle_min_hitting ? Json(*r.oracle_min_hitting) : Json(nullptr);
  return j;
}

template <AnyGraph G>
Json decomposition_to_json(const G& g, const CycleDecomposition& dec) {
  Json j;
  j["parent"] = dec.parent;
  j["leaf_map"] = Json::object();
  for (std::size_t v = 0; v < dec.leaf_of.size(); ++v) j["leaf_map"][g.vertex_name(v)] = dec.leaf_of[v];
  return j;
}

/// Inverse of decomposition_to_json; validates against g.
template <AnyGraph G>
CycleDecomposition decomposition_from_json(const G& g, const Json& j) {
  CycleDecomposition dec;
  try {
    dec.parent = detail::field(j, "parent").get<std::vector<std::ptrdiff_t>>();
    const auto& lm = detail::field(j, "leaf_map");
    if (!lm.is_object()) throw ParseError("\"leaf_map\" must be an object");
    dec.leaf_of.assign(g.num_vertices(), 0);
    std::vector<bool> seen(g.num_vertices(), false);
    for (const auto& [name, node] : lm.items()) {
      const auto v = g.vertex(name);
      if (seen[v]) throw ParseError("leaf_map lists '" + name + "' twice");
      seen[v] = true;
      dec.leaf_of[v] = node.template get<std::size_t>();
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw ParseError("leaf_map misses a vertex");
    validate_decomposition(dec, g.num_vertices());
  } catch (const ParseError&) {
    throw;
  } catch (const GraphError& e) {
    throw ParseError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed decomposition: ") + e.what());
  }
  return dec;
}

template <AnyGraph G>
Json cut_json(const G& g, const EdgeCut& cut) {
  return {{"side_a", vertex_names(g, cut.side_a)},
          {"side_b", vertex_names(g, cut.side_b)},
          {"cut_edges", element_names(g, ElementKind::edge, cut.cut_edges)}};
}

inline Json porosity_json(const Porosity& p) {
  return {{"value", p.value},
          {"lp_value", rational_string(p.lp_value)},
          {"oracle_value", p.oracle_value ? Json(*p.oracle_value) : Json(nullptr)},
          {"lp_integral", p.lp_integral},
          {"agree", p.agree()},
          {"verified", p.verified}};
}

template <AnyGraph G>
Json transcript_json(const G& g, const std::vector<GameRound>& rounds) {
  Json j = Json::array();
  for (const auto& r : rounds)
    j.push_back({{"round", r.round},
                 {"cops", vertex_names(g, r.cops)},
                 {"robber-component", vertex_names(g, r.robber)},
                 {"strategy-phase", r.phase}});
  return j;
}

template <AnyGraph G>
Json game_json(const G& g, const GameResult& r) {
  return {{"caught", r.caught},
          {"cop_budget", r.cop_budget},
          {"max_cops", r.max_cops},
          {"within_budget", r.within_budget},
          {"rounds", r.rounds},
          {"positions_explored", r.positions_explored},
          {"escape", r.escape ? Json(*r.escape) : Json(nullptr)},
          {"transcript", transcript_json(g, r.transcript)}};
}

inline Json vertex_question_json(const VertexQuestionReport& rep) {
  Json j;
  j["search"] = "vertex-question";
  j["n_max"] = rep.n_max;
  j["exhaustive"] = rep.exhaustive;
  j["seed"] = rep.seed;
  j["graphs_checked"] = rep.graphs_checked;
  j["instances_checked"] = rep.instances_checked;
  j["budget_skipped"] = rep.budget_skipped;
  if (rep.counterexample) {
    const auto& c = *rep.counterexample;
    j["findings"] = {{"graph", graph_to_json(c.graph)},
                     {"s", vertex_names(c.graph, c.s)},
                     {"max_packing", c.max_packing},
                     {"min_hitting", c.min_hitting}};
  } else {
    j["findings"] = "none found";
  }
  return j;
}

/// Same layout as a graph file, plus the search's findings block.
inline Json nullspace_fixture_json(const std::optional<NullspaceFixture>& fx, std::size_t n_max, std::uint64_t seed,
                                   std::size_t trials) {
  Json j = fx ? graph_to_json(fx->graph) : Json::object();
  Json f;
  f["search"] = "nullspace";
  f["n_max"] = n_max;
  f["seed"] = seed;
  f["trials"] = trials;
  if (fx) {
    f["graphs_checked"] = fx->graphs_checked;
    f["support"] = element_names(fx->graph, ElementKind::edge, fx->support);
  } else {
    f["result"] = "none found";
  }
  j["findings"] = std::move(f);
  return j;
}

}  // namespace cycdual
