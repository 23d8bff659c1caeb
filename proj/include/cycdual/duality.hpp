#pragma once

#include <algorithm>
#include <iterator>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cycdual/certificates.hpp"
#include "cycdual/cycles.hpp"
#include "cycdual/errors.hpp"
#include "cycdual/gf2.hpp"
#include "cycdual/graph.hpp"
#include "cycdual/lp.hpp"
#include "cycdual/oracles.hpp"

namespace cycdual {

enum class VerifyLevel { off, oracle, exhaustive };

constexpr std::string_view verify_level_name(VerifyLevel v) {
  switch (v) {
    case VerifyLevel::off: return "off";
    case VerifyLevel::oracle: return "oracle";
    case VerifyLevel::exhaustive: return "exhaustive";
  }
  return "";
}

/**
 * `oracle` checks the hitting set against the enumerated target cycles;
 * `exhaustive` additionally records the brute-force optimum of both sides.
 */
struct DualityOptions {
  EnumerationBudget budget;
  VerifyLevel verify = VerifyLevel::oracle;
};

namespace detail {

inline std::vector<std::size_t> sorted_unique(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline void require_integral(const std::vector<Rational>& v, std::string_view what) {
  if (!all_integral(v)) throw IntegralityViolation(std::string(what) + " is not integral");
}

/// An LP of the form max w.x, x <= 1, (rows of `lower`) x <= 0, x >= 0 solved
/// both ways. With `strict` every integrality claim is enforced; otherwise it
/// is recorded and `x_support` / `y1` are left empty when the vector is
/// fractional.
struct PackingLP {
  LinearProgram lp;
  LPSolution primal;
  std::vector<Rational> dual;  // basic solution of the dual polyhedron
  std::optional<Bits> x_support;
  std::optional<std::vector<Rational>> y1;  // the I_m block of an integral dual
};

inline PackingLP solve_packing_lp(const RationalMatrix& lower, const std::vector<Rational>& weights, bool strict) {
  const std::size_t m = weights.size();
  PackingLP out;
  out.lp.a = RationalMatrix::identity(m).vstack(lower);
  out.lp.b.assign(m, Rational(1));
  out.lp.b.resize(m + lower.rows(), Rational(0));
  out.lp.c = weights;
  out.primal = solve(out.lp);
  if (out.primal.status != LPStatus::optimal) throw LPError(out.primal.status);
  out.dual = solve_dual_basic(out.lp, out.primal);
  // Both dual routes must certify the same primal.
  for (const auto* y : {&out.dual, &out.primal.dual}) {
    const std::string why = check_optimal_pair(out.lp, out.primal.primal, *y);
    if (!why.empty()) throw std::logic_error("LP certificate check failed: " + why);
  }
  if (strict) {
    require_integral(out.primal.primal, "primal solution");
    require_integral(out.primal.dual, "tableau dual solution");
    require_integral(out.dual, "basic dual solution");
  }
  if (all_integral(out.primal.primal)) {
    Bits x(m);
    for (std::size_t j = 0; j < m; ++j) {
      if (out.primal.primal[j] > 1) throw std::logic_error("primal exceeds its upper bound");
      x[j] = out.primal.primal[j] == 1;
    }
    out.x_support = std::move(x);
  }
  for (const auto* y : {&out.dual, &out.primal.dual})
    if (all_integral(*y)) {
      out.y1.emplace(y->begin(), y->begin() + static_cast<std::ptrdiff_t>(m));
      break;
    }
  return out;
}

inline LPTrace trace_of(const PackingLP& p) {
  LPTrace t{p.primal.objective, p.primal.primal, p.dual, p.primal.dual};
  t.primal_integral = all_integral(t.primal);
  t.dual_integral = all_integral(t.dual);
  t.tableau_dual_integral = all_integral(t.tableau_dual);
  return t;
}

/// The I_m block of the basic dual; feasible whether or not it is integral.
inline std::vector<Rational> basic_y1(const PackingLP& p) {
  return {p.dual.begin(), p.dual.begin() + static_cast<std::ptrdiff_t>(p.lp.c.size())};
}

inline std::vector<Rational> indicator(std::size_t n, const std::vector<std::size_t>& on) {
  std::vector<Rational> w(n, Rational(0));
  for (auto i : on) w.at(i) = 1;
  return w;
}

/// B' cycle -> B cycle: drop split edges, keep the original edges in order.
inline SignedCycle pull_back_cycle(const VertexSplit& s, const SignedCycle& c) {
  SignedCycle out;
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    if (s.is_split_edge(c.edges[i])) continue;
    out.vertices.push_back(s.original_vertex(c.vertices[i]));
    out.edges.push_back(c.edges[i]);  // B's edge e is B' edge e
  }
  return canonicalize(out, true);
}

/// sum of y1 over the B' image of a B cycle: its edges and its vertices' split edges.
inline Rational split_image_weight(const VertexSplit& s, const SignedCycle& c, const std::vector<Rational>& y) {
  Rational total = 0;
  for (auto e : c.edges) total += y[s.edge_map[e]];
  for (auto v : c.vertices) total += y[s.split_edge[v]];
  return total;
}

/**
 * The vertex-split LP: maximize weights.x over {x : 0 <= x <= 1, Mx = 0} on
 * B', written as (1/2)M x <= 0 and -(1/2)M x <= 0. Weights live on the edges
 * of B'. Cycles and the dual vertex set are filled in only when the
 * corresponding LP vector is integral.
 */
struct SplitPacking {
  VertexSplit split;
  PackingLP lp;
  std::optional<std::vector<SignedCycle>> cycles;  // in B, canonical
  std::optional<std::vector<std::size_t>> x_vertices;  // support of y1 mapped into V(B)
};

inline SplitPacking split_packing(const BidirectedGraph& b, const std::vector<Rational>& weights,
                                  const EnumerationBudget& budget) {
  SplitPacking out{vertex_split(b), {}, {}, {}};
  const auto& bp = out.split.graph;
  if (weights.size() != bp.num_edges()) throw std::invalid_argument("split_packing: weight vector size");
  const auto half = incidence_matrix_bidirected(bp).cast<Rational>().scaled(make_rational(1, 2));
  out.lp = solve_packing_lp(half.vstack(half.scaled(Rational(-1))), weights, false);
  if (out.lp.x_support) {
    const auto parts = decompose_into_cycles(bp, *out.lp.x_support, budget);
    if (!parts) throw IntegralityViolation("support of the primal does not split into cycles");
    std::vector<SignedCycle> cycles;
    for (const auto& c : *parts) cycles.push_back(pull_back_cycle(out.split, c));
    std::sort(cycles.begin(), cycles.end());
    out.cycles = std::move(cycles);
  }
  if (out.lp.y1) {
    std::vector<std::size_t> xv;
    for (std::size_t e = 0; e < out.lp.y1->size(); ++e) {
      if ((*out.lp.y1)[e] <= 0) continue;
      if (out.split.is_split_edge(e)) {
        xv.push_back(out.split.split_vertex_of(e));
      } else {
        // An original edge uv: every cycle through it passes u and v; take the smaller.
        const auto [u, v] = b.ends(e);
        xv.push_back(std::min(u, v));
      }
    }
    out.x_vertices = sorted_unique(std::move(xv));
  }
  return out;
}

/// Rewrites a cycle found in directed_to_bidirected(d) so it follows d's orientation.
inline SignedCycle orient_directed(const DirectedGraph& d, const SignedCycle& c) {
  if (d.tail(c.edges.front()) == c.vertices.front()) return canonicalize(c, false);
  SignedCycle r;
  const std::size_t k = c.edges.size();
  r.vertices.push_back(c.vertices[0]);
  for (std::size_t i = k - 1; i >= 1; --i) r.vertices.push_back(c.vertices[i]);
  for (std::size_t i = k; i-- > 0;) r.edges.push_back(c.edges[i]);
  return canonicalize(r, false);
}

template <AnyGraph G>
std::size_t score_of(const G& g, const std::vector<SignedCycle>& cycles, const Target& t) {
  const std::size_t n = t.kind == ElementKind::vertex ? g.num_vertices() : g.num_edges();
  const Bits tb = to_bits(t.elements, n);
  Bits covered(n);
  for (const auto& c : cycles)
    for (auto x : t.kind == ElementKind::vertex ? c.vertices : c.edges) covered.set(x);
  return (covered & tb).count();
}

template <AnyGraph G>
bool pairwise_disjoint(const G& g, const std::vector<SignedCycle>& cycles, ElementKind kind) {
  Bits used(kind == ElementKind::vertex ? g.num_vertices() : g.num_edges());
  for (const auto& c : cycles)
    for (auto x : kind == ElementKind::vertex ? c.vertices : c.edges) {
      if (used[x]) return false;
      used.set(x);
    }
  return true;
}

/**
 * Oracle-side verification shared by the LP engines. `dual_check` returns
 * whether c.y1 >= c.f holds for one target cycle. Budget overruns downgrade
 * the verdict to `unverified`; they never fail the run.
 */
template <AnyGraph G, typename DualCheck>
void verify_report(const G& g, DualityReport& rep, const DualityOptions& opt, DualCheck&& dual_check) {
  rep.hitting.status = Verification::skipped;
  if (opt.verify == VerifyLevel::off) return;
  CycleFamily fam;
  try {
    fam = cycle_family(g, opt.budget);
  } catch (const BudgetExceeded&) {
    rep.hitting.status = Verification::unverified;
    return;
  }
  const bool hits = verify_hitting(fam, rep.target, rep.hitting.kind, rep.hitting.elements);
  rep.hitting.status = hits ? Verification::verified : Verification::failed;
  if (hits && rep.lp) {
    // The support of a dual vertex need not be minimal; drop elements in
    // canonical order while the rest still hits every target cycle.
    rep.lp->dual_support = rep.hitting.elements;
    std::vector<std::size_t> keep = rep.hitting.elements;
    for (auto x : rep.hitting.elements) {
      std::vector<std::size_t> trial;
      std::copy_if(keep.begin(), keep.end(), std::back_inserter(trial), [&](std::size_t y) { return y != x; });
      if (verify_hitting(fam, rep.target, rep.hitting.kind, trial)) keep = std::move(trial);
    }
    rep.hitting.elements = std::move(keep);
  }
  bool dual_ok = true;
  for (auto i : detail::target_cycles(fam, rep.target)) dual_ok = dual_ok && dual_check(fam.cycles[i]);
  rep.dual_cycle_inequalities = dual_ok;
  if (opt.verify != VerifyLevel::exhaustive) return;
  try {
    rep.oracle_max_packing = max_packing(fam, rep.target, rep.packing.disjointness, opt.budget).score;
    rep.oracle_min_hitting = min_hitting(fam, rep.target, rep.hitting.kind, opt.budget).elements.size();
  } catch (const BudgetExceeded&) {
    rep.oracle_max_packing.reset();
    rep.oracle_min_hitting.reset();
  }
}

inline Target make_target(ElementKind kind, const std::vector<std::size_t>& elements, std::size_t universe) {
  Target t{kind, sorted_unique(elements)};
  for (auto x : t.elements)
    if (x >= universe) throw GraphError(std::string("target ") + std::string(element_name(kind)) + " out of range");
  return t;
}

/**
 * Shared body of the two vertex engines. `g` is the graph the caller asked
 * about, `b` its bidirected form, and `orient` turns a cycle of `b` into one
 * of `g`. Where the LP vertex is fractional the matching certificate comes
 * from the oracles instead, and the trace says so.
 */
template <AnyGraph G, typename Orient>
DualityReport split_vertex_duality(const G& g, const BidirectedGraph& b, const std::vector<std::size_t>& s,
                                   const DualityOptions& opt, Orient&& orient) {
  DualityReport rep;
  rep.graph_kind = G::kind;
  rep.engine = "lp-split";
  rep.target = make_target(ElementKind::vertex, s, b.num_vertices());
  rep.packing.disjointness = ElementKind::vertex;
  rep.hitting.kind = ElementKind::vertex;
  std::vector<Rational> weights(b.num_edges() + b.num_vertices(), Rational(0));
  for (auto v : rep.target.elements) weights[b.num_edges() + v] = 1;
  const auto sp = split_packing(b, weights, opt.budget);
  rep.lp = trace_of(sp.lp);
  if (sp.cycles) {
    for (const auto& c : *sp.cycles) rep.packing.cycles.push_back(orient(c));
    std::sort(rep.packing.cycles.begin(), rep.packing.cycles.end());
    for (const auto& c : rep.packing.cycles)
      if (!is_cycle(g, c)) throw std::logic_error("pulled-back cycle is not a cycle");
    if (!pairwise_disjoint(g, rep.packing.cycles, ElementKind::vertex))
      throw std::logic_error("pulled-back cycles share a vertex");
    rep.packing.score = score_of(g, rep.packing.cycles, rep.target);
    if (Rational(static_cast<long>(rep.packing.score)) != sp.lp.primal.objective)
      throw std::logic_error("packing score differs from the LP optimum");
  } else {
    rep.lp->packing_from_lp = false;
    rep.packing = max_packing(g, rep.target, ElementKind::vertex, opt.budget);
  }
  // |Y| <= 1.y1 = LP optimum, which is the packing score only when x is integral.
  if (sp.x_vertices && sp.cycles) {
    rep.hitting.elements = *sp.x_vertices;
  } else {
    rep.lp->hitting_from_lp = false;
    rep.hitting.elements = min_hitting(g, rep.target, ElementKind::vertex, opt.budget).elements;
  }
  const auto y1 = basic_y1(sp.lp);
  verify_report(g, rep, opt, [&](const SignedCycle& c) {
    return split_image_weight(sp.split, c, y1) >= split_image_weight(sp.split, c, weights);
  });
  rep.inequality_verified = rep.packing.score >= rep.hitting.elements.size();
  return rep;
}

}  // namespace detail

/**
 * Edge version for undirected graphs over GF(2). With M_F the F-edge by
 * F-cycle incidence matrix of rank r, an r x r nonsingular submatrix N is
 * chosen from the rank bases and N z = 1 is solved; the symmetric difference
 * of the chosen cycles contains every row-basis F-edge and has even degrees,
 * so it splits into edge-disjoint cycles meeting F at least r times. The
 * hitting side is the brute-force minimum, always computed here.
 */
inline DualityReport undirected_edge_duality(const UndirectedGraph& g, const std::vector<std::size_t>& f,
                                             const DualityOptions& opt = {}) {
  DualityReport rep;
  rep.graph_kind = GraphKind::undirected;
  rep.engine = "gf2";
  rep.target = detail::make_target(ElementKind::edge, f, g.num_edges());
  rep.packing.disjointness = ElementKind::edge;
  rep.hitting.kind = ElementKind::edge;
  const auto fam = cycle_family(g, opt.budget);
  const auto fc = detail::target_cycles(fam, rep.target);
  GF2Matrix mf(rep.target.elements.size(), fc.size());
  for (std::size_t r = 0; r < rep.target.elements.size(); ++r)
    for (std::size_t c = 0; c < fc.size(); ++c) mf.set(r, c, fam.edge_sets[fc[c]][rep.target.elements[r]]);
  const auto rank = gf2_rank(mf);
  rep.gf2_rank = rank.rank;
  Bits sym(g.num_edges());
  if (rank.rank > 0) {
    const auto n = mf.select_rows(rank.row_basis).select_cols(rank.col_basis);
    Bits ones(rank.rank);
    ones.set();
    const auto z = gf2_solve(n, ones);
    if (!z) throw std::logic_error("rank-basis submatrix is singular");
    for (std::size_t j = 0; j < rank.rank; ++j)
      if ((*z)[j]) sym ^= fam.edge_sets[fc[rank.col_basis[j]]];
  }
  const auto peeled = peel_cycles(g, sym);
  if (!peeled) throw std::logic_error("symmetric difference of cycles has an odd-degree vertex");
  rep.packing.cycles = *peeled;
  rep.packing.score = detail::score_of(g, rep.packing.cycles, rep.target);
  if (rep.packing.score < rank.rank) throw std::logic_error("GF(2) packing scores below the rank");
  auto hit = min_hitting(fam, rep.target, ElementKind::edge, opt.budget);
  rep.hitting.elements = hit.elements;
  rep.hitting.status = verify_hitting(fam, rep.target, ElementKind::edge, hit.elements) ? Verification::verified
                                                                                        : Verification::failed;
  rep.oracle_min_hitting = hit.elements.size();
  if (opt.verify == VerifyLevel::exhaustive) {
    try {
      rep.oracle_max_packing = max_packing(fam, rep.target, ElementKind::edge, opt.budget).score;
    } catch (const BudgetExceeded&) {
    }
  }
  rep.inequality_verified = rep.packing.score >= rep.hitting.elements.size();
  return rep;
}

/**
 * Edge version for digraphs: max f.x subject to x <= 1, Nx <= 0, x >= 0.
 * The matrix [I; N] is totally unimodular, so the basic optimum x is 0/1 and
 * its support is a union of edge-disjoint directed cycles. The hitting set
 * Y is the support of the I-block of a basic optimal dual solution.
 */
inline DualityReport directed_edge_duality(const DirectedGraph& d, const std::vector<std::size_t>& f,
                                           const DualityOptions& opt = {}) {
  DualityReport rep;
  rep.graph_kind = GraphKind::directed;
  rep.engine = "lp";
  rep.target = detail::make_target(ElementKind::edge, f, d.num_edges());
  rep.packing.disjointness = ElementKind::edge;
  rep.hitting.kind = ElementKind::edge;
  const auto weights = detail::indicator(d.num_edges(), rep.target.elements);
  const auto lp = detail::solve_packing_lp(incidence_matrix_directed(d).cast<Rational>(), weights, true);
  rep.lp = detail::trace_of(lp);
  for (const auto& r : incidence_matrix_directed(d).cast<Rational>().multiply(lp.primal.primal))
    if (r != 0) throw IntegralityViolation("primal is not in the null space of the incidence matrix");
  const auto peeled = peel_cycles(d, *lp.x_support);
  if (!peeled) throw IntegralityViolation("support of the primal does not split into directed cycles");
  rep.packing.cycles = *peeled;
  std::sort(rep.packing.cycles.begin(), rep.packing.cycles.end());
  rep.packing.score = detail::score_of(d, rep.packing.cycles, rep.target);
  if (Rational(static_cast<long>(rep.packing.score)) != lp.primal.objective)
    throw std::logic_error("packing score differs from the LP optimum");
  Rational y1_total = 0;
  for (std::size_t e = 0; e < d.num_edges(); ++e) {
    y1_total += (*lp.y1)[e];
    if ((*lp.y1)[e] > 0) rep.hitting.elements.push_back(e);
  }
  if (y1_total != lp.primal.objective || Rational(static_cast<long>(rep.hitting.elements.size())) > y1_total)
    throw std::logic_error("dual hitting set exceeds the LP optimum");
  detail::verify_report(d, rep, opt, [&](const SignedCycle& c) {
    Rational cy = 0, cf = 0;
    for (auto e : c.edges) cy += (*lp.y1)[e], cf += weights[e];
    return cy >= cf;
  });
  rep.inequality_verified = rep.packing.score >= rep.hitting.elements.size();
  return rep;
}

/**
 * Vertex version for bidirected graphs via B -> B'. With F the split edges
 * of S, edge-disjoint F-packings in B' are vertex-disjoint S-packings in B.
 * A dual edge of B' maps to a vertex of B: a split edge to its vertex, an
 * original edge to its smaller endpoint.
 */
inline DualityReport bidirected_vertex_duality(const BidirectedGraph& b, const std::vector<std::size_t>& s,
                                               const DualityOptions& opt = {}) {
  return detail::split_vertex_duality(b, b, s, opt, [](const SignedCycle& c) { return c; });
}

/// Vertex version for digraphs, through directed_to_bidirected.
inline DualityReport directed_vertex_duality(const DirectedGraph& d, const std::vector<std::size_t>& s,
                                             const DualityOptions& opt = {}) {
  // Directed cycles of d and signed cycles of its image share edge and vertex sets.
  return detail::split_vertex_duality(d, directed_to_bidirected(d), s, opt,
                                      [&](const SignedCycle& c) { return detail::orient_directed(d, c); });
}

/**
 * Brute-force comparison for target/graph combinations without a duality
 * theorem: the undirected vertex version (open) and the bidirected edge
 * version (false in general). Both sides are oracle optima; nothing is
 * asserted.
 */
template <AnyGraph G>
DualityReport oracle_comparison(const G& g, ElementKind kind, const std::vector<std::size_t>& elements,
                                const DualityOptions& opt = {}) {
  DualityReport rep;
  rep.graph_kind = G::kind;
  rep.engine = "oracle";
  rep.log_only = true;
  rep.conjectural = G::kind == GraphKind::undirected && kind == ElementKind::vertex;
  rep.target = detail::make_target(kind, elements, kind == ElementKind::vertex ? g.num_vertices() : g.num_edges());
  const auto fam = cycle_family(g, opt.budget);
  rep.packing = max_packing(fam, rep.target, kind, opt.budget);
  rep.hitting = min_hitting(fam, rep.target, kind, opt.budget);
  rep.oracle_max_packing = rep.packing.score;
  rep.oracle_min_hitting = rep.hitting.elements.size();
  rep.inequality_verified = rep.packing.score >= rep.hitting.elements.size();
  return rep;
}

}  // namespace cycdual
