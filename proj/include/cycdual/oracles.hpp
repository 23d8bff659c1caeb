#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "cycdual/certificates.hpp"
#include "cycdual/cycles.hpp"
#include "cycdual/graph.hpp"
#include "cycdual/random.hpp"

namespace cycdual {

namespace detail {

inline const std::vector<Bits>& sets_of(const CycleFamily& fam, ElementKind k) {
  return k == ElementKind::vertex ? fam.vertex_sets : fam.edge_sets;
}

inline Bits target_bits(const CycleFamily& fam, const Target& t) {
  return to_bits(t.elements, t.kind == ElementKind::vertex ? fam.num_vertices : fam.num_edges);
}

/// Indices of cycles meeting the target.
inline std::vector<std::size_t> target_cycles(const CycleFamily& fam, const Target& t) {
  const Bits tb = target_bits(fam, t);
  const auto& sets = sets_of(fam, t.kind);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fam.size(); ++i)
    if (sets[i].intersects(tb)) out.push_back(i);
  return out;
}

}  // namespace detail

/**
 * Maximum of |target ∩ V(C)| (or E(C)) over families C of pairwise
 * vertex- or edge-disjoint cycles, by branch and bound over the cycles that
 * meet the target. Ties go to the family found first in canonical order.
 */
inline PackingCertificate max_packing(const CycleFamily& fam, const Target& target, ElementKind disjointness,
                                      const EnumerationBudget& budget = {}) {
  const Bits tb = detail::target_bits(fam, target);
  const auto& score_sets = detail::sets_of(fam, target.kind);
  const auto& block_sets = detail::sets_of(fam, disjointness);
  std::vector<std::size_t> cand;
  std::vector<std::size_t> weight;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const std::size_t w = (score_sets[i] & tb).count();
    if (w == 0) continue;
    cand.push_back(i);
    weight.push_back(w);
  }
  std::vector<std::size_t> suffix(cand.size() + 1, 0);
  for (std::size_t i = cand.size(); i-- > 0;) suffix[i] = suffix[i + 1] + weight[i];

  PackingCertificate best;
  best.disjointness = disjointness;
  std::vector<std::size_t> chosen, best_chosen;
  Bits blocked(disjointness == ElementKind::vertex ? fam.num_vertices : fam.num_edges);
  Bits covered(target.kind == ElementKind::vertex ? fam.num_vertices : fam.num_edges);
  std::size_t nodes = 0;
  auto search = [&](auto&& self, std::size_t i, std::size_t score) -> void {
    if (++nodes > budget.max_subsets) throw BudgetExceeded("subsets (max packing)");
    if (score > best.score) {
      best.score = score;
      best_chosen = chosen;
    }
    if (i == cand.size()) return;
    if (score + std::min(suffix[i], (tb - covered).count()) <= best.score) return;
    // Tighter: what the still-compatible candidates could add at most.
    Bits reach(covered.size());
    for (std::size_t j = i; j < cand.size(); ++j)
      if (!block_sets[cand[j]].intersects(blocked)) reach |= score_sets[cand[j]];
    if (score + (reach & tb & ~covered).count() <= best.score) return;
    const std::size_t c = cand[i];
    if (!block_sets[c].intersects(blocked)) {
      blocked |= block_sets[c];
      const Bits before = covered;
      // Edge-disjoint cycles may share target vertices; count each once.
      const std::size_t gain = (score_sets[c] & tb & ~covered).count();
      covered |= score_sets[c] & tb;
      chosen.push_back(c);
      self(self, i + 1, score + gain);
      chosen.pop_back();
      covered = before;
      blocked -= block_sets[c];
    }
    self(self, i + 1, score);
  };
  search(search, 0, 0);
  for (auto c : best_chosen) best.cycles.push_back(fam.cycles[c]);
  return best;
}

/// Whether every target cycle meets `set` (vertex or edge indices per `kind`).
inline bool verify_hitting(const CycleFamily& fam, const Target& target, ElementKind kind,
                           const std::vector<std::size_t>& set) {
  const Bits hb = to_bits(set, kind == ElementKind::vertex ? fam.num_vertices : fam.num_edges);
  const auto& sets = detail::sets_of(fam, kind);
  for (auto i : detail::target_cycles(fam, target))
    if (!sets[i].intersects(hb)) return false;
  return true;
}

/**
 * Smallest vertex (or edge) set meeting every target cycle. Iterative
 * deepening on the size bound: at each node the unhit cycle with the fewest
 * admissible elements is chosen and the search branches on which of them
 * joins the set (earlier siblings are excluded in later branches). A
 * disjoint-cycle lower bound prunes. The result is the first set of minimum
 * size in branching order, which is deterministic.
 */
inline HittingCertificate min_hitting(const CycleFamily& fam, const Target& target, ElementKind kind,
                                      const EnumerationBudget& budget = {}) {
  HittingCertificate out;
  out.kind = kind;
  out.status = Verification::verified;
  const auto tc = detail::target_cycles(fam, target);
  if (tc.empty()) return out;
  const auto& sets = detail::sets_of(fam, kind);
  const std::size_t universe = kind == ElementKind::vertex ? fam.num_vertices : fam.num_edges;
  std::vector<Bits> cyc;
  for (auto i : tc) cyc.push_back(sets[i]);
  Bits chosen(universe), banned(universe);
  std::size_t nodes = 0;
  // Greedy count of pairwise disjoint unhit cycles: a lower bound on what is still needed.
  auto lower_bound = [&]() {
    Bits used(universe);
    std::size_t lb = 0;
    for (const auto& c : cyc)
      if (!c.intersects(chosen) && !c.intersects(used)) {
        used |= c;
        ++lb;
      }
    return lb;
  };
  auto search = [&](auto&& self, std::size_t left) -> bool {
    if (++nodes > budget.max_subsets) throw BudgetExceeded("subsets (min hitting)");
    std::size_t pick = cyc.size(), fewest = universe + 1;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (cyc[i].intersects(chosen)) continue;
      const std::size_t options = (cyc[i] - banned).count();
      if (options < fewest) {
        fewest = options;
        pick = i;
      }
    }
    if (pick == cyc.size()) return true;
    if (left == 0 || fewest == 0 || lower_bound() > left) return false;
    const Bits options = cyc[pick] - banned;
    std::vector<std::size_t> tried;
    bool found = false;
    for (auto e = options.find_first(); e != Bits::npos && !found; e = options.find_next(e)) {
      chosen.set(e);
      found = self(self, left - 1);
      if (!found) {
        chosen.reset(e);
        banned.set(e);
        tried.push_back(e);
      }
    }
    for (auto e : tried) banned.reset(e);
    return found;
  };
  for (std::size_t k = 1;; ++k) {
    if (search(search, k)) break;
  }
  out.elements = to_indices(chosen);
  return out;
}

/// Graph-level conveniences: enumerate, then run the family-level oracle.
template <AnyGraph G>
PackingCertificate max_packing(const G& g, const Target& target, ElementKind disjointness,
                               const EnumerationBudget& budget = {}) {
  return max_packing(cycle_family(g, budget), target, disjointness, budget);
}

template <AnyGraph G>
HittingCertificate min_hitting(const G& g, const Target& target, ElementKind kind,
                               const EnumerationBudget& budget = {}) {
  return min_hitting(cycle_family(g, budget), target, kind, budget);
}

template <AnyGraph G>
bool verify_hitting(const G& g, const std::vector<std::size_t>& set, const Target& target, ElementKind kind,
                    const EnumerationBudget& budget = {}) {
  return verify_hitting(cycle_family(g, budget), target, kind, set);
}

struct CounterexampleProperties {
  /// Every edge-disjoint family uses at most one edge of F.
  bool at_most_one = false;
  /// No edge set of size <= k meets all F-cycles.
  bool no_small_hitting_set = false;
};

/**
 * Both properties of the bidirected edge-version counterexample, checked
 * exhaustively: the first over all edge-disjoint cycle families, the second
 * over all edge sets X with |X| <= k (B - X keeps an F-cycle iff X misses one).
 */
inline CounterexampleProperties check_counterexample_properties(const BidirectedGraph& b,
                                                                const std::vector<std::size_t>& f, std::size_t k,
                                                                const EnumerationBudget& budget = {}) {
  const auto fam = cycle_family(b, budget);
  const Target t{ElementKind::edge, f};
  CounterexampleProperties p;
  p.at_most_one = max_packing(fam, t, ElementKind::edge, budget).score <= 1;
  if (detail::target_cycles(fam, t).empty()) {
    p.no_small_hitting_set = false;
    return p;
  }
  // Increasing-size search: all sets of size <= k are tried before any larger one.
  p.no_small_hitting_set = min_hitting(fam, t, ElementKind::edge, budget).elements.size() > k;
  return p;
}

/// The max-packing versus min-hitting comparison for one (graph, S) pair.
struct VertexQuestionInstance {
  UndirectedGraph graph;
  std::vector<std::size_t> s;
  std::size_t max_packing = 0;
  std::size_t min_hitting = 0;
};

struct VertexQuestionReport {
  std::size_t n_max = 0;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  std::size_t graphs_checked = 0;
  std::size_t instances_checked = 0;
  std::size_t budget_skipped = 0;
  std::optional<VertexQuestionInstance> counterexample;
};

namespace detail {

/// Checks every S for one graph; returns a violation of max >= min if any.
inline std::optional<VertexQuestionInstance> check_all_targets(const UndirectedGraph& g, VertexQuestionReport& rep,
                                                               const EnumerationBudget& budget) {
  const auto fam = cycle_family(g, budget);
  const std::size_t n = g.num_vertices();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    Target t{ElementKind::vertex, {}};
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1) t.elements.push_back(v);
    ++rep.instances_checked;
    const auto pack = max_packing(fam, t, ElementKind::vertex, budget);
    const auto hit = min_hitting(fam, t, ElementKind::vertex, budget);
    if (pack.score < hit.elements.size()) return VertexQuestionInstance{g, t.elements, pack.score, hit.elements.size()};
  }
  return std::nullopt;
}

/// Independent re-check of a reported violation: plain recursion over
/// vertex-disjoint families and over all vertex subsets, no bounding.
inline bool recheck_violation(const VertexQuestionInstance& inst) {
  const std::size_t n = inst.graph.num_vertices();
  const auto fam = make_family(n, inst.graph.num_edges(), enumerate_cycles(inst.graph));
  const Bits s = to_bits(inst.s, n);
  std::size_t best = 0;
  Bits used(n);
  auto families = [&](auto&& self, std::size_t i) -> void {
    if (i == fam.size()) {
      best = std::max(best, (used & s).count());
      return;
    }
    self(self, i + 1);
    if (!fam.vertex_sets[i].intersects(used)) {
      used |= fam.vertex_sets[i];
      self(self, i + 1);
      used -= fam.vertex_sets[i];
    }
  };
  families(families, 0);
  std::size_t min_hit = n;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    bool hits = true;
    for (std::size_t i = 0; i < fam.size() && hits; ++i) {
      if (!fam.vertex_sets[i].intersects(s)) continue;
      bool met = false;
      for (auto v : fam.cycles[i].vertices) met = met || (x >> v & 1);
      hits = met;
    }
    if (hits) min_hit = std::min<std::size_t>(min_hit, static_cast<std::size_t>(std::popcount(x)));
  }
  return best < min_hit;
}

}  // namespace detail

/**
 * Falsification search for the undirected vertex version: compares the
 * vertex-disjoint S-packing optimum with the minimum S-cycle hitting set.
 * trials == 0 runs exhaustively over all labelled simple graphs on
 * 1..n_max vertices; otherwise `trials` random graphs are drawn from `seed`.
 * Any reported violation is re-verified by plain enumeration first.
 */
inline VertexQuestionReport search_vertex_question_counterexample(std::size_t n_max, std::uint64_t seed,
                                                                  std::size_t trials,
                                                                  const EnumerationBudget& budget = {}) {
  VertexQuestionReport rep;
  rep.n_max = n_max;
  rep.seed = seed;
  rep.exhaustive = trials == 0;
  auto consider = [&](const UndirectedGraph& g) -> bool {
    ++rep.graphs_checked;
    try {
      if (auto bad = detail::check_all_targets(g, rep, budget)) {
        if (detail::recheck_violation(*bad)) {
          rep.counterexample = std::move(bad);
          return true;
        }
      }
    } catch (const BudgetExceeded&) {
      ++rep.budget_skipped;
    }
    return false;
  };
  if (rep.exhaustive) {
    for (std::size_t n = 1; n <= n_max; ++n) {
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
        UndirectedGraph g;
        for (std::size_t v = 0; v < n; ++v) g.add_vertex();
        for (std::size_t i = 0; i < pairs.size(); ++i)
          if (mask >> i & 1) g.add_edge(pairs[i].first, pairs[i].second);
        if (consider(g)) return rep;
      }
    }
    return rep;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = 1 + uniform_below(rng, n_max);
    UndirectedGraph g;
    for (std::size_t v = 0; v < n; ++v) g.add_vertex();
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (uniform_below(rng, 2) == 1) g.add_edge(u, v);
    if (consider(g)) return rep;
  }
  return rep;
}

/// A bidirected graph with a 0/1 vector in the null space of its incidence
/// matrix whose support is not a union of edge-disjoint cycles.
struct NullspaceFixture {
  BidirectedGraph graph;
  std::vector<std::size_t> support;
  std::size_t graphs_checked = 0;
};

namespace detail {

/// 0/1 null-space vectors (as supports) of the incidence matrix, m <= 20.
inline std::vector<Bits> nullspace_01_vectors(const BidirectedGraph& b) {
  const std::size_t m = b.num_edges(), n = b.num_vertices();
  if (m > 20) throw BudgetExceeded("subsets (null-space vectors need m <= 20)");
  std::vector<Bits> out;
  std::vector<int> balance(n);
  for (std::uint64_t x = 1; x < (std::uint64_t{1} << m); ++x) {
    std::fill(balance.begin(), balance.end(), 0);
    for (std::size_t e = 0; e < m; ++e) {
      if (!(x >> e & 1)) continue;
      balance[b.ends(e).first] += sign_value(b.signs(e)[0]);
      balance[b.ends(e).second] += sign_value(b.signs(e)[1]);
    }
    if (std::any_of(balance.begin(), balance.end(), [](int v) { return v != 0; })) continue;
    Bits s(m);
    for (std::size_t e = 0; e < m; ++e) s[e] = (x >> e & 1) != 0;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

/// Null-space 0/1 vectors of b whose support does not split into cycles.
inline std::vector<Bits> nonpeelable_nullspace_vectors(const BidirectedGraph& b, const EnumerationBudget& budget = {}) {
  std::vector<Bits> out;
  for (auto& s : detail::nullspace_01_vectors(b))
    if (!decompose_into_cycles(b, s, budget)) out.push_back(std::move(s));
  return out;
}

/**
 * Random search for a bidirected graph on 2..n_max vertices carrying a 0/1
 * null-space vector that is not a union of cycles. The first hit in draw
 * order is returned, so a seed pins the fixture.
 */
inline std::optional<NullspaceFixture> search_nullspace_noncycle_fixture(std::size_t n_max, std::uint64_t seed,
                                                                         std::size_t trials,
                                                                         const EnumerationBudget& budget = {}) {
  if (n_max < 2) return std::nullopt;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = 2 + uniform_below(rng, n_max - 1);
    const std::size_t m = 2 + uniform_below(rng, std::min<std::size_t>(2 * n, 11));
    auto b = random_bidirected_graph(n, m, rng, true);
    auto bad = nonpeelable_nullspace_vectors(b, budget);
    if (!bad.empty()) return NullspaceFixture{std::move(b), to_indices(bad.front()), t + 1};
  }
  return std::nullopt;
}

}  // namespace cycdual
