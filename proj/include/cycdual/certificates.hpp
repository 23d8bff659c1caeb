#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "cycdual/graph.hpp"
#include "cycdual/rational.hpp"

namespace cycdual {

enum class ElementKind { vertex, edge };

constexpr std::string_view element_name(ElementKind k) { return k == ElementKind::vertex ? "vertex" : "edge"; }

/// What the cycles are asked to meet: S (vertices) or F (edges).
struct Target {
  ElementKind kind = ElementKind::vertex;
  std::vector<std::size_t> elements;
};

enum class Verification { verified, unverified, failed, skipped };

constexpr std::string_view verification_name(Verification v) {
  switch (v) {
    case Verification::verified: return "verified";
    case Verification::unverified: return "unverified";
    case Verification::failed: return "failed";
    case Verification::skipped: return "skipped";
  }
  return "";
}

struct PackingCertificate {
  std::vector<SignedCycle> cycles;
  ElementKind disjointness = ElementKind::vertex;
  std::size_t score = 0;
};

struct HittingCertificate {
  ElementKind kind = ElementKind::vertex;
  std::vector<std::size_t> elements;
  /// `verified` once every target cycle was checked to meet `elements`;
  /// `unverified` when the cycle budget ran out first.
  Verification status = Verification::skipped;

  bool hits_all() const { return status == Verification::verified; }
};

/// Values from the LP route, kept so callers can audit integrality.
struct LPTrace {
  Rational objective = 0;
  std::vector<Rational> primal;
  std::vector<Rational> dual;          // basic solution of the dual polyhedron
  std::vector<Rational> tableau_dual;  // read off the primal's final tableau
  bool primal_integral = true;
  bool dual_integral = true;
  bool tableau_dual_integral = true;
  /// Which certificates came from the LP; the rest fell back to the oracles
  /// because the LP returned a fractional vertex.
  bool packing_from_lp = true;
  bool hitting_from_lp = true;
  /// The hitting set as first obtained, before it was pruned to an
  /// inclusion-minimal one (set only when the pruning ran).
  std::optional<std::vector<std::size_t>> dual_support;
};

struct DualityReport {
  GraphKind graph_kind = GraphKind::directed;
  Target target;
  std::string_view engine;
  PackingCertificate packing;
  HittingCertificate hitting;
  /// packing.score >= |hitting.elements|.
  bool inequality_verified = false;
  /// Set for the undirected vertex version, which is only conjectured.
  bool conjectural = false;
  /// No theorem backs this combination; the values are reported, not asserted.
  bool log_only = false;
  /// For every target cycle's characteristic vector c: c.y1 >= c.f.
  std::optional<bool> dual_cycle_inequalities;
  std::optional<LPTrace> lp;
  std::optional<std::size_t> gf2_rank;
  std::optional<std::size_t> oracle_max_packing;
  std::optional<std::size_t> oracle_min_hitting;
};

}  // namespace cycdual
