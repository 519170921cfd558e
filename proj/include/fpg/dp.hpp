#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpg/boundary_config.hpp"
#include "fpg/multigraph.hpp"
#include "fpg/property.hpp"
#include "fpg/treedecomp.hpp"
#include "fpg/triangulation.hpp"

namespace fpg {

/// Per-bag schedule for the bottom-up search: which nodes gain their
/// tetrahedron at this bag and which graph arcs are glued here. Every node is
/// introduced at exactly one bag and every arc is processed at exactly one
/// bag, the one where its later-introduced endpoint appears.
struct DpPlan {
  struct Step {
    enum class Kind { introduce_node, process_arc };
    Kind kind = Kind::introduce_node;
    int node = -1;    // introduce_node
    int arc_id = -1;  // process_arc
  };

  std::vector<std::vector<Step>> bag_steps;
  std::vector<int> post_order;  // bags, children before parents
  int arc_assignments = 0;
};

DpPlan plan(const MultiGraph& g, const NiceDecomposition& nd);

enum class Strategy { exhaustive, dfs };

struct SolveStats {
  std::size_t max_store_size = 0;
  std::size_t bags_processed = 0;
  std::uint64_t identifications_attempted = 0;
};

struct SolveResult {
  bool admissible = false;
  SolveStats stats;
};

/// Decides whether some closed 3-manifold triangulation with the given
/// property has g as its face pairing graph, by propagating viable boundary
/// configurations up the decomposition. The dfs strategy propagates each new
/// configuration upward immediately, stopping at the first accepting root
/// configuration; verdicts are identical under both strategies.
SolveResult solve(const MultiGraph& g, const NiceDecomposition& nd,
                  const SimpleProperty& property, Strategy strategy = Strategy::exhaustive);

SolveResult solve_dfs(const MultiGraph& g, const NiceDecomposition& nd,
                      const SimpleProperty& property);

/// One witnessing triangulation for an affirmative instance, rebuilt from
/// recorded derivations and checked against the closed-3-manifold predicate.
/// Throws std::logic_error on a negative instance.
Triangulation witness(const MultiGraph& g, const NiceDecomposition& nd,
                      const SimpleProperty& property);

}  // namespace fpg
