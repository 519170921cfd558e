#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpg/multigraph.hpp"

namespace fpg {

/// Tree of bags over the nodes of a multigraph. Bag ids are dense 0-based
/// indices into `bags`; the PACE-style text format is 1-indexed on both bags
/// and graph nodes.
struct TreeDecomposition {
  std::vector<std::vector<int>> bags;        // each sorted ascending
  std::vector<std::pair<int, int>> tree_arcs;
  std::optional<int> root;

  static TreeDecomposition single_bag(int node_count);
};

struct DecompositionDiagnostics {
  bool valid = false;
  std::string violation;  // description with witness; empty when valid
};

/// Checks the three decomposition conditions: the bags form a tree, every
/// node and arc is covered, and each node's bags induce a connected subtree.
DecompositionDiagnostics validate_decomposition(const MultiGraph& g,
                                                const TreeDecomposition& td);

/// (max bag size) - 1. Throws on a decomposition with no bags.
int width(const TreeDecomposition& td);

/// Minimum width over all decompositions, via dynamic programming over
/// elimination orderings of the underlying simple graph. Guarded to <= 8
/// nodes; loops and arc multiplicities do not affect the result.
std::pair<int, TreeDecomposition> exact_treewidth(const MultiGraph& g);

/// Greedy min-fill elimination. Always valid; width >= treewidth.
TreeDecomposition heuristic_decomposition(const MultiGraph& g);

/// Rooted decomposition where every bag has at most two children, plus the
/// bag at which each graph node is introduced (the bag containing it that is
/// closest to the root, unique by the connected-subtree condition).
struct NiceDecomposition {
  std::vector<std::vector<int>> bags;  // sorted ascending
  std::vector<int> parent;             // -1 at the root
  std::vector<std::vector<int>> children;
  int root = 0;
  std::vector<int> introduce_at;       // graph node -> bag id

  int width() const;
  int bag_count() const { return static_cast<int>(bags.size()); }
};

NiceDecomposition make_nice(const MultiGraph& g, const TreeDecomposition& td);

/// PACE-style text format. Header "s td <num_bags> <max_bag_size>
/// <num_graph_nodes>", one "b <bag_id> <node>..." line per bag, then one
/// "<bag_id> <bag_id>" line per tree arc. Bag ids and nodes are 1-indexed in
/// the file and 0-indexed in memory.
std::string serialize_td(const TreeDecomposition& td, int graph_node_count);
TreeDecomposition parse_td(const std::string& text);

}  // namespace fpg
