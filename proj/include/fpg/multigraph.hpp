#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fpg {

/// Undirected multigraph with loops and parallel arcs. Arcs carry stable
/// integer ids (their position in the arc list); a loop at v contributes 2
/// to the degree of v.
class MultiGraph {
public:
  struct Arc {
    int u = 0;
    int v = 0;  // normalized so that u <= v
    bool is_loop() const { return u == v; }
    friend bool operator==(const Arc&, const Arc&) = default;
    friend auto operator<=>(const Arc&, const Arc&) = default;
  };

  MultiGraph() = default;
  MultiGraph(int node_count, const std::vector<std::pair<int, int>>& arcs);

  int node_count() const { return node_count_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(int id) const { return arcs_.at(static_cast<size_t>(id)); }

  int degree(int v) const;
  bool is_four_regular() const;
  bool is_connected() const;

  friend bool operator==(const MultiGraph&, const MultiGraph&) = default;

private:
  int node_count_ = 0;
  std::vector<Arc> arcs_;
};

struct GraphDiagnostics {
  bool four_regular = false;
  bool connected = false;
  bool ok() const { return four_regular && connected; }
};

GraphDiagnostics validate(const MultiGraph& g);

/// Parses the line-based graph format: "<node_count> <arc_count>" followed by
/// one "u v" line per arc (0-indexed, loops written "u u"). Lines starting
/// with '#' are ignored. Throws std::invalid_argument on malformed input.
MultiGraph parse_graph(const std::string& text);
std::string serialize_graph(const MultiGraph& g);

/// Isomorphism-invariant label via exhaustive relabeling; two graphs get the
/// same label iff they are isomorphic as multigraphs. Guarded to <= 8 nodes.
std::string canonical_label(const MultiGraph& g);

/// One representative per isomorphism class of connected 4-regular
/// multigraphs on n nodes. Guarded to n <= 6.
std::vector<MultiGraph> enumerate_four_regular(int n);

}  // namespace fpg
