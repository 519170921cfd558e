#include "fpg/multigraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fpg {

MultiGraph::MultiGraph(int node_count, const std::vector<std::pair<int, int>>& arcs)
    : node_count_(node_count) {
  if (node_count < 1) throw std::invalid_argument("node_count must be >= 1");
  arcs_.reserve(arcs.size());
  for (const auto& [u, v] : arcs) {
    if (u < 0 || v < 0 || u >= node_count || v >= node_count)
      throw std::invalid_argument("arc endpoint out of range");
    arcs_.push_back(Arc{std::min(u, v), std::max(u, v)});
  }
}

int MultiGraph::degree(int v) const {
  int d = 0;
  for (const Arc& a : arcs_) {
    if (a.is_loop()) {
      if (a.u == v) d += 2;
    } else {
      if (a.u == v || a.v == v) d += 1;
    }
  }
  return d;
}

bool MultiGraph::is_four_regular() const {
  for (int v = 0; v < node_count_; ++v)
    if (degree(v) != 4) return false;
  return true;
}

bool MultiGraph::is_connected() const {
  if (node_count_ == 0) return false;
  std::vector<bool> seen(static_cast<size_t>(node_count_), false);
  std::vector<int> stack = {0};
  seen[0] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const Arc& a : arcs_) {
      int w = -1;
      if (a.u == v) w = a.v;
      else if (a.v == v) w = a.u;
      if (w >= 0 && !seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = true;
        stack.push_back(w);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

GraphDiagnostics validate(const MultiGraph& g) {
  return GraphDiagnostics{g.is_four_regular(), g.is_connected()};
}

MultiGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int node_count = -1, declared_arcs = -1;
  std::vector<std::pair<int, int>> arcs;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (node_count < 0) {
      if (!(ls >> node_count >> declared_arcs) || node_count < 1 || declared_arcs < 0)
        throw std::invalid_argument("malformed header at line " + std::to_string(lineno));
    } else {
      int u, v;
      if (!(ls >> u >> v))
        throw std::invalid_argument("malformed arc at line " + std::to_string(lineno));
      std::string rest;
      if (ls >> rest && rest[0] != '#')
        throw std::invalid_argument("trailing tokens at line " + std::to_string(lineno));
      if (u < 0 || v < 0 || u >= node_count || v >= node_count)
        throw std::invalid_argument("node index out of range at line " + std::to_string(lineno));
      arcs.emplace_back(u, v);
    }
  }
  if (node_count < 0) throw std::invalid_argument("empty graph file");
  if (static_cast<int>(arcs.size()) != declared_arcs)
    throw std::invalid_argument("declared arc count " + std::to_string(declared_arcs) +
                                " but found " + std::to_string(arcs.size()));
  return MultiGraph(node_count, arcs);
}

std::string serialize_graph(const MultiGraph& g) {
  std::ostringstream out;
  out << g.node_count() << ' ' << g.arc_count() << '\n';
  for (const auto& a : g.arcs()) out << a.u << ' ' << a.v << '\n';
  return out.str();
}

namespace {

std::string label_under(const MultiGraph& g, const std::vector<int>& perm) {
  std::vector<std::pair<int, int>> relabeled;
  relabeled.reserve(g.arcs().size());
  for (const auto& a : g.arcs()) {
    int u = perm[static_cast<size_t>(a.u)];
    int v = perm[static_cast<size_t>(a.v)];
    relabeled.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(relabeled.begin(), relabeled.end());
  std::ostringstream out;
  out << g.node_count() << ':';
  for (const auto& [u, v] : relabeled) out << u << ',' << v << ';';
  return out.str();
}

}  // namespace

std::string canonical_label(const MultiGraph& g) {
  if (g.node_count() > 8)
    throw std::invalid_argument("canonical_label: node count exceeds guard (8)");
  std::vector<int> perm(static_cast<size_t>(g.node_count()));
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string lab = label_under(g, perm);
    if (best.empty() || lab < best) best = lab;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

namespace {

// Backtracking over adjacency multiplicities: for each node in turn choose a
// loop count and multiplicities towards higher-numbered nodes so every degree
// lands on exactly 4.
struct Enumerator {
  int n;
  std::vector<int> deficit;              // remaining degree per node
  std::vector<std::pair<int, int>> arcs; // chosen so far, sorted by construction
  std::set<std::string> seen;
  std::vector<MultiGraph> out;

  explicit Enumerator(int n_) : n(n_), deficit(static_cast<size_t>(n_), 4) {}

  void run() { place_node(0); }

  void place_node(int v) {
    if (v == n) {
      finish();
      return;
    }
    // loops at v: each consumes 2 of v's remaining degree
    int maxloops = deficit[static_cast<size_t>(v)] / 2;
    for (int loops = 0; loops <= maxloops; ++loops) {
      for (int i = 0; i < loops; ++i) arcs.emplace_back(v, v);
      deficit[static_cast<size_t>(v)] -= 2 * loops;
      distribute(v, v + 1);
      deficit[static_cast<size_t>(v)] += 2 * loops;
      for (int i = 0; i < loops; ++i) arcs.pop_back();
    }
  }

  // multiplicities from v to w, w ascending
  void distribute(int v, int w) {
    if (deficit[static_cast<size_t>(v)] == 0) {
      place_node(v + 1);
      return;
    }
    if (w == n) return;  // v still deficient and no partners left
    int maxm = std::min(deficit[static_cast<size_t>(v)], deficit[static_cast<size_t>(w)]);
    for (int m = maxm; m >= 0; --m) {
      for (int i = 0; i < m; ++i) arcs.emplace_back(v, w);
      deficit[static_cast<size_t>(v)] -= m;
      deficit[static_cast<size_t>(w)] -= m;
      distribute(v, w + 1);
      deficit[static_cast<size_t>(v)] += m;
      deficit[static_cast<size_t>(w)] += m;
      for (int i = 0; i < m; ++i) arcs.pop_back();
    }
  }

  void finish() {
    MultiGraph g(n, arcs);
    if (!g.is_connected()) return;
    std::string lab = canonical_label(g);
    if (seen.insert(lab).second) out.push_back(std::move(g));
  }
};

}  // namespace

std::vector<MultiGraph> enumerate_four_regular(int n) {
  if (n < 1 || n > 6)
    throw std::invalid_argument("enumerate_four_regular: node count exceeds guard (6)");
  Enumerator e(n);
  e.run();
  return std::move(e.out);
}

}  // namespace fpg
