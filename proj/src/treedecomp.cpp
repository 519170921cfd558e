#include "fpg/treedecomp.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fpg {

TreeDecomposition TreeDecomposition::single_bag(int node_count) {
  TreeDecomposition td;
  std::vector<int> all(static_cast<size_t>(node_count));
  std::iota(all.begin(), all.end(), 0);
  td.bags.push_back(std::move(all));
  td.root = 0;
  return td;
}

namespace {

bool bags_form_tree(const TreeDecomposition& td, std::string* why) {
  int b = static_cast<int>(td.bags.size());
  if (static_cast<int>(td.tree_arcs.size()) != b - 1) {
    *why = "bag graph has " + std::to_string(td.tree_arcs.size()) + " arcs, expected " +
           std::to_string(b - 1);
    return false;
  }
  std::vector<std::vector<int>> adj(static_cast<size_t>(b));
  for (const auto& [x, y] : td.tree_arcs) {
    if (x < 0 || y < 0 || x >= b || y >= b) {
      *why = "tree arc references missing bag";
      return false;
    }
    adj[static_cast<size_t>(x)].push_back(y);
    adj[static_cast<size_t>(y)].push_back(x);
  }
  std::vector<bool> seen(static_cast<size_t>(b), false);
  std::vector<int> stack = {0};
  seen[0] = true;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[static_cast<size_t>(x)])
      if (!seen[static_cast<size_t>(y)]) {
        seen[static_cast<size_t>(y)] = true;
        stack.push_back(y);
      }
  }
  for (int x = 0; x < b; ++x)
    if (!seen[static_cast<size_t>(x)]) {
      *why = "bag graph disconnected (bag " + std::to_string(x) + " unreachable)";
      return false;
    }
  return true;  // connected with b-1 arcs => tree
}

}  // namespace

DecompositionDiagnostics validate_decomposition(const MultiGraph& g,
                                                const TreeDecomposition& td) {
  DecompositionDiagnostics d;
  if (td.bags.empty()) {
    d.violation = "decomposition has no bags";
    return d;
  }
  for (const auto& bag : td.bags)
    for (int v : bag)
      if (v < 0 || v >= g.node_count()) {
        d.violation = "bag contains unknown node " + std::to_string(v);
        return d;
      }
  if (!bags_form_tree(td, &d.violation)) return d;

  // condition: every node covered, every arc has a bag with both endpoints
  auto bag_has = [&](const std::vector<int>& bag, int v) {
    return std::binary_search(bag.begin(), bag.end(), v);
  };
  for (int v = 0; v < g.node_count(); ++v) {
    bool found = false;
    for (const auto& bag : td.bags)
      if (bag_has(bag, v)) { found = true; break; }
    if (!found) {
      d.violation = "node " + std::to_string(v) + " appears in no bag";
      return d;
    }
  }
  for (int id = 0; id < g.arc_count(); ++id) {
    const auto& a = g.arc(id);
    bool found = false;
    for (const auto& bag : td.bags)
      if (bag_has(bag, a.u) && bag_has(bag, a.v)) { found = true; break; }
    if (!found) {
      d.violation = "arc " + std::to_string(id) + " {" + std::to_string(a.u) + "," +
                    std::to_string(a.v) + "} covered by no bag";
      return d;
    }
  }

  // condition: bags containing any given node induce a connected subtree
  std::vector<std::vector<int>> adj(td.bags.size());
  for (const auto& [x, y] : td.tree_arcs) {
    adj[static_cast<size_t>(x)].push_back(y);
    adj[static_cast<size_t>(y)].push_back(x);
  }
  for (int v = 0; v < g.node_count(); ++v) {
    int start = -1, total = 0;
    for (size_t i = 0; i < td.bags.size(); ++i)
      if (bag_has(td.bags[i], v)) {
        ++total;
        if (start < 0) start = static_cast<int>(i);
      }
    std::set<int> reached;
    std::vector<int> stack = {start};
    reached.insert(start);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[static_cast<size_t>(x)])
        if (bag_has(td.bags[static_cast<size_t>(y)], v) && reached.insert(y).second)
          stack.push_back(y);
    }
    if (static_cast<int>(reached.size()) != total) {
      d.violation = "bags containing node " + std::to_string(v) + " are not connected";
      return d;
    }
  }

  d.valid = true;
  return d;
}

int width(const TreeDecomposition& td) {
  if (td.bags.empty()) throw std::invalid_argument("width of empty decomposition");
  size_t biggest = 0;
  for (const auto& bag : td.bags) biggest = std::max(biggest, bag.size());
  return static_cast<int>(biggest) - 1;
}

namespace {

using Mask = unsigned;

// Neighbors of v after eliminating the node set `gone`: any u outside
// gone+{v} adjacent to v directly or through a path inside gone.
Mask eliminated_neighbors(const std::vector<Mask>& adj, int n, int v, Mask gone) {
  Mask comp = Mask(1) << v;  // v plus reachable eliminated nodes
  Mask frontier = comp;
  Mask result = 0;
  while (frontier) {
    Mask next = 0;
    for (int x = 0; x < n; ++x)
      if (frontier & (Mask(1) << x)) {
        Mask nb = adj[static_cast<size_t>(x)];
        result |= nb & ~gone;
        next |= nb & gone & ~comp;
      }
    comp |= next;
    frontier = next;
  }
  result &= ~(Mask(1) << v);
  return result;
}

std::vector<Mask> simple_adjacency(const MultiGraph& g) {
  std::vector<Mask> adj(static_cast<size_t>(g.node_count()), 0);
  for (const auto& a : g.arcs())
    if (!a.is_loop()) {
      adj[static_cast<size_t>(a.u)] |= Mask(1) << a.v;
      adj[static_cast<size_t>(a.v)] |= Mask(1) << a.u;
    }
  return adj;
}

// Decomposition from an elimination ordering: one bag per node, parent = bag
// of the first ordered fill-neighbor.
TreeDecomposition decomposition_from_order(const MultiGraph& g, const std::vector<int>& order) {
  int n = g.node_count();
  std::vector<Mask> adj = simple_adjacency(g);
  std::vector<int> pos(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) pos[static_cast<size_t>(order[static_cast<size_t>(i)])] = i;

  TreeDecomposition td;
  td.bags.resize(static_cast<size_t>(n));
  std::vector<Mask> live = adj;
  std::vector<int> first_later(static_cast<size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    int v = order[static_cast<size_t>(i)];
    Mask nb = live[static_cast<size_t>(v)];
    std::vector<int> bag = {v};
    int best = -1;
    for (int u = 0; u < n; ++u)
      if (nb & (Mask(1) << u)) {
        bag.push_back(u);
        if (best < 0 || pos[static_cast<size_t>(u)] < pos[static_cast<size_t>(best)]) best = u;
      }
    std::sort(bag.begin(), bag.end());
    td.bags[static_cast<size_t>(i)] = std::move(bag);
    first_later[static_cast<size_t>(i)] = best < 0 ? -1 : pos[static_cast<size_t>(best)];
    // eliminate v: clique-fill its remaining neighbors
    for (int u = 0; u < n; ++u)
      if (nb & (Mask(1) << u)) {
        live[static_cast<size_t>(u)] |= nb & ~(Mask(1) << u);
        live[static_cast<size_t>(u)] &= ~(Mask(1) << v);
      }
  }
  for (int i = 0; i < n; ++i) {
    int p = first_later[static_cast<size_t>(i)];
    if (p < 0 && i + 1 < n) p = i + 1;  // isolated piece: chain onward
    if (p >= 0) td.tree_arcs.emplace_back(i, p);
  }
  td.root = n - 1;
  return td;
}

}  // namespace

std::pair<int, TreeDecomposition> exact_treewidth(const MultiGraph& g) {
  int n = g.node_count();
  if (n > 8) throw std::invalid_argument("exact_treewidth: node count exceeds guard (8)");
  std::vector<Mask> adj = simple_adjacency(g);

  // best[S] = minimum over orderings starting with the set S (eliminated
  // first, in some order) of the maximum elimination degree inside S.
  size_t full = size_t(1) << n;
  std::vector<int> best(full, 0);
  std::vector<int> choice(full, -1);
  for (Mask s = 1; s < full; ++s) {
    int b = n + 1;
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (!(s & (Mask(1) << v))) continue;
      Mask rest = s & ~(Mask(1) << v);
      Mask nb = eliminated_neighbors(adj, n, v, rest);
      int deg = static_cast<int>(__builtin_popcount(nb));
      int cand = std::max(best[rest], deg);
      if (cand < b) {
        b = cand;
        pick = v;
      }
    }
    best[s] = b;
    choice[s] = pick;
  }

  Mask all = static_cast<Mask>(full - 1);
  std::vector<int> order;
  Mask s = all;
  while (s) {
    int v = choice[s];
    order.push_back(v);
    s &= ~(Mask(1) << v);
  }
  std::reverse(order.begin(), order.end());  // choice[s] eliminates last within s
  return {best[all], decomposition_from_order(g, order)};
}

TreeDecomposition heuristic_decomposition(const MultiGraph& g) {
  int n = g.node_count();
  std::vector<std::set<int>> adj(static_cast<size_t>(n));
  for (const auto& a : g.arcs())
    if (!a.is_loop()) {
      adj[static_cast<size_t>(a.u)].insert(a.v);
      adj[static_cast<size_t>(a.v)].insert(a.u);
    }
  std::vector<bool> gone(static_cast<size_t>(n), false);
  std::vector<int> order;
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    long best_fill = -1;
    for (int v = 0; v < n; ++v) {
      if (gone[static_cast<size_t>(v)]) continue;
      long fill = 0;
      const auto& nb = adj[static_cast<size_t>(v)];
      for (auto it = nb.begin(); it != nb.end(); ++it)
        for (auto jt = std::next(it); jt != nb.end(); ++jt)
          if (!adj[static_cast<size_t>(*it)].count(*jt)) ++fill;
      if (pick < 0 || fill < best_fill) {
        pick = v;
        best_fill = fill;
      }
    }
    order.push_back(pick);
    gone[static_cast<size_t>(pick)] = true;
    auto nb = adj[static_cast<size_t>(pick)];
    for (int u : nb) {
      adj[static_cast<size_t>(u)].erase(pick);
      for (int w : nb)
        if (w != u) adj[static_cast<size_t>(u)].insert(w);
    }
    adj[static_cast<size_t>(pick)].clear();
  }
  return decomposition_from_order(g, order);
}

int NiceDecomposition::width() const {
  size_t biggest = 0;
  for (const auto& bag : bags) biggest = std::max(biggest, bag.size());
  return static_cast<int>(biggest) - 1;
}

NiceDecomposition make_nice(const MultiGraph& g, const TreeDecomposition& td) {
  auto diag = validate_decomposition(g, td);
  if (!diag.valid) throw std::invalid_argument("make_nice: invalid decomposition: " + diag.violation);

  int b = static_cast<int>(td.bags.size());
  int root = td.root.value_or(0);
  std::vector<std::vector<int>> adj(static_cast<size_t>(b));
  for (const auto& [x, y] : td.tree_arcs) {
    adj[static_cast<size_t>(x)].push_back(y);
    adj[static_cast<size_t>(y)].push_back(x);
  }

  NiceDecomposition nd;
  nd.bags.reserve(td.bags.size());
  // rooted copy; a bag with more than two children becomes a chain of
  // duplicated bags, each hosting one original child plus the next duplicate
  std::vector<bool> seen(static_cast<size_t>(b), false);
  seen[static_cast<size_t>(root)] = true;

  struct Item { int src; int parent; };
  std::vector<Item> queue = {{root, -1}};
  while (!queue.empty()) {
    auto [src, parent] = queue.back();
    queue.pop_back();
    int id = static_cast<int>(nd.bags.size());
    nd.bags.push_back(td.bags[static_cast<size_t>(src)]);
    nd.parent.push_back(parent);
    nd.children.emplace_back();
    if (parent >= 0) nd.children[static_cast<size_t>(parent)].push_back(id);

    std::vector<int> kids;
    for (int y : adj[static_cast<size_t>(src)])
      if (!seen[static_cast<size_t>(y)]) {
        seen[static_cast<size_t>(y)] = true;
        kids.push_back(y);
      }
    int attach = id;
    size_t next = 0;
    while (kids.size() - next > 2) {
      queue.push_back({kids[next++], attach});
      int dup = static_cast<int>(nd.bags.size());
      nd.bags.push_back(nd.bags[static_cast<size_t>(attach)]);
      nd.parent.push_back(attach);
      nd.children.emplace_back();
      nd.children[static_cast<size_t>(attach)].push_back(dup);
      attach = dup;
    }
    for (; next < kids.size(); ++next) queue.push_back({kids[next], attach});
  }
  nd.root = 0;

  // depth-first depths, then the shallowest bag containing each node
  std::vector<int> depth(nd.bags.size(), 0);
  for (size_t i = 1; i < nd.bags.size(); ++i)
    depth[i] = depth[static_cast<size_t>(nd.parent[i])] + 1;
  nd.introduce_at.assign(static_cast<size_t>(g.node_count()), -1);
  for (int v = 0; v < g.node_count(); ++v) {
    int at = -1;
    for (size_t i = 0; i < nd.bags.size(); ++i)
      if (std::binary_search(nd.bags[i].begin(), nd.bags[i].end(), v))
        if (at < 0 || depth[i] < depth[static_cast<size_t>(at)]) at = static_cast<int>(i);
    nd.introduce_at[static_cast<size_t>(v)] = at;
  }
  return nd;
}

std::string serialize_td(const TreeDecomposition& td, int graph_node_count) {
  size_t biggest = 0;
  for (const auto& bag : td.bags) biggest = std::max(biggest, bag.size());
  std::ostringstream out;
  out << "s td " << td.bags.size() << ' ' << biggest << ' ' << graph_node_count << '\n';
  for (size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << (i + 1);
    for (int v : td.bags[i]) out << ' ' << (v + 1);
    out << '\n';
  }
  for (const auto& [x, y] : td.tree_arcs) out << (x + 1) << ' ' << (y + 1) << '\n';
  return out.str();
}

TreeDecomposition parse_td(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  TreeDecomposition td;
  int declared_bags = -1;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == 'c' || line[first] == '#') continue;
    std::istringstream ls(line);
    if (line[first] == 's') {
      std::string s, tdword;
      int max_bag, nodes;
      if (!(ls >> s >> tdword >> declared_bags >> max_bag >> nodes) || tdword != "td")
        throw std::invalid_argument("malformed header at line " + std::to_string(lineno));
      td.bags.assign(static_cast<size_t>(declared_bags), {});
    } else if (line[first] == 'b') {
      std::string bword;
      int id;
      ls >> bword >> id;
      if (!ls || id < 1 || id > declared_bags)
        throw std::invalid_argument("malformed bag at line " + std::to_string(lineno));
      std::vector<int> bag;
      int v;
      while (ls >> v) bag.push_back(v - 1);
      std::sort(bag.begin(), bag.end());
      bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
      td.bags[static_cast<size_t>(id - 1)] = std::move(bag);
    } else {
      int x, y;
      if (!(ls >> x >> y) || x < 1 || y < 1 || x > declared_bags || y > declared_bags)
        throw std::invalid_argument("malformed tree arc at line " + std::to_string(lineno));
      td.tree_arcs.emplace_back(x - 1, y - 1);
    }
  }
  if (declared_bags < 0) throw std::invalid_argument("missing s td header");
  return td;
}

}  // namespace fpg
