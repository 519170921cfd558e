#include "fpg/dp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace fpg {

namespace {

bool is_ancestor(const NiceDecomposition& nd, int a, int b) {
  // is a an ancestor of b (or equal)?
  while (b >= 0) {
    if (b == a) return true;
    b = nd.parent[static_cast<size_t>(b)];
  }
  return false;
}

}  // namespace

DpPlan plan(const MultiGraph& g, const NiceDecomposition& nd) {
  auto diag = validate(g);
  if (!diag.four_regular) throw std::invalid_argument("plan: graph is not 4-regular");
  if (!diag.connected) throw std::invalid_argument("plan: graph is not connected");

  int bag_count = nd.bag_count();
  // (bag, node) -> arc ids glued right after the node is introduced there
  std::map<std::pair<int, int>, std::vector<int>> arcs_at;
  for (int id = 0; id < g.arc_count(); ++id) {
    const auto& arc = g.arc(id);
    int bu = nd.introduce_at[static_cast<size_t>(arc.u)];
    int bv = nd.introduce_at[static_cast<size_t>(arc.v)];
    int bag, node;
    if (bu == bv) {
      bag = bu;
      node = std::max(arc.u, arc.v);
    } else if (is_ancestor(nd, bu, bv)) {
      bag = bu;
      node = arc.u;
    } else if (is_ancestor(nd, bv, bu)) {
      bag = bv;
      node = arc.v;
    } else {
      throw std::invalid_argument("plan: decomposition does not cover arc " +
                                  std::to_string(id));
    }
    arcs_at[{bag, node}].push_back(id);
  }

  DpPlan p;
  p.bag_steps.resize(static_cast<size_t>(bag_count));
  for (int bag = 0; bag < bag_count; ++bag) {
    std::vector<int> introduced;
    for (int v = 0; v < g.node_count(); ++v)
      if (nd.introduce_at[static_cast<size_t>(v)] == bag) introduced.push_back(v);
    for (int v : introduced) {
      p.bag_steps[static_cast<size_t>(bag)].push_back(
          DpPlan::Step{DpPlan::Step::Kind::introduce_node, v, -1});
      auto it = arcs_at.find({bag, v});
      if (it == arcs_at.end()) continue;
      for (int id : it->second) {
        p.bag_steps[static_cast<size_t>(bag)].push_back(
            DpPlan::Step{DpPlan::Step::Kind::process_arc, -1, id});
        ++p.arc_assignments;
      }
    }
  }
  if (p.arc_assignments != g.arc_count())
    throw std::logic_error("plan: arc assignment incomplete");

  // post-order over the rooted bag tree
  std::vector<int> stack = {nd.root};
  std::vector<int> order;
  while (!stack.empty()) {
    int bag = stack.back();
    stack.pop_back();
    order.push_back(bag);
    for (int c : nd.children[static_cast<size_t>(bag)]) stack.push_back(c);
  }
  std::reverse(order.begin(), order.end());
  p.post_order = std::move(order);
  return p;
}

namespace {

struct Derivation {
  enum class Kind { empty, standalone, unite, glue };
  Kind kind = Kind::empty;
  int a = -1;  // predecessor derivation
  int b = -1;  // second predecessor (unite)
  int tet = -1;
  Gluing gluing;
};

struct Entry {
  BoundaryConfiguration config;
  int deriv = -1;
};

// Shared machinery for both strategies: per-bag stores with structural
// dedup, and the introduce/glue pipeline with per-step dedup so both
// strategies expand exactly the same set of intermediate states.
struct Engine {
  const MultiGraph& graph;
  const NiceDecomposition& nice;
  const SimpleProperty& property;
  const DpPlan plan_;
  bool record;

  std::vector<std::vector<Entry>> stores;
  std::vector<std::set<std::string>> store_keys;
  std::vector<std::vector<std::set<std::string>>> step_seen;  // [bag][step index]
  std::vector<Derivation> derivations;
  SolveStats stats;
  bool found = false;
  int accepted_deriv = -1;

  Engine(const MultiGraph& g, const NiceDecomposition& nd, const SimpleProperty& p,
         bool record_derivations)
      : graph(g), nice(nd), property(p), plan_(plan(g, nd)), record(record_derivations) {
    stores.resize(static_cast<size_t>(nd.bag_count()));
    store_keys.resize(static_cast<size_t>(nd.bag_count()));
    step_seen.resize(static_cast<size_t>(nd.bag_count()));
    for (int bag = 0; bag < nd.bag_count(); ++bag)
      step_seen[static_cast<size_t>(bag)].resize(
          plan_.bag_steps[static_cast<size_t>(bag)].size() + 1);
  }

  int log_derivation(Derivation d) {
    if (!record) return -1;
    derivations.push_back(std::move(d));
    return static_cast<int>(derivations.size()) - 1;
  }

  std::vector<Entry> expand_step(int bag, size_t step_idx, const Entry& in) {
    std::vector<Entry> out;
    const auto& step = plan_.bag_steps[static_cast<size_t>(bag)][step_idx];
    auto& seen = step_seen[static_cast<size_t>(bag)][step_idx + 1];
    auto push = [&](BoundaryConfiguration&& cfg, Derivation d) {
      std::string key = cfg.canonical_key();
      if (!seen.insert(std::move(key)).second) return;
      out.push_back(Entry{std::move(cfg), log_derivation(std::move(d))});
    };

    if (step.kind == DpPlan::Step::Kind::introduce_node) {
      auto united =
          disjoint_union(in.config, standalone_config(step.node, property.initial()), property);
      if (united)
        push(std::move(*united),
             Derivation{Derivation::Kind::standalone, in.deriv, -1, step.node, {}});
      return out;
    }

    const auto& arc = graph.arc(step.arc_id);
    auto faces_u = in.config.boundary_faces_of(arc.u);
    auto faces_v = in.config.boundary_faces_of(arc.v);
    auto try_pair = [&](const FaceRef& fa, const FaceRef& fb) {
      auto bt = fb.face.triple();
      std::array<int, 3> image = bt;
      std::sort(image.begin(), image.end());
      do {
        Gluing g(fa, fb, image);
        ++stats.identifications_attempted;
        auto r = apply_identification(in.config, g, property);
        if (r.accepted())
          push(std::move(*r.config), Derivation{Derivation::Kind::glue, in.deriv, -1, -1, g});
      } while (std::next_permutation(image.begin(), image.end()));
    };
    if (arc.is_loop()) {
      for (size_t i = 0; i < faces_u.size(); ++i)
        for (size_t j = i + 1; j < faces_u.size(); ++j) try_pair(faces_u[i], faces_u[j]);
    } else {
      for (const FaceRef& fa : faces_u)
        for (const FaceRef& fb : faces_v) try_pair(fa, fb);
    }
    return out;
  }

  // run one combined entry through all steps of the bag; returns survivors
  std::vector<Entry> run_pipeline(int bag, Entry entry) {
    auto& entry_seen = step_seen[static_cast<size_t>(bag)][0];
    if (!entry_seen.insert(entry.config.canonical_key()).second) return {};
    std::vector<Entry> frontier = {std::move(entry)};
    const auto& steps = plan_.bag_steps[static_cast<size_t>(bag)];
    for (size_t s = 0; s < steps.size() && !frontier.empty(); ++s) {
      std::vector<Entry> next;
      for (const Entry& e : frontier) {
        auto got = expand_step(bag, s, e);
        for (auto& x : got) next.push_back(std::move(x));
        if (found) return {};
      }
      frontier = std::move(next);
    }
    return frontier;
  }

  // depth-first variant: each configuration that survives the last step is
  // handed to the sink at once, so an affirmative answer can cut the search
  // short; the per-step dedup keeps the explored states identical to the
  // breadth-first pipeline
  template <typename Sink>
  void run_pipeline_dfs(int bag, size_t step_idx, Entry entry, const Sink& sink) {
    if (found) return;
    const auto& steps = plan_.bag_steps[static_cast<size_t>(bag)];
    if (step_idx == steps.size()) {
      sink(std::move(entry));
      return;
    }
    auto got = expand_step(bag, step_idx, entry);
    for (auto& x : got) {
      run_pipeline_dfs(bag, step_idx + 1, std::move(x), sink);
      if (found) return;
    }
  }

  template <typename Sink>
  void feed_pipeline_dfs(int bag, Entry entry, const Sink& sink) {
    auto& entry_seen = step_seen[static_cast<size_t>(bag)][0];
    if (!entry_seen.insert(entry.config.canonical_key()).second) return;
    if (entry_seen.size() == 1) ++stats.bags_processed;
    run_pipeline_dfs(bag, 0, std::move(entry), sink);
  }

  bool store_config(int bag, Entry e) {
    if (!store_keys[static_cast<size_t>(bag)].insert(e.config.canonical_key()).second)
      return false;
    stores[static_cast<size_t>(bag)].push_back(std::move(e));
    stats.max_store_size =
        std::max(stats.max_store_size, stores[static_cast<size_t>(bag)].size());
    return true;
  }

  bool root_accepts(const Entry& e) {
    return e.config.is_empty_boundary() && property.accepts_closed(e.config.prop_datum);
  }

  Entry empty_entry() {
    Entry e;
    e.config = BoundaryConfiguration::empty(property.initial());
    e.deriv = log_derivation(Derivation{});
    return e;
  }

  std::optional<Entry> combine(const Entry& first, const Entry& second) {
    auto united = disjoint_union(first.config, second.config, property);
    if (!united) return std::nullopt;
    Entry e;
    e.config = std::move(*united);
    e.deriv =
        log_derivation(Derivation{Derivation::Kind::unite, first.deriv, second.deriv, -1, {}});
    return e;
  }

  // ---- exhaustive: finish each bag before its parent ----
  bool solve_exhaustive() {
    for (int bag : plan_.post_order) {
      ++stats.bags_processed;
      const auto& kids = nice.children[static_cast<size_t>(bag)];
      std::vector<Entry> combined;
      if (kids.empty()) {
        combined.push_back(empty_entry());
      } else if (kids.size() == 1) {
        combined = stores[static_cast<size_t>(kids[0])];
      } else {
        for (const Entry& x : stores[static_cast<size_t>(kids[0])])
          for (const Entry& y : stores[static_cast<size_t>(kids[1])])
            if (auto e = combine(x, y)) combined.push_back(std::move(*e));
      }
      for (Entry& e : combined)
        for (Entry& out : run_pipeline(bag, std::move(e))) store_config(bag, std::move(out));
      if (stores[static_cast<size_t>(bag)].empty()) return false;  // nothing viable below here
    }
    for (const Entry& e : stores[static_cast<size_t>(nice.root)])
      if (root_accepts(e)) {
        accepted_deriv = e.deriv;
        return true;
      }
    return false;
  }

  // ---- dfs: each stored configuration is pushed to its parent at once ----
  void emit(int bag, Entry e) {
    if (found) return;
    Entry mine = e;  // stable copy; stores may grow during the recursion
    if (!store_config(bag, std::move(e))) return;
    if (bag == nice.root) {
      if (root_accepts(mine)) {
        found = true;
        accepted_deriv = mine.deriv;
      }
      return;
    }
    int parent = nice.parent[static_cast<size_t>(bag)];
    const auto& kids = nice.children[static_cast<size_t>(parent)];
    auto up = [&](Entry&& out) { emit(parent, std::move(out)); };
    if (kids.size() == 1) {
      feed_pipeline_dfs(parent, std::move(mine), up);
      return;
    }
    int sibling = (kids[0] == bag) ? kids[1] : kids[0];
    bool bag_is_first = (kids[0] == bag);
    // pair with every sibling configuration known so far; later sibling
    // arrivals pick this one up from the store themselves
    size_t limit = stores[static_cast<size_t>(sibling)].size();
    for (size_t i = 0; i < limit && !found; ++i) {
      Entry other = stores[static_cast<size_t>(sibling)][i];
      auto e2 = bag_is_first ? combine(mine, other) : combine(other, mine);
      if (!e2) continue;
      feed_pipeline_dfs(parent, std::move(*e2), up);
    }
  }

  bool solve_depth_first() {
    for (int bag : plan_.post_order) {
      if (found) break;
      if (!nice.children[static_cast<size_t>(bag)].empty()) continue;
      feed_pipeline_dfs(bag, empty_entry(), [&](Entry&& out) { emit(bag, std::move(out)); });
    }
    return found;
  }

  void collect_gluings(int deriv, std::vector<Gluing>* out) const {
    if (deriv < 0) throw std::logic_error("witness requested without recorded derivations");
    const Derivation& d = derivations[static_cast<size_t>(deriv)];
    switch (d.kind) {
      case Derivation::Kind::empty: return;
      case Derivation::Kind::standalone: collect_gluings(d.a, out); return;
      case Derivation::Kind::unite:
        collect_gluings(d.a, out);
        collect_gluings(d.b, out);
        return;
      case Derivation::Kind::glue:
        collect_gluings(d.a, out);
        out->push_back(d.gluing);
        return;
    }
  }
};

void check_preconditions(const MultiGraph& g, const NiceDecomposition& nd) {
  TreeDecomposition td;
  td.bags = nd.bags;
  for (size_t i = 0; i < nd.parent.size(); ++i)
    if (nd.parent[i] >= 0) td.tree_arcs.emplace_back(static_cast<int>(i), nd.parent[i]);
  td.root = nd.root;
  auto diag = validate_decomposition(g, td);
  if (!diag.valid)
    throw std::invalid_argument("solve: invalid decomposition: " + diag.violation);
}

}  // namespace

SolveResult solve(const MultiGraph& g, const NiceDecomposition& nd,
                  const SimpleProperty& property, Strategy strategy) {
  check_preconditions(g, nd);
  Engine engine(g, nd, property, false);
  bool yes = (strategy == Strategy::exhaustive) ? engine.solve_exhaustive()
                                                : engine.solve_depth_first();
  return SolveResult{yes, engine.stats};
}

SolveResult solve_dfs(const MultiGraph& g, const NiceDecomposition& nd,
                      const SimpleProperty& property) {
  return solve(g, nd, property, Strategy::dfs);
}

Triangulation witness(const MultiGraph& g, const NiceDecomposition& nd,
                      const SimpleProperty& property) {
  check_preconditions(g, nd);
  Engine engine(g, nd, property, true);
  if (!engine.solve_exhaustive())
    throw std::logic_error("witness: instance is not admissible");
  std::vector<Gluing> gluings;
  engine.collect_gluings(engine.accepted_deriv, &gluings);
  Triangulation t(g.node_count(), std::move(gluings));
  if (!is_closed_3manifold(t))
    throw std::logic_error("witness: replay is not a closed 3-manifold triangulation");
  if (canonical_label(face_pairing_graph(t)) != canonical_label(g))
    throw std::logic_error("witness: face pairing graph mismatch");
  return t;
}

}  // namespace fpg
