#include <set>
#include <stdexcept>

#include "doctest.h"
#include "fpg/dp.hpp"
#include "fpg/oracle.hpp"

using namespace fpg;

namespace {

MultiGraph double_loop() { return parse_graph("1 2\n0 0\n0 0\n"); }

NiceDecomposition nice_single_bag(const MultiGraph& g) {
  return make_nice(g, TreeDecomposition::single_bag(g.node_count()));
}

std::vector<NiceDecomposition> decomposition_variants(const MultiGraph& g) {
  std::vector<NiceDecomposition> out;
  out.push_back(nice_single_bag(g));
  out.push_back(make_nice(g, exact_treewidth(g).second));
  out.push_back(make_nice(g, heuristic_decomposition(g)));
  // a duplicated chain over the full node set
  TreeDecomposition dup;
  std::vector<int> all(static_cast<size_t>(g.node_count()));
  for (int v = 0; v < g.node_count(); ++v) all[static_cast<size_t>(v)] = v;
  dup.bags = {all, all};
  dup.tree_arcs = {{0, 1}};
  dup.root = 0;
  out.push_back(make_nice(g, dup));
  return out;
}

}  // namespace

TEST_CASE("plan assigns every arc exactly once") {
  for (int n = 1; n <= 4; ++n)
    for (const MultiGraph& g : enumerate_four_regular(n)) {
      for (const auto& nd :
           {nice_single_bag(g), make_nice(g, exact_treewidth(g).second)}) {
        DpPlan p = plan(g, nd);
        CHECK(p.arc_assignments == g.arc_count());
        int introduced = 0, arcs = 0;
        for (const auto& steps : p.bag_steps)
          for (const auto& s : steps) {
            if (s.kind == DpPlan::Step::Kind::introduce_node) ++introduced;
            else ++arcs;
          }
        CHECK(introduced == g.node_count());
        CHECK(arcs == g.arc_count());
        CHECK(p.post_order.size() == static_cast<size_t>(nd.bag_count()));
        CHECK(p.post_order.back() == nd.root);
      }
    }
}

TEST_CASE("plan on the double loop puts everything at the root") {
  MultiGraph g = double_loop();
  NiceDecomposition nd = nice_single_bag(g);
  DpPlan p = plan(g, nd);
  REQUIRE(p.bag_steps.size() == 1);
  REQUIRE(p.bag_steps[0].size() == 3);
  CHECK(p.bag_steps[0][0].kind == DpPlan::Step::Kind::introduce_node);
  CHECK(p.bag_steps[0][1].kind == DpPlan::Step::Kind::process_arc);
  CHECK(p.bag_steps[0][2].kind == DpPlan::Step::Kind::process_arc);
}

TEST_CASE("plan rejects unsuitable inputs") {
  CHECK_THROWS_AS(plan(parse_graph("1 1\n0 0\n"), nice_single_bag(parse_graph("1 1\n0 0\n"))),
                  std::invalid_argument);
}

TEST_CASE("double loop is admissible under the trivial property") {
  MultiGraph g = double_loop();
  auto prop = trivial_property();
  SolveResult r = solve(g, nice_single_bag(g), *prop);
  CHECK(r.admissible);
  CHECK(r.stats.identifications_attempted > 0);
  CHECK(r.stats.max_store_size > 0);
  PropertySpec trivial;
  CHECK(r.admissible == oracle::admissible(g, trivial));
}

TEST_CASE("max-internal=0 is never satisfiable") {
  auto prop = max_internal_vertices(0);
  for (int n = 1; n <= 2; ++n)
    for (const MultiGraph& g : enumerate_four_regular(n))
      CHECK_FALSE(solve(g, nice_single_bag(g), *prop).admissible);
}

TEST_CASE("strategies and decompositions agree with the oracle on small graphs") {
  for (int n = 1; n <= 2; ++n) {
    for (const MultiGraph& g : enumerate_four_regular(n)) {
      for (const char* selector : {"trivial", "one-vertex"}) {
        PropertySpec spec = parse_property_spec(selector);
        auto prop = make_property(spec);
        bool expected = oracle::admissible(g, spec);
        for (const auto& nd : decomposition_variants(g)) {
          CHECK(solve(g, nd, *prop, Strategy::exhaustive).admissible == expected);
          CHECK(solve_dfs(g, nd, *prop).admissible == expected);
        }
      }
    }
  }
}

TEST_CASE("dfs never attempts more identifications on affirmative instances") {
  MultiGraph g = double_loop();
  auto prop = trivial_property();
  NiceDecomposition nd = nice_single_bag(g);
  SolveResult ex = solve(g, nd, *prop, Strategy::exhaustive);
  SolveResult df = solve(g, nd, *prop, Strategy::dfs);
  CHECK(ex.admissible);
  CHECK(df.admissible);
  CHECK(df.stats.identifications_attempted <= ex.stats.identifications_attempted);
}

TEST_CASE("dfs explores the same space on negative instances") {
  auto prop = max_internal_vertices(0);  // unsatisfiable
  for (int n = 1; n <= 2; ++n)
    for (const MultiGraph& g : enumerate_four_regular(n)) {
      NiceDecomposition nd = nice_single_bag(g);
      SolveResult ex = solve(g, nd, *prop, Strategy::exhaustive);
      SolveResult df = solve(g, nd, *prop, Strategy::dfs);
      CHECK_FALSE(ex.admissible);
      CHECK_FALSE(df.admissible);
      CHECK(ex.stats.identifications_attempted == df.stats.identifications_attempted);
    }
}

TEST_CASE("verdicts and stats are reproducible") {
  MultiGraph g = enumerate_four_regular(2).front();
  auto prop = exactly_one_vertex();
  NiceDecomposition nd = make_nice(g, exact_treewidth(g).second);
  SolveResult a = solve(g, nd, *prop);
  SolveResult b = solve(g, nd, *prop);
  CHECK(a.admissible == b.admissible);
  CHECK(a.stats.max_store_size == b.stats.max_store_size);
  CHECK(a.stats.identifications_attempted == b.stats.identifications_attempted);
}

TEST_CASE("witness rebuilds a checked triangulation") {
  MultiGraph g = double_loop();
  auto prop = trivial_property();
  NiceDecomposition nd = nice_single_bag(g);
  Triangulation t = witness(g, nd, *prop);
  CHECK(is_closed_3manifold(t));
  CHECK(canonical_label(face_pairing_graph(t)) == canonical_label(g));

  auto one = exactly_one_vertex();
  if (solve(g, nd, *one).admissible) {
    Triangulation t1 = witness(g, nd, *one);
    CHECK(Skeleton(t1).vertex_class_count() == 1);
  }

  auto impossible = max_internal_vertices(0);
  CHECK_THROWS_AS(witness(g, nd, *impossible), std::logic_error);
}

TEST_CASE("store sizes respect the configuration bound") {
  for (int n = 1; n <= 2; ++n)
    for (const MultiGraph& g : enumerate_four_regular(n)) {
      auto prop = trivial_property();
      NiceDecomposition nd = make_nice(g, exact_treewidth(g).second);
      SolveResult r = solve(g, nd, *prop);
      long double cap = bound_boundary_configurations(4 * (nd.width() + 1)) *
                        static_cast<long double>(prop->datum_count());
      CHECK(static_cast<long double>(r.stats.max_store_size) <= cap);
    }
}

TEST_CASE("property verdicts are monotone") {
  // anything admissible under a built-in property is admissible outright
  auto trivial = trivial_property();
  for (int n = 1; n <= 2; ++n)
    for (const MultiGraph& g : enumerate_four_regular(n)) {
      NiceDecomposition nd = nice_single_bag(g);
      for (const char* selector : {"one-vertex", "max-internal=2"}) {
        auto p = make_property(parse_property_spec(selector));
        if (solve(g, nd, *p, Strategy::dfs).admissible)
          CHECK(solve(g, nd, *trivial, Strategy::dfs).admissible);
      }
    }
}

TEST_CASE("a generous internal-vertex budget changes nothing") {
  // a closed triangulation on n tetrahedra has at most 4n vertices
  auto trivial = trivial_property();
  for (int n = 1; n <= 2; ++n)
    for (const MultiGraph& g : enumerate_four_regular(n)) {
      auto roomy = max_internal_vertices(4 * n);
      NiceDecomposition nd = nice_single_bag(g);
      CHECK(solve(g, nd, *roomy, Strategy::dfs).admissible ==
            solve(g, nd, *trivial, Strategy::dfs).admissible);
    }
}

TEST_CASE("witnesses exist for every admissible small instance") {
  for (int n = 1; n <= 2; ++n)
    for (const MultiGraph& g : enumerate_four_regular(n))
      for (const char* selector : {"trivial", "one-vertex"}) {
        PropertySpec spec = parse_property_spec(selector);
        auto prop = make_property(spec);
        NiceDecomposition nd = make_nice(g, exact_treewidth(g).second);
        if (!solve(g, nd, *prop, Strategy::dfs).admissible) continue;
        Triangulation t = witness(g, nd, *prop);
        CHECK(is_closed_3manifold(t));
        CHECK(oracle::closed_has_property(Skeleton(t), spec));
        CHECK(canonical_label(face_pairing_graph(t)) == canonical_label(g));
      }
}
