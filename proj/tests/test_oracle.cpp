#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "fpg/oracle.hpp"

using namespace fpg;

namespace {

MultiGraph double_loop() { return parse_graph("1 2\n0 0\n0 0\n"); }
MultiGraph four_parallel() { return parse_graph("2 4\n0 1\n0 1\n0 1\n0 1\n"); }

}  // namespace

TEST_CASE("double loop assignment space has 108 complete assignments") {
  oracle::Options unpruned;
  unpruned.prune = false;
  int count = 0;
  oracle::enumerate_triangulations(double_loop(), [&](const Triangulation& t) {
    CHECK(t.boundary_face_count() == 0);
    ++count;
    return true;
  }, unpruned);
  CHECK(count == 108);
}

TEST_CASE("yielded triangulations realize the input graph") {
  oracle::enumerate_triangulations(four_parallel(), [&](const Triangulation& t) {
    MultiGraph g = face_pairing_graph(t);
    CHECK(g.node_count() == 2);
    CHECK(g.arc_count() == 4);
    for (const auto& a : g.arcs()) CHECK(a == MultiGraph::Arc{0, 1});
    if (is_closed_3manifold(t)) CHECK(validate(g).four_regular);
    return true;
  });
}

TEST_CASE("pruning changes neither verdicts nor closed counts") {
  PropertySpec trivial;
  oracle::Options pruned, unpruned;
  unpruned.prune = false;
  for (int n = 1; n <= 2; ++n)
    for (const MultiGraph& g : enumerate_four_regular(n)) {
      CHECK(oracle::count_closed(g, trivial, pruned) ==
            oracle::count_closed(g, trivial, unpruned));
      CHECK(oracle::admissible(g, trivial, pruned) == oracle::admissible(g, trivial, unpruned));
    }
}

TEST_CASE("closed counts are monotone in the property") {
  PropertySpec trivial;
  PropertySpec one_vertex;
  one_vertex.kind = PropertySpec::Kind::one_vertex;
  for (int n = 1; n <= 2; ++n)
    for (const MultiGraph& g : enumerate_four_regular(n)) {
      auto all = oracle::count_closed(g, trivial);
      auto one = oracle::count_closed(g, one_vertex);
      CHECK(one <= all);
      CHECK((all > 0) == oracle::admissible(g, trivial));
      CHECK((one > 0) == oracle::admissible(g, one_vertex));
    }
}

TEST_CASE("the double loop is admissible") {
  PropertySpec trivial;
  CHECK(oracle::admissible(double_loop(), trivial));
  CHECK(oracle::count_closed(double_loop(), trivial) > 0);
}

TEST_CASE("guards reject unsuitable graphs") {
  PropertySpec trivial;
  CHECK_THROWS_AS(oracle::admissible(parse_graph("2 4\n0 0\n0 0\n1 1\n1 1\n"), trivial),
                  std::invalid_argument);  // disconnected
  CHECK_THROWS_AS(oracle::admissible(parse_graph("1 1\n0 0\n"), trivial),
                  std::invalid_argument);  // not 4-regular
  MultiGraph big = enumerate_four_regular(5).front();
  CHECK_THROWS_AS(oracle::admissible(big, trivial), std::invalid_argument);  // over guard
}

TEST_CASE("max-internal oracle check counts vertex classes") {
  PropertySpec cap0;
  cap0.kind = PropertySpec::Kind::max_internal;
  cap0.max_internal = 0;
  // a closed triangulation always has at least one vertex
  CHECK_FALSE(oracle::admissible(double_loop(), cap0));

  PropertySpec cap8;
  cap8.kind = PropertySpec::Kind::max_internal;
  cap8.max_internal = 8;
  PropertySpec trivial;
  CHECK(oracle::admissible(double_loop(), cap8) == oracle::admissible(double_loop(), trivial));
}

TEST_CASE("closed is exactly partial, connected, and without boundary") {
  PropertySpec trivial;
  (void)trivial;
  for (int n = 1; n <= 2; ++n)
    for (const MultiGraph& g : enumerate_four_regular(n))
      oracle::enumerate_triangulations(g, [&](const Triangulation& t) {
        bool equivalent =
            is_partial_3manifold(t) && t.is_connected() && t.boundary_face_count() == 0;
        CHECK(is_closed_3manifold(t) == equivalent);
        return true;
      });
}

namespace {

// independent enumerator without the parallel-arc ordering: every arc takes
// every free face pair and symmetry
void enumerate_unordered(const MultiGraph& g, std::vector<Triangulation>* out) {
  std::vector<Gluing> chosen;
  std::function<void(int)> rec = [&](int arc_id) {
    if (arc_id == g.arc_count()) {
      out->push_back(Triangulation(g.node_count(), chosen));
      return;
    }
    Triangulation t(g.node_count(), chosen);
    const auto& arc = g.arc(arc_id);
    auto faces_u = t.boundary_faces();
    for (const FaceRef& fa : faces_u) {
      if (fa.tet != arc.u) continue;
      for (const FaceRef& fb : faces_u) {
        if (fb.tet != arc.v) continue;
        if (arc.is_loop() && !(fa.face < fb.face)) continue;
        if (fa == fb) continue;
        std::array<int, 3> image = fb.face.triple();
        std::sort(image.begin(), image.end());
        do {
          chosen.emplace_back(fa, fb, image);
          rec(arc_id + 1);
          chosen.pop_back();
        } while (std::next_permutation(image.begin(), image.end()));
      }
    }
  };
  rec(0);
}

std::string gluing_set_key(const Triangulation& t) {
  std::vector<std::string> lines;
  std::istringstream in(serialize_triangulation(t));
  std::string line;
  std::getline(in, line);  // drop the count
  while (std::getline(in, line)) lines.push_back(line);
  std::sort(lines.begin(), lines.end());
  std::string key;
  for (const auto& l : lines) key += l + "\n";
  return key;
}

}  // namespace

TEST_CASE("parallel-arc ordering only removes duplicate assignments") {
  oracle::Options unpruned;
  unpruned.prune = false;
  for (int n = 1; n <= 2; ++n)
    for (const MultiGraph& g : enumerate_four_regular(n)) {
      std::set<std::string> canonical;
      oracle::enumerate_triangulations(g, [&](const Triangulation& t) {
        canonical.insert(gluing_set_key(t));
        return true;
      }, unpruned);
      std::vector<Triangulation> everything;
      enumerate_unordered(g, &everything);
      std::set<std::string> unordered;
      for (const Triangulation& t : everything) unordered.insert(gluing_set_key(t));
      CHECK(canonical == unordered);
      CHECK(everything.size() >= canonical.size());
    }
}
