#include <stdexcept>
#include <random>
#include <set>

#include "doctest.h"
#include "fpg/triangulation.hpp"

using namespace fpg;

namespace {

// square pyramid from two tetrahedra, one pair of opposing faces identified;
// the apex class {t0:2,t1:2} is pinched
Triangulation pinched_pyramid() {
  return parse_triangulation("2\nt0:012 t1:012\nt0:023 t1:321\n");
}

Triangulation cube() {
  return parse_triangulation(
      "5\n"
      "t0:012 t4:012\n"
      "t1:013 t4:013\n"
      "t2:123 t4:123\n"
      "t3:023 t4:023\n");
}

std::set<std::set<std::string>> class_names(const std::vector<std::vector<TetVertex>>& classes) {
  std::set<std::set<std::string>> out;
  for (const auto& cls : classes) {
    std::set<std::string> names;
    for (const auto& tv : cls) names.insert(to_string(tv));
    out.insert(std::move(names));
  }
  return out;
}

// random gluing sequence on `tets` tetrahedra; keeps only steps that leave a
// partial triangulation when `keep_partial` is set
Triangulation random_triangulation(int tets, int attempts, bool keep_partial, std::mt19937& rng) {
  std::vector<Gluing> chosen;
  auto free_faces = [&]() {
    Triangulation t(tets, chosen);
    return t.boundary_faces();
  };
  for (int i = 0; i < attempts; ++i) {
    auto faces = free_faces();
    if (faces.size() < 2) break;
    size_t x = rng() % faces.size();
    size_t y = rng() % faces.size();
    if (x == y) continue;
    auto bt = faces[y].face.triple();
    std::array<int, 3> image = bt;
    for (int s = static_cast<int>(rng() % 6); s > 0; --s)
      std::next_permutation(image.begin(), image.end());
    chosen.emplace_back(faces[x], faces[y], image);
    if (keep_partial && !is_partial_3manifold(Triangulation(tets, chosen))) chosen.pop_back();
  }
  return Triangulation(tets, chosen);
}

}  // namespace

TEST_CASE("gluing construction and validation") {
  CHECK_THROWS_AS(Gluing(FaceRef{0, Face{3}}, FaceRef{0, Face{3}}, {0, 1, 2}),
                  std::invalid_argument);  // face glued to itself
  CHECK_THROWS_AS(Gluing(FaceRef{0, Face{3}}, FaceRef{1, Face{3}}, {0, 1, 1}),
                  std::invalid_argument);  // not a bijection
  // reusing a face across gluings
  Gluing g1(FaceRef{0, Face{3}}, FaceRef{1, Face{3}}, {0, 1, 2});
  Gluing g2(FaceRef{0, Face{3}}, FaceRef{1, Face{2}}, {0, 1, 3});
  CHECK_THROWS_AS(Triangulation(2, {g1, g2}), std::invalid_argument);
}

TEST_CASE("standalone tetrahedron skeleton") {
  Triangulation t(1);
  Skeleton s(t);
  CHECK(s.edge_class_count() == 6);
  CHECK(s.vertex_class_count() == 4);
  CHECK_FALSE(s.edge_reversal());
  CHECK(t.boundary_face_count() == 4);
  CHECK(is_partial_3manifold(t));
  CHECK_FALSE(is_closed_3manifold(t));  // boundary faces remain
}

TEST_CASE("pinched pyramid vertex classes") {
  Triangulation t = pinched_pyramid();
  Skeleton s(t);
  CHECK(s.vertex_class_count() == 3);
  auto got = class_names(s.vertex_classes());
  std::set<std::set<std::string>> want = {
      {"t0:0", "t1:0", "t1:3"}, {"t0:1", "t0:3", "t1:1"}, {"t0:2", "t1:2"}};
  CHECK(got == want);
  CHECK_FALSE(s.edge_reversal());
}

TEST_CASE("pinched pyramid links") {
  Triangulation t = pinched_pyramid();
  Skeleton s(t);
  int pinched = s.vertex_class_of(TetVertex{0, 2});
  CHECK(pinched == s.vertex_class_of(TetVertex{1, 2}));
  VertexLink link = vertex_link(t, s, pinched);
  CHECK(link.connected);
  CHECK(link.orientable);
  CHECK(link.euler_characteristic == 0);
  CHECK(link.boundary_cycle_count == 2);  // sphere with two punctures
  CHECK(link.is_punctured_sphere());

  CHECK(is_partial_3manifold(t));
  CHECK_FALSE(is_closed_3manifold(t));  // pinched, and boundary faces remain
}

TEST_CASE("standalone vertex links are discs") {
  Triangulation t(1);
  Skeleton s(t);
  for (int c = 0; c < 4; ++c) {
    VertexLink link = vertex_link(t, s, c);
    CHECK(link.triangle_count == 1);
    CHECK(link.euler_characteristic == 1);
    CHECK(link.boundary_cycle_count == 1);
    CHECK(link.is_punctured_sphere());
  }
}

TEST_CASE("cube example") {
  Triangulation t = cube();
  CHECK(t.boundary_face_count() == 12);
  Skeleton s(t);
  CHECK(s.vertex_class_count() == 8);
  CHECK(is_partial_3manifold(t));
  CHECK_FALSE(is_closed_3manifold(t));
  for (int c = 0; c < 8; ++c) {
    VertexLink link = vertex_link(t, s, c);
    CHECK(link.is_punctured_sphere());
    CHECK(link.boundary_cycle_count == 1);
  }
}

TEST_CASE("one-gluing fold of a single tetrahedron") {
  // t0:012 <-> t0:013 with 0->0, 1->1, 2->3
  Triangulation t = parse_triangulation("1\nt0:012 t0:013\n");
  CHECK(is_partial_3manifold(t));
  Skeleton s(t);
  CHECK(s.vertex_class_count() == 3);  // {0}, {1}, {2,3}
}

TEST_CASE("face pairing graphs") {
  MultiGraph fpg_pyramid = face_pairing_graph(pinched_pyramid());
  CHECK(fpg_pyramid.node_count() == 2);
  REQUIRE(fpg_pyramid.arc_count() == 2);
  CHECK(fpg_pyramid.arc(0) == MultiGraph::Arc{0, 1});
  CHECK(fpg_pyramid.arc(1) == MultiGraph::Arc{0, 1});

  MultiGraph fpg_cube = face_pairing_graph(cube());
  CHECK(fpg_cube.node_count() == 5);
  REQUIRE(fpg_cube.arc_count() == 4);
  for (const auto& a : fpg_cube.arcs()) CHECK(a.v == 4);
}

TEST_CASE("skeleton signs compose along identifications") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 30; ++trial) {
    Triangulation t = random_triangulation(3, 5, false, rng);
    Skeleton s(t);
    if (s.edge_reversal()) continue;
    for (const Gluing& g : t.gluings()) {
      auto at = g.a.face.triple();
      for (size_t i = 0; i < 3; ++i)
        for (size_t j = i + 1; j < 3; ++j) {
          int lo = at[i], hi = at[j];
          int mlo = g.map(lo), mhi = g.map(hi);
          TetEdge e1{g.a.tet, lo, hi};
          TetEdge e2{g.b.tet, std::min(mlo, mhi), std::max(mlo, mhi)};
          CHECK(s.edge_class_of(e1) == s.edge_class_of(e2));
          CHECK((s.edge_sign_of(e1) == s.edge_sign_of(e2)) == g.edge_sign(lo, hi));
        }
    }
  }
}

TEST_CASE("removing a gluing or a tetrahedron preserves partiality") {
  std::mt19937 rng(555);
  for (int trial = 0; trial < 20; ++trial) {
    Triangulation t = random_triangulation(3, 6, true, rng);
    REQUIRE(is_partial_3manifold(t));
    // drop one gluing
    for (size_t skip = 0; skip < t.gluings().size(); ++skip) {
      std::vector<Gluing> rest;
      for (size_t i = 0; i < t.gluings().size(); ++i)
        if (i != skip) rest.push_back(t.gluings()[i]);
      CHECK(is_partial_3manifold(Triangulation(t.tet_count(), rest)));
    }
    // drop the last tetrahedron and everything touching it
    int last = t.tet_count() - 1;
    std::vector<Gluing> rest;
    for (const Gluing& g : t.gluings())
      if (g.a.tet != last && g.b.tet != last) rest.push_back(g);
    CHECK(is_partial_3manifold(Triangulation(last, rest)));
  }
}

TEST_CASE("links never exceed Euler characteristic 2") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    Triangulation t = random_triangulation(2, 4, false, rng);
    Skeleton s(t);
    for (int c = 0; c < s.vertex_class_count(); ++c) {
      VertexLink link = vertex_link(t, s, c);
      CHECK(link.euler_characteristic <= 2);
      if (link.euler_characteristic == 2) CHECK(link.boundary_cycle_count == 0);
    }
  }
}

TEST_CASE("boundary vertices are exactly those with punctured links") {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 20; ++trial) {
    Triangulation t = random_triangulation(3, 6, true, rng);
    Skeleton s(t);
    std::set<int> on_boundary;
    for (const FaceRef& f : t.boundary_faces())
      for (int v : f.face.triple()) on_boundary.insert(s.vertex_class_of(TetVertex{f.tet, v}));
    for (int c = 0; c < s.vertex_class_count(); ++c) {
      VertexLink link = vertex_link(t, s, c);
      CHECK((link.boundary_cycle_count >= 1) == (on_boundary.count(c) > 0));
    }
  }
}

TEST_CASE("triangulation text round trip") {
  Triangulation t = pinched_pyramid();
  Triangulation u = parse_triangulation(serialize_triangulation(t));
  CHECK(u.tet_count() == t.tet_count());
  CHECK(u.gluings() == t.gluings());
  CHECK(serialize_triangulation(u) == serialize_triangulation(t));
}

TEST_CASE("partial predicate agrees with the per-link reference") {
  auto slow_partial = [](const Triangulation& t) {
    Skeleton s(t);
    if (s.edge_reversal()) return false;
    for (int c = 0; c < s.vertex_class_count(); ++c)
      if (!vertex_link(t, s, c).is_punctured_sphere()) return false;
    return true;
  };
  auto slow_closed = [&](const Triangulation& t) {
    if (!t.is_connected()) return false;
    Skeleton s(t);
    if (s.edge_reversal()) return false;
    for (int c = 0; c < s.vertex_class_count(); ++c)
      if (!vertex_link(t, s, c).is_sphere()) return false;
    return true;
  };

  // all single gluings of one tetrahedron
  for (int m1 = 3; m1 >= 0; --m1)
    for (int m2 = m1 - 1; m2 >= 0; --m2) {
      std::array<int, 3> image = Face{m2}.triple();
      std::sort(image.begin(), image.end());
      do {
        Triangulation t(1, {Gluing(FaceRef{0, Face{m1}}, FaceRef{0, Face{m2}}, image)});
        CHECK(is_partial_3manifold(t) == slow_partial(t));
        CHECK(is_closed_3manifold(t) == slow_closed(t));
      } while (std::next_permutation(image.begin(), image.end()));
    }

  // random gluing stacks on up to three tetrahedra
  std::mt19937 rng(60181);
  for (int trial = 0; trial < 150; ++trial) {
    Triangulation t = random_triangulation(2 + static_cast<int>(rng() % 2), 5, false, rng);
    CHECK(is_partial_3manifold(t) == slow_partial(t));
    CHECK(is_closed_3manifold(t) == slow_closed(t));
  }
}
