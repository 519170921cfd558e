#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "fpg/multigraph.hpp"

namespace fpg {

/// A face of a tetrahedron, identified by the vertex it omits. Its vertex
/// triple is always handled in ascending order.
struct Face {
  int missing = 3;  // face 012 by default

  std::array<int, 3> triple() const {
    std::array<int, 3> t{};
    int k = 0;
    for (int v = 0; v < 4; ++v)
      if (v != missing) t[static_cast<size_t>(k++)] = v;
    return t;
  }
  bool contains(int v) const { return v != missing && v >= 0 && v < 4; }
  static Face from_triple(int a, int b, int c) { return Face{6 - a - b - c}; }

  friend bool operator==(const Face&, const Face&) = default;
  // order faces by their ascending triple: 012 < 013 < 023 < 123
  friend auto operator<=>(const Face& x, const Face& y) { return y.missing <=> x.missing; }
};

struct FaceRef {
  int tet = 0;
  Face face;
  friend bool operator==(const FaceRef&, const FaceRef&) = default;
  friend auto operator<=>(const FaceRef&, const FaceRef&) = default;
};

struct TetVertex {
  int tet = 0;
  int vertex = 0;
  friend bool operator==(const TetVertex&, const TetVertex&) = default;
  friend auto operator<=>(const TetVertex&, const TetVertex&) = default;
};

/// Tetrahedron edge {lo,hi}; lo < hi is also its reference orientation.
struct TetEdge {
  int tet = 0;
  int lo = 0;
  int hi = 1;
  friend bool operator==(const TetEdge&, const TetEdge&) = default;
  friend auto operator<=>(const TetEdge&, const TetEdge&) = default;
};

/// Affine identification of two distinct faces. image[i] is the vertex of
/// b's triple matched with a.triple()[i]; the six symmetries of a triangle
/// are the six bijections.
struct Gluing {
  FaceRef a;
  FaceRef b;
  std::array<int, 3> image{};

  Gluing() = default;
  Gluing(FaceRef a_, FaceRef b_, std::array<int, 3> image_);

  int map(int v) const;          // vertex of a's triple -> vertex of b's triple
  int inverse_map(int v) const;  // vertex of b's triple -> vertex of a's triple
  /// true if the gluing maps edge {lo,hi} of a orientation-preservingly
  /// (ascending order to ascending order).
  bool edge_sign(int lo, int hi) const { return map(lo) < map(hi); }

  friend bool operator==(const Gluing&, const Gluing&) = default;
};

std::string to_string(const FaceRef& f);   // "t0:013"
std::string to_string(const TetVertex& v); // "t0:2"

/// Tetrahedra plus face gluings; each face is part of at most one gluing.
class Triangulation {
public:
  explicit Triangulation(int tet_count, std::vector<Gluing> gluings = {});

  int tet_count() const { return tet_count_; }
  const std::vector<Gluing>& gluings() const { return gluings_; }

  bool is_boundary_face(const FaceRef& f) const;
  std::vector<FaceRef> boundary_faces() const;
  int boundary_face_count() const;

  /// The gluing involving face f oriented so that its `a` side is f, or
  /// nothing if f is a boundary face.
  std::optional<Gluing> gluing_at(const FaceRef& f) const;

  bool is_connected() const;

private:
  int tet_count_ = 0;
  std::vector<Gluing> gluings_;
  std::vector<int> glued_;  // face slot -> gluing index or -1
};

/// Equivalence classes of tetrahedron edges (with orientation signs) and of
/// tetrahedron vertices under the closure of all face identifications.
class Skeleton {
public:
  explicit Skeleton(const Triangulation& t);

  bool edge_reversal() const { return edge_reversal_; }
  int edge_class_count() const { return static_cast<int>(edge_classes_.size()); }
  int vertex_class_count() const { return static_cast<int>(vertex_classes_.size()); }

  int edge_class_of(const TetEdge& e) const;
  /// Sign of e relative to its class representative (true = same direction).
  bool edge_sign_of(const TetEdge& e) const;
  int vertex_class_of(const TetVertex& v) const;

  const std::vector<std::vector<TetEdge>>& edge_classes() const { return edge_classes_; }
  const std::vector<std::vector<TetVertex>>& vertex_classes() const { return vertex_classes_; }

private:
  int tet_count_;
  bool edge_reversal_ = false;
  std::vector<int> edge_class_ids_;    // per edge slot
  std::vector<bool> edge_signs_;       // per edge slot, relative to class rep
  std::vector<int> vertex_class_ids_;  // per vertex slot
  std::vector<std::vector<TetEdge>> edge_classes_;
  std::vector<std::vector<TetVertex>> vertex_classes_;
};

Skeleton skeleton(const Triangulation& t);

/// The link surface of one vertex class, built explicitly from corner
/// triangles. This is the slow, trusted reference used by the oracle.
struct VertexLink {
  int triangle_count = 0;
  bool connected = false;
  bool orientable = false;
  int euler_characteristic = 0;
  int boundary_cycle_count = 0;

  /// 2-sphere with boundary_cycle_count punctures?
  bool is_punctured_sphere() const {
    return connected && orientable &&
           euler_characteristic + boundary_cycle_count == 2;
  }
  bool is_sphere() const { return is_punctured_sphere() && boundary_cycle_count == 0; }
};

VertexLink vertex_link(const Triangulation& t, const Skeleton& s, int vclass);

/// All vertex links are spheres with zero or more punctures and no edge is
/// identified with itself in reverse. Connectivity is not required.
bool is_partial_3manifold(const Triangulation& t);

/// Connected, all links 2-spheres, no reversed edge.
bool is_closed_3manifold(const Triangulation& t);

/// One node per tetrahedron, one arc per gluing.
MultiGraph face_pairing_graph(const Triangulation& t);

/// Text format: first line is the tetrahedron count; one line per gluing
/// "t0:abc t1:def" meaning a<->d, b<->e, c<->f. '#' starts a comment line.
Triangulation parse_triangulation(const std::string& text);
std::string serialize_triangulation(const Triangulation& t);

}  // namespace fpg
