#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpg/triangulation.hpp"

namespace fpg {

class SimpleProperty;

/// Extra per-configuration datum maintained by a SimpleProperty.
using PropDatum = std::int32_t;

/// An edge of a boundary face; {lo,hi} is a 2-subset of the face's triple
/// and lo < hi is the reference orientation.
struct BoundaryEdgeRef {
  FaceRef face;
  int lo = 0;
  int hi = 1;
  friend bool operator==(const BoundaryEdgeRef&, const BoundaryEdgeRef&) = default;
  friend auto operator<=>(const BoundaryEdgeRef&, const BoundaryEdgeRef&) = default;
};

std::string to_string(const BoundaryEdgeRef& r);  // "(t0:013,03)"

/// Perfect matching over all boundary edge refs, with an orientation bit per
/// matched pair (true when the identified edges agree in their reference
/// orientations).
class EdgeConfiguration {
public:
  struct Match {
    BoundaryEdgeRef partner;
    bool orient = true;
    friend bool operator==(const Match&, const Match&) = default;
  };

  bool empty() const { return match_.size() == 0; }
  std::size_t ref_count() const { return match_.size(); }
  bool contains(const BoundaryEdgeRef& r) const { return match_.count(r) > 0; }
  const Match& at(const BoundaryEdgeRef& r) const;

  void add_pair(const BoundaryEdgeRef& r1, const BoundaryEdgeRef& r2, bool orient);
  /// Removes r and its partner.
  void erase_pair(const BoundaryEdgeRef& r);

  /// Each matched pair once, first ref < second, sorted by first ref.
  std::vector<std::tuple<BoundaryEdgeRef, BoundaryEdgeRef, bool>> triples() const;
  const std::map<BoundaryEdgeRef, Match>& matches() const { return match_; }

  friend bool operator==(const EdgeConfiguration&, const EdgeConfiguration&) = default;

private:
  std::map<BoundaryEdgeRef, Match> match_;
};

/// Partition of the tetrahedron vertices that lie on boundary faces, two
/// vertices sharing a class exactly when they are identified in the
/// triangulation. Kept canonical: classes sorted internally and ordered by
/// first member.
class VertexConfiguration {
public:
  VertexConfiguration() = default;
  explicit VertexConfiguration(std::vector<std::vector<TetVertex>> classes);

  int class_count() const { return static_cast<int>(classes_.size()); }
  const std::vector<std::vector<TetVertex>>& classes() const { return classes_; }
  /// Index of the class holding v, or -1.
  int class_of(const TetVertex& v) const;
  bool empty() const { return classes_.empty(); }

  friend bool operator==(const VertexConfiguration&, const VertexConfiguration&) = default;

private:
  std::vector<std::vector<TetVertex>> classes_;
};

/// The complete DP state for a partial triangulation: how boundary edges are
/// matched, how boundary vertices are identified, and the property datum.
/// Values; all operations return fresh configurations.
struct BoundaryConfiguration {
  EdgeConfiguration edges;
  VertexConfiguration vertices;
  PropDatum prop_datum = 0;

  int boundary_face_count() const;
  std::vector<FaceRef> boundary_faces() const;
  std::vector<FaceRef> boundary_faces_of(int tet) const;
  bool is_empty_boundary() const { return edges.empty() && vertices.empty(); }

  /// Structural identity including the property datum; equal keys iff equal
  /// configurations.
  std::string canonical_key() const;

  friend bool operator==(const BoundaryConfiguration&, const BoundaryConfiguration&) = default;

  static BoundaryConfiguration empty(PropDatum datum);
};

/// Configuration of one standalone tetrahedron: four boundary faces, each
/// tetrahedron edge matched across its two face incidences, four singleton
/// vertex classes.
BoundaryConfiguration standalone_config(int tet, PropDatum datum);

/// Union of configurations over disjoint tetrahedron index sets. Returns
/// nothing when the property rejects the combined datum; throws if the tet
/// sets overlap.
std::optional<BoundaryConfiguration> disjoint_union(const BoundaryConfiguration& c1,
                                                    const BoundaryConfiguration& c2,
                                                    const SimpleProperty& property);

/// One boundary circle of a vertex link, traced through the edge matching.
/// Corners are (boundary face, vertex) incidences; each appears on exactly
/// one cycle, with the traversal entering and leaving through the two face
/// edges at that vertex.
struct PunctureCycle {
  struct Visit {
    FaceRef face;
    int vertex = 0;
    int enter_lo = 0, enter_hi = 0;  // face edge crossed on entry
    int exit_lo = 0, exit_hi = 0;    // face edge crossed on exit
  };
  int vertex_class = -1;
  std::vector<Visit> corners;
};

std::vector<PunctureCycle> puncture_cycles(const BoundaryConfiguration& c);

enum class RejectReason {
  none,
  edge_reversal,          // an edge would be identified with itself in reverse
  nonorientable_type_one, // same puncture joined to itself preserving direction
  type_two,               // distinct punctures of one link joined
  property_reject,
};

std::string to_string(RejectReason r);

/// The two admissible ways a face identification can join link boundary
/// arcs: zipping one puncture to itself (orientation-reversing), or joining
/// punctures of two distinct links.
enum class JoinKind { same_puncture, distinct_links };

/// What a single accepted identification did to the vertex links.
struct LinkTransition {
  std::vector<JoinKind> joins;       // one entry per corner pair, in order
  int vertex_classes_closed = 0;     // links whose last puncture closed
};

struct ApplyResult {
  std::optional<BoundaryConfiguration> config;
  RejectReason reason = RejectReason::none;
  LinkTransition transition;

  bool accepted() const { return config.has_value(); }
};

/// Applies one face identification between two boundary faces of c,
/// maintaining the matching, the vertex partition and the property datum,
/// and rejecting exactly when the result would stop being a partial
/// 3-manifold triangulation (or the property rejects). Runs in time linear
/// in the number of boundary faces.
ApplyResult apply_identification(const BoundaryConfiguration& c, const Gluing& g,
                                 const SimpleProperty& property);

/// Number of possible edge configurations on b boundary faces:
/// (3b)!/(3b/2)!. Exact; guarded to 3b <= 20.
std::uint64_t count_edge_configurations(int b);

/// Upper bound on the number of boundary configurations on b faces:
/// (3b)!/(3b/2)! * (2.376 b / ln(3b+1))^(3b).
long double bound_boundary_configurations(int b);

/// Ground-truth reconstruction: reads the boundary configuration straight
/// off a triangulation's skeleton and boundary (prop_datum left 0).
BoundaryConfiguration extract_boundary_configuration(const Triangulation& t);

/// Triple notation, one matched pair per line, canonically ordered:
/// "((t0:013,03),(t1:013,13),f)".
std::string edge_configuration_text(const EdgeConfiguration& e);
/// Brace lists, one class per line: "{t0:2,t1:2}".
std::string vertex_configuration_text(const VertexConfiguration& v);

}  // namespace fpg
