#pragma once

#include <memory>
#include <optional>
#include <string>

#include "fpg/boundary_config.hpp"

namespace fpg {

/// Pluggable triangulation property maintained alongside boundary
/// configurations. Implementations are pure: the hooks see only
/// configuration-level data, never the triangulation or its size.
///
/// Hooks return nothing to reject: a rejected datum can never lead to an
/// acceptable closed triangulation, so the search drops it on the spot.
class SimpleProperty {
public:
  virtual ~SimpleProperty() = default;

  /// Datum of one standalone tetrahedron (also of the empty triangulation).
  virtual PropDatum initial() const = 0;
  /// Datum of a disjoint union.
  virtual std::optional<PropDatum> combine(PropDatum a, PropDatum b) const = 0;
  /// Datum after one accepted face identification.
  virtual std::optional<PropDatum> on_identification(const LinkTransition& t,
                                                     PropDatum d) const = 0;
  /// Verdict on a closed triangulation (empty edge and vertex configurations).
  virtual bool accepts_closed(PropDatum d) const = 0;
  /// Size of the datum universe.
  virtual std::size_t datum_count() const = 0;
  virtual std::string name() const = 0;
};

std::unique_ptr<SimpleProperty> trivial_property();
/// At most x internal vertices (vertices whose links are 2-spheres).
std::unique_ptr<SimpleProperty> max_internal_vertices(int x);
/// Exactly one vertex; every vertex of a closed triangulation is internal.
std::unique_ptr<SimpleProperty> exactly_one_vertex();

/// Parsed CLI selector: "trivial", "one-vertex" or "max-internal=K".
struct PropertySpec {
  enum class Kind { trivial, one_vertex, max_internal };
  Kind kind = Kind::trivial;
  int max_internal = 0;

  std::string selector() const;
};

PropertySpec parse_property_spec(const std::string& selector);
std::unique_ptr<SimpleProperty> make_property(const PropertySpec& spec);

}  // namespace fpg
