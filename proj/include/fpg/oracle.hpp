#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fpg/multigraph.hpp"
#include "fpg/property.hpp"
#include "fpg/triangulation.hpp"

namespace fpg {
namespace oracle {

struct Options {
  int node_guard = 3;  // hard ceiling 4
  bool prune = true;   // abandon branches that already fail the partial test
};

/// Visits every complete gluing assignment over the arcs of g, as a
/// Triangulation whose face pairing graph is g. Assignments over a group of
/// parallel arcs are taken in one canonical order, so interchangeable arcs
/// are not enumerated twice. The visitor returns false to stop early.
void enumerate_triangulations(const MultiGraph& g,
                              const std::function<bool(const Triangulation&)>& visit,
                              const Options& opts = {});

std::vector<Triangulation> all_triangulations(const MultiGraph& g, const Options& opts = {});

/// Direct property check on a complete closed triangulation.
bool closed_has_property(const Skeleton& skel, const PropertySpec& spec);

/// Does any closed 3-manifold triangulation with this face pairing graph
/// satisfy the property?
bool admissible(const MultiGraph& g, const PropertySpec& spec, const Options& opts = {});

/// Number of complete assignments yielding closed 3-manifold triangulations
/// with the property (labeled count, no isomorphism quotient).
std::uint64_t count_closed(const MultiGraph& g, const PropertySpec& spec,
                           const Options& opts = {});

}  // namespace oracle
}  // namespace fpg
