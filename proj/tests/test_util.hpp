#pragma once

#include <optional>
#include <random>
#include <vector>

#include "fpg/boundary_config.hpp"
#include "fpg/property.hpp"
#include "fpg/triangulation.hpp"

namespace fpg::testutil {

struct ReplayOutcome {
  std::optional<BoundaryConfiguration> config;
  RejectReason reason = RejectReason::none;
  int rejected_at = -1;  // index of the failing gluing
};

// Rebuild a triangulation's configuration incrementally: start from the
// union of standalone tetrahedra, then apply each gluing in order.
inline ReplayOutcome replay(int tet_count, const std::vector<Gluing>& gluings,
                            const SimpleProperty& property) {
  ReplayOutcome out;
  BoundaryConfiguration cfg = BoundaryConfiguration::empty(property.initial());
  for (int t = 0; t < tet_count; ++t) {
    auto united = disjoint_union(cfg, standalone_config(t, property.initial()), property);
    if (!united) {
      out.reason = RejectReason::property_reject;
      out.rejected_at = -1;
      return out;
    }
    cfg = std::move(*united);
  }
  for (size_t i = 0; i < gluings.size(); ++i) {
    ApplyResult r = apply_identification(cfg, gluings[i], property);
    if (!r.accepted()) {
      out.reason = r.reason;
      out.rejected_at = static_cast<int>(i);
      return out;
    }
    cfg = std::move(*r.config);
  }
  out.config = std::move(cfg);
  return out;
}

inline ReplayOutcome replay(const Triangulation& t, const SimpleProperty& property) {
  return replay(t.tet_count(), t.gluings(), property);
}

// All 6 gluings of two faces, in the fixed permutation order.
inline std::vector<Gluing> six_gluings(const FaceRef& a, const FaceRef& b) {
  std::vector<Gluing> out;
  std::array<int, 3> image = b.face.triple();
  std::sort(image.begin(), image.end());
  do {
    out.emplace_back(a, b, image);
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

// Random gluing sequence on `tets` tetrahedra that stays a partial
// 3-manifold triangulation throughout.
inline Triangulation random_partial(int tets, int attempts, std::mt19937& rng) {
  std::vector<Gluing> chosen;
  for (int i = 0; i < attempts; ++i) {
    Triangulation t(tets, chosen);
    auto faces = t.boundary_faces();
    if (faces.size() < 2) break;
    size_t x = rng() % faces.size();
    size_t y = rng() % faces.size();
    if (x == y) continue;
    auto image = faces[y].face.triple();
    for (int s = static_cast<int>(rng() % 6); s > 0; --s)
      std::next_permutation(image.begin(), image.end());
    chosen.emplace_back(faces[x], faces[y], image);
    if (!is_partial_3manifold(Triangulation(tets, chosen))) chosen.pop_back();
  }
  return Triangulation(tets, chosen);
}

}  // namespace fpg::testutil
