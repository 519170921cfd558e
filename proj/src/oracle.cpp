#include "fpg/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace fpg {
namespace oracle {

namespace {

struct Search {
  const MultiGraph& graph;
  const std::function<bool(const Triangulation&)>& visit;
  bool prune;

  std::vector<Gluing> chosen;
  std::vector<bool> face_used;  // tet*4 + missing
  bool stopped = false;

  Search(const MultiGraph& g, const std::function<bool(const Triangulation&)>& v, bool p)
      : graph(g), visit(v), prune(p),
        face_used(static_cast<size_t>(g.node_count()) * 4, false) {}

  bool used(const FaceRef& f) const {
    return face_used[static_cast<size_t>(f.tet) * 4 + static_cast<size_t>(f.face.missing)];
  }
  void set_used(const FaceRef& f, bool u) {
    face_used[static_cast<size_t>(f.tet) * 4 + static_cast<size_t>(f.face.missing)] = u;
  }

  std::vector<Face> free_faces(int tet) const {
    std::vector<Face> out;
    for (int m = 3; m >= 0; --m)  // ascending triple order
      if (!used(FaceRef{tet, Face{m}})) out.push_back(Face{m});
    return out;
  }

  // canonical order within a run of parallel arcs: the face chosen on the
  // first endpoint must increase from one arc of the group to the next
  bool violates_group_order(int arc_id, const Face& first_face) const {
    if (arc_id == 0) return false;
    const auto& prev = graph.arc(arc_id - 1);
    const auto& cur = graph.arc(arc_id);
    if (!(prev == cur)) return false;
    const Gluing& prev_gluing = chosen[static_cast<size_t>(arc_id - 1)];
    return !(prev_gluing.a.face < first_face);
  }

  void run(int arc_id) {
    if (stopped) return;
    if (arc_id == graph.arc_count()) {
      if (!visit(Triangulation(graph.node_count(), chosen))) stopped = true;
      return;
    }
    const auto& arc = graph.arc(arc_id);
    if (arc.is_loop()) {
      for (Face f1 : free_faces(arc.u)) {
        if (violates_group_order(arc_id, f1)) continue;
        for (Face f2 : free_faces(arc.u)) {
          if (!(f1 < f2)) continue;
          try_gluings(arc_id, FaceRef{arc.u, f1}, FaceRef{arc.u, f2});
          if (stopped) return;
        }
      }
    } else {
      for (Face f1 : free_faces(arc.u)) {
        if (violates_group_order(arc_id, f1)) continue;
        for (Face f2 : free_faces(arc.v)) {
          try_gluings(arc_id, FaceRef{arc.u, f1}, FaceRef{arc.v, f2});
          if (stopped) return;
        }
      }
    }
  }

  void try_gluings(int arc_id, FaceRef fa, FaceRef fb) {
    auto bt = fb.face.triple();
    std::array<int, 3> image = bt;
    std::sort(image.begin(), image.end());
    do {
      Gluing g(fa, fb, image);
      chosen.push_back(g);
      set_used(fa, true);
      set_used(fb, true);
      bool viable = true;
      if (prune) viable = is_partial_3manifold(Triangulation(graph.node_count(), chosen));
      if (viable) run(arc_id + 1);
      set_used(fa, false);
      set_used(fb, false);
      chosen.pop_back();
      if (stopped) return;
    } while (std::next_permutation(image.begin(), image.end()));
  }
};

void check_guard(const MultiGraph& g, const Options& opts) {
  int guard = std::min(opts.node_guard, 4);
  if (g.node_count() > guard)
    throw std::invalid_argument("oracle: graph has " + std::to_string(g.node_count()) +
                                " nodes, guard is " + std::to_string(guard));
  auto d = validate(g);
  if (!d.four_regular) throw std::invalid_argument("oracle: graph is not 4-regular");
  if (!d.connected) throw std::invalid_argument("oracle: graph is not connected");
}

}  // namespace

void enumerate_triangulations(const MultiGraph& g,
                              const std::function<bool(const Triangulation&)>& visit,
                              const Options& opts) {
  check_guard(g, opts);
  Search s(g, visit, opts.prune);
  s.run(0);
}

std::vector<Triangulation> all_triangulations(const MultiGraph& g, const Options& opts) {
  std::vector<Triangulation> out;
  enumerate_triangulations(
      g,
      [&](const Triangulation& t) {
        out.push_back(t);
        return true;
      },
      opts);
  return out;
}

bool closed_has_property(const Skeleton& skel, const PropertySpec& spec) {
  switch (spec.kind) {
    case PropertySpec::Kind::trivial: return true;
    case PropertySpec::Kind::one_vertex: return skel.vertex_class_count() == 1;
    case PropertySpec::Kind::max_internal:
      // every vertex of a closed triangulation is internal
      return skel.vertex_class_count() <= spec.max_internal;
  }
  return false;
}

bool admissible(const MultiGraph& g, const PropertySpec& spec, const Options& opts) {
  bool found = false;
  enumerate_triangulations(
      g,
      [&](const Triangulation& t) {
        if (is_closed_3manifold(t) && closed_has_property(Skeleton(t), spec)) {
          found = true;
          return false;
        }
        return true;
      },
      opts);
  return found;
}

std::uint64_t count_closed(const MultiGraph& g, const PropertySpec& spec, const Options& opts) {
  std::uint64_t count = 0;
  enumerate_triangulations(
      g,
      [&](const Triangulation& t) {
        if (is_closed_3manifold(t) && closed_has_property(Skeleton(t), spec)) ++count;
        return true;
      },
      opts);
  return count;
}

}  // namespace oracle
}  // namespace fpg
