#include "fpg/boundary_config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fpg/property.hpp"

namespace fpg {

namespace {

// xnor: composition of orientation signs (true = same direction)
bool compose(bool a, bool b) { return a == b; }

}  // namespace

std::string to_string(const BoundaryEdgeRef& r) {
  std::ostringstream out;
  out << '(' << to_string(r.face) << ',' << r.lo << r.hi << ')';
  return out.str();
}

const EdgeConfiguration::Match& EdgeConfiguration::at(const BoundaryEdgeRef& r) const {
  auto it = match_.find(r);
  if (it == match_.end())
    throw std::invalid_argument("edge ref " + to_string(r) + " not on the boundary");
  return it->second;
}

void EdgeConfiguration::add_pair(const BoundaryEdgeRef& r1, const BoundaryEdgeRef& r2,
                                 bool orient) {
  for (const BoundaryEdgeRef& r : {r1, r2})
    if (r.lo >= r.hi || !r.face.face.contains(r.lo) || !r.face.face.contains(r.hi))
      throw std::logic_error("edge ref " + to_string(r) + " is not an edge of its face");
  if (r1 == r2) throw std::logic_error("edge ref cannot match itself");
  if (match_.count(r1) || match_.count(r2))
    throw std::logic_error("edge ref already matched");
  match_[r1] = Match{r2, orient};
  match_[r2] = Match{r1, orient};
}

void EdgeConfiguration::erase_pair(const BoundaryEdgeRef& r) {
  auto it = match_.find(r);
  if (it == match_.end()) throw std::logic_error("erasing unmatched edge ref");
  BoundaryEdgeRef partner = it->second.partner;
  match_.erase(it);
  match_.erase(partner);
}

std::vector<std::tuple<BoundaryEdgeRef, BoundaryEdgeRef, bool>> EdgeConfiguration::triples()
    const {
  std::vector<std::tuple<BoundaryEdgeRef, BoundaryEdgeRef, bool>> out;
  for (const auto& [ref, m] : match_)
    if (ref < m.partner) out.emplace_back(ref, m.partner, m.orient);
  return out;
}

VertexConfiguration::VertexConfiguration(std::vector<std::vector<TetVertex>> classes)
    : classes_(std::move(classes)) {
  for (auto& cls : classes_) {
    if (cls.empty()) throw std::logic_error("empty vertex class");
    std::sort(cls.begin(), cls.end());
  }
  std::sort(classes_.begin(), classes_.end());
}

int VertexConfiguration::class_of(const TetVertex& v) const {
  for (size_t i = 0; i < classes_.size(); ++i)
    if (std::binary_search(classes_[i].begin(), classes_[i].end(), v))
      return static_cast<int>(i);
  return -1;
}

int BoundaryConfiguration::boundary_face_count() const {
  return static_cast<int>(boundary_faces().size());
}

std::vector<FaceRef> BoundaryConfiguration::boundary_faces() const {
  std::vector<FaceRef> out;
  for (const auto& [ref, m] : edges.matches())
    if (out.empty() || !(out.back() == ref.face)) out.push_back(ref.face);
  return out;  // map order groups the three refs of a face consecutively
}

std::vector<FaceRef> BoundaryConfiguration::boundary_faces_of(int tet) const {
  std::vector<FaceRef> out;
  for (const FaceRef& f : boundary_faces())
    if (f.tet == tet) out.push_back(f);
  return out;
}

std::string BoundaryConfiguration::canonical_key() const {
  std::string key;
  key.reserve(edges.matches().size() * 4 + vertices.classes().size() * 8 + 8);
  auto put_ref = [&key](const BoundaryEdgeRef& r) {
    key.push_back(static_cast<char>(r.face.tet));
    key.push_back(static_cast<char>(r.face.face.missing * 16 + r.lo * 4 + r.hi));
  };
  for (const auto& [ref, m] : edges.matches()) {
    if (!(ref < m.partner)) continue;
    put_ref(ref);
    put_ref(m.partner);
    key.push_back(m.orient ? 1 : 0);
  }
  key.push_back(127);
  for (const auto& cls : vertices.classes()) {
    for (const TetVertex& tv : cls) key.push_back(static_cast<char>(tv.tet * 4 + tv.vertex));
    key.push_back(126);
  }
  for (int shift = 0; shift < 32; shift += 8)
    key.push_back(static_cast<char>((prop_datum >> shift) & 0xff));
  return key;
}

BoundaryConfiguration BoundaryConfiguration::empty(PropDatum datum) {
  BoundaryConfiguration c;
  c.prop_datum = datum;
  return c;
}

BoundaryConfiguration standalone_config(int tet, PropDatum datum) {
  BoundaryConfiguration c;
  for (int lo = 0; lo < 4; ++lo)
    for (int hi = lo + 1; hi < 4; ++hi) {
      // the two faces sharing edge {lo,hi}
      std::vector<Face> faces;
      for (int m = 0; m < 4; ++m)
        if (m != lo && m != hi) faces.push_back(Face{m});
      BoundaryEdgeRef r1{FaceRef{tet, faces[0]}, lo, hi};
      BoundaryEdgeRef r2{FaceRef{tet, faces[1]}, lo, hi};
      c.edges.add_pair(r1, r2, true);
    }
  std::vector<std::vector<TetVertex>> classes;
  for (int v = 0; v < 4; ++v) classes.push_back({TetVertex{tet, v}});
  c.vertices = VertexConfiguration(std::move(classes));
  c.prop_datum = datum;
  return c;
}

std::optional<BoundaryConfiguration> disjoint_union(const BoundaryConfiguration& c1,
                                                    const BoundaryConfiguration& c2,
                                                    const SimpleProperty& property) {
  std::set<int> tets1, tets2;
  for (const FaceRef& f : c1.boundary_faces()) tets1.insert(f.tet);
  for (const FaceRef& f : c2.boundary_faces()) tets2.insert(f.tet);
  for (int t : tets2)
    if (tets1.count(t))
      throw std::invalid_argument("disjoint_union: tetrahedron " + std::to_string(t) +
                                  " appears in both configurations");

  auto datum = property.combine(c1.prop_datum, c2.prop_datum);
  if (!datum) return std::nullopt;

  BoundaryConfiguration out;
  for (const auto& [r1, r2, o] : c1.edges.triples()) out.edges.add_pair(r1, r2, o);
  for (const auto& [r1, r2, o] : c2.edges.triples()) out.edges.add_pair(r1, r2, o);
  std::vector<std::vector<TetVertex>> classes = c1.vertices.classes();
  for (const auto& cls : c2.vertices.classes()) classes.push_back(cls);
  out.vertices = VertexConfiguration(std::move(classes));
  out.prop_datum = *datum;
  return out;
}

namespace {

// One end of a boundary edge ref: the corner (ref.face, vertex) side of the
// arc segment crossing that edge, vertex in {lo, hi}.
struct EndKey {
  BoundaryEdgeRef ref;
  int vertex = 0;
  friend bool operator==(const EndKey&, const EndKey&) = default;
  friend auto operator<=>(const EndKey&, const EndKey&) = default;
};

// End-level view of the matching: each end links to the corresponding end of
// its partner ref, respecting the orientation bit.
using EndLinks = std::map<EndKey, EndKey>;

EndKey linked_end(const BoundaryEdgeRef& ref, const EdgeConfiguration::Match& m, int vertex) {
  bool at_lo = (vertex == ref.lo);
  int v = m.orient ? (at_lo ? m.partner.lo : m.partner.hi)
                   : (at_lo ? m.partner.hi : m.partner.lo);
  return EndKey{m.partner, v};
}

EndLinks build_end_links(const EdgeConfiguration& edges) {
  EndLinks links;
  for (const auto& [ref, m] : edges.matches()) {
    links[EndKey{ref, ref.lo}] = linked_end(ref, m, ref.lo);
    links[EndKey{ref, ref.hi}] = linked_end(ref, m, ref.hi);
  }
  return links;
}

struct Corner {
  FaceRef face;
  int vertex = 0;
  friend bool operator==(const Corner&, const Corner&) = default;
  friend auto operator<=>(const Corner&, const Corner&) = default;
};

// the two face edges at a corner, each as a boundary edge ref
std::pair<BoundaryEdgeRef, BoundaryEdgeRef> corner_edges(const Corner& c) {
  auto t = c.face.face.triple();
  std::vector<int> others;
  for (int v : t)
    if (v != c.vertex) others.push_back(v);
  auto mk = [&](int w) {
    return BoundaryEdgeRef{c.face, std::min(c.vertex, w), std::max(c.vertex, w)};
  };
  return {mk(others[0]), mk(others[1])};
}

struct CycleVisit {
  Corner corner;
  BoundaryEdgeRef enter;
  BoundaryEdgeRef exit;
};

// Trace the boundary circle through `start`, entering via `enter`.
std::vector<CycleVisit> walk_cycle(const EndLinks& links, const Corner& start,
                                   const BoundaryEdgeRef& enter) {
  std::vector<CycleVisit> visits;
  Corner c = start;
  BoundaryEdgeRef in = enter;
  while (true) {
    auto [e1, e2] = corner_edges(c);
    BoundaryEdgeRef out = (in == e1) ? e2 : e1;
    visits.push_back(CycleVisit{c, in, out});
    auto it = links.find(EndKey{out, c.vertex});
    if (it == links.end()) throw std::logic_error("open chain in edge configuration");
    const EndKey& next = it->second;
    c = Corner{next.ref.face, next.vertex};
    in = next.ref;
    if (c == start && in == enter) return visits;
    if (visits.size() > links.size()) throw std::logic_error("runaway boundary walk");
  }
}

}  // namespace

std::vector<PunctureCycle> puncture_cycles(const BoundaryConfiguration& c) {
  EndLinks links = build_end_links(c.edges);
  std::set<Corner> visited;
  std::vector<PunctureCycle> cycles;
  for (const FaceRef& f : c.boundary_faces()) {
    for (int v : f.face.triple()) {
      Corner corner{f, v};
      if (visited.count(corner)) continue;
      auto [e1, e2] = corner_edges(corner);
      auto visits = walk_cycle(links, corner, e1);
      PunctureCycle cycle;
      cycle.vertex_class = c.vertices.class_of(TetVertex{f.tet, v});
      for (const auto& visit : visits) {
        visited.insert(visit.corner);
        cycle.corners.push_back(PunctureCycle::Visit{
            visit.corner.face, visit.corner.vertex, visit.enter.lo, visit.enter.hi,
            visit.exit.lo, visit.exit.hi});
      }
      cycles.push_back(std::move(cycle));
    }
  }
  return cycles;
}

std::string to_string(RejectReason r) {
  switch (r) {
    case RejectReason::none: return "none";
    case RejectReason::edge_reversal: return "edge_reversal";
    case RejectReason::nonorientable_type_one: return "nonorientable_type_I";
    case RejectReason::type_two: return "type_II";
    case RejectReason::property_reject: return "property_reject";
  }
  return "?";
}

namespace {

ApplyResult rejected(RejectReason why) {
  ApplyResult r;
  r.reason = why;
  return r;
}

}  // namespace

namespace {

// Overlay over the matching so that reject paths never copy it. Entries are
// scanned latest-first; refs on the glued faces are consumed as their edge
// pairs are processed.
struct MatchOverlay {
  const EdgeConfiguration& base;
  std::vector<std::tuple<BoundaryEdgeRef, BoundaryEdgeRef, bool>> links;

  EdgeConfiguration::Match lookup(const BoundaryEdgeRef& r) const {
    for (auto it = links.rbegin(); it != links.rend(); ++it) {
      if (std::get<0>(*it) == r) return {std::get<1>(*it), std::get<2>(*it)};
      if (std::get<1>(*it) == r) return {std::get<0>(*it), std::get<2>(*it)};
    }
    return base.at(r);
  }
};

// Same idea at the level of arc ends while the three corner pairs are
// zipped one after another.
struct EndOverlay {
  const EdgeConfiguration& base;
  std::vector<std::pair<EndKey, EndKey>> links;

  EndKey lookup(const EndKey& e) const {
    for (auto it = links.rbegin(); it != links.rend(); ++it) {
      if (it->first == e) return it->second;
      if (it->second == e) return it->first;
    }
    const auto& m = base.at(e.ref);
    return linked_end(e.ref, m, e.vertex);
  }
};

std::vector<CycleVisit> walk_cycle_overlay(const EndOverlay& links, const Corner& start,
                                           const BoundaryEdgeRef& enter, size_t limit) {
  std::vector<CycleVisit> visits;
  Corner c = start;
  BoundaryEdgeRef in = enter;
  while (true) {
    auto [e1, e2] = corner_edges(c);
    BoundaryEdgeRef out = (in == e1) ? e2 : e1;
    visits.push_back(CycleVisit{c, in, out});
    EndKey next = links.lookup(EndKey{out, c.vertex});
    c = Corner{next.ref.face, next.vertex};
    in = next.ref;
    if (c == start && in == enter) return visits;
    if (visits.size() > limit) throw std::logic_error("runaway boundary walk");
  }
}

}  // namespace

ApplyResult apply_identification(const BoundaryConfiguration& c, const Gluing& g,
                                 const SimpleProperty& property) {
  const auto at = g.a.face.triple();
  // both faces must be on the boundary, with their three refs present
  for (const FaceRef& f : {g.a, g.b}) {
    auto tr = f.face.triple();
    BoundaryEdgeRef probe{f, tr[0], tr[1]};
    if (!c.edges.contains(probe))
      throw std::invalid_argument("face " + to_string(f) + " is not a boundary face");
  }

  // --- edge step: splice the matching, rejecting closures that would
  // identify an edge with itself in reverse ---
  struct EdgePair {
    BoundaryEdgeRef ra, rb;
    bool closes = false;
    BoundaryEdgeRef pa, pb;  // outside partners when splicing
    bool orient = true;
  };
  std::array<EdgePair, 3> edge_pairs;
  {
    MatchOverlay overlay{c.edges, {}};
    size_t k = 0;
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = i + 1; j < 3; ++j) {
        int lo = at[i], hi = at[j];
        int mlo = g.map(lo), mhi = g.map(hi);
        bool s = g.edge_sign(lo, hi);
        BoundaryEdgeRef ra{g.a, lo, hi};
        BoundaryEdgeRef rb{g.b, std::min(mlo, mhi), std::max(mlo, mhi)};
        auto ma = overlay.lookup(ra);
        EdgePair& rec = edge_pairs[k++];
        rec.ra = ra;
        rec.rb = rb;
        if (ma.partner == rb) {
          // the identified refs were already the same triangulation edge: the
          // class closes, consistently only if the signs agree
          if (ma.orient != s) return rejected(RejectReason::edge_reversal);
          rec.closes = true;
        } else {
          auto mb = overlay.lookup(rb);
          rec.pa = ma.partner;
          rec.pb = mb.partner;
          rec.orient = compose(compose(ma.orient, s), mb.orient);
          overlay.links.emplace_back(rec.pa, rec.pb, rec.orient);
        }
      }
  }

  // --- link step: classify the three corner-pair identifications in order,
  // zipping the boundary circles as each one is accepted ---
  EndOverlay links{c.edges, {}};

  // evolving vertex partition over the current classes
  std::vector<int> merge_parent(static_cast<size_t>(c.vertices.class_count()));
  for (size_t i = 0; i < merge_parent.size(); ++i) merge_parent[i] = static_cast<int>(i);
  auto find_class = [&](int x) {
    while (merge_parent[static_cast<size_t>(x)] != x) x = merge_parent[static_cast<size_t>(x)];
    return x;
  };

  size_t walk_limit = c.edges.ref_count() * 2;
  LinkTransition transition;
  for (int v : at) {
    Corner c1{g.a, v};
    Corner c2{g.b, g.map(v)};
    int k1 = find_class(c.vertices.class_of(TetVertex{g.a.tet, v}));
    int k2 = find_class(c.vertices.class_of(TetVertex{g.b.tet, g.map(v)}));

    auto [a1, a2] = corner_edges(c1);  // ends of c1's arc
    // corresponding ends of c2's arc under the identification
    auto image_ref = [&](const BoundaryEdgeRef& r) {
      int x = g.map(r.lo), y = g.map(r.hi);
      return BoundaryEdgeRef{g.b, std::min(x, y), std::max(x, y)};
    };
    BoundaryEdgeRef b1 = image_ref(a1);
    BoundaryEdgeRef b2 = image_ref(a2);

    if (k1 != k2) {
      transition.joins.push_back(JoinKind::distinct_links);
      merge_parent[static_cast<size_t>(k2)] = k1;
    } else {
      // same link: same puncture (zip, needs opposite traversal directions)
      // or distinct punctures (raises genus)
      auto visits = walk_cycle_overlay(links, c1, a1, walk_limit);
      const CycleVisit* v2 = nullptr;
      for (const auto& visit : visits)
        if (visit.corner == c2) {
          v2 = &visit;
          break;
        }
      if (v2 == nullptr) return rejected(RejectReason::type_two);
      // c1 was traversed entering a1, exiting a2; the identification carries
      // that direction to (b1 -> b2) on c2
      if (v2->enter == b1) return rejected(RejectReason::nonorientable_type_one);
      transition.joins.push_back(JoinKind::same_puncture);
    }

    // zip surgery: both arcs leave the boundary; their neighbours join up
    const std::array<EndKey, 4> dead = {EndKey{a1, v}, EndKey{a2, v},
                                        EndKey{b1, g.map(v)}, EndKey{b2, g.map(v)}};
    auto pass = [&](const EndKey& e) -> const EndKey& {
      if (e == dead[0]) return dead[2];
      if (e == dead[2]) return dead[0];
      if (e == dead[1]) return dead[3];
      return dead[1];
    };
    auto is_dead = [&](const EndKey& e) {
      return e == dead[0] || e == dead[1] || e == dead[2] || e == dead[3];
    };
    std::vector<std::pair<EndKey, EndKey>> reconnect;
    for (const EndKey& removed : dead) {
      EndKey outside = links.lookup(removed);
      if (is_dead(outside)) continue;  // both sides vanish together
      // follow the zipped arcs until an end that stays on the boundary
      EndKey u = pass(removed);
      EndKey next = links.lookup(u);
      int guard = 0;
      while (is_dead(next)) {
        u = pass(next);
        next = links.lookup(u);
        if (++guard > 4) throw std::logic_error("zip walk failed to exit");
      }
      reconnect.emplace_back(outside, next);
    }
    for (const auto& r : reconnect) links.links.push_back(r);
  }

  // --- vertex step: merge classes, drop the glued faces' corners, and spot
  // links whose boundary just vanished ---
  std::set<TetVertex> still_on_boundary;
  for (const auto& [ref, m] : c.edges.matches()) {
    (void)m;
    if (ref.face == g.a || ref.face == g.b) continue;
    for (int w : ref.face.face.triple()) still_on_boundary.insert(TetVertex{ref.face.tet, w});
  }
  std::map<int, std::vector<TetVertex>> merged;  // merged root -> surviving members
  std::set<int> roots;
  for (int k = 0; k < c.vertices.class_count(); ++k) {
    int root = find_class(k);
    roots.insert(root);
    for (const TetVertex& tv : c.vertices.classes()[static_cast<size_t>(k)])
      if (still_on_boundary.count(tv)) merged[root].push_back(tv);
  }
  int closed = 0;
  for (int root : roots)
    if (!merged.count(root)) ++closed;
  transition.vertex_classes_closed = closed;

  // --- property step ---
  auto datum = property.on_identification(transition, c.prop_datum);
  if (!datum) return rejected(RejectReason::property_reject);

  // accepted: materialize the spliced matching and the merged partition
  EdgeConfiguration spliced = c.edges;
  for (const EdgePair& rec : edge_pairs) {
    if (rec.closes) {
      spliced.erase_pair(rec.ra);
    } else {
      spliced.erase_pair(rec.ra);
      spliced.erase_pair(rec.rb);
      spliced.add_pair(rec.pa, rec.pb, rec.orient);
    }
  }
  std::vector<std::vector<TetVertex>> new_classes;
  for (auto& [root, members] : merged) {
    (void)root;
    new_classes.push_back(std::move(members));
  }

  ApplyResult result;
  BoundaryConfiguration out;
  out.edges = std::move(spliced);
  out.vertices = VertexConfiguration(std::move(new_classes));
  out.prop_datum = *datum;
  result.config = std::move(out);
  result.transition = std::move(transition);
  return result;
}

std::uint64_t count_edge_configurations(int b) {
  if (b < 0 || b % 2 != 0 || 3 * b > 20)
    throw std::invalid_argument("count_edge_configurations: b must be even with 3b <= 20");
  std::uint64_t result = 1;
  for (int i = 3 * b / 2 + 1; i <= 3 * b; ++i) result *= static_cast<std::uint64_t>(i);
  return result;
}

long double bound_boundary_configurations(int b) {
  if (b < 2 || b % 2 != 0)
    throw std::invalid_argument("bound_boundary_configurations: b must be even, >= 2");
  long double matchings = 1.0L;
  for (int i = 3 * b / 2 + 1; i <= 3 * b; ++i) matchings *= static_cast<long double>(i);
  long double base = 2.376L * static_cast<long double>(b) /
                     std::log(static_cast<long double>(3 * b + 1));
  return matchings * std::pow(base, static_cast<long double>(3 * b));
}

BoundaryConfiguration extract_boundary_configuration(const Triangulation& t) {
  BoundaryConfiguration c;
  std::set<BoundaryEdgeRef> done;
  for (const FaceRef& f : t.boundary_faces()) {
    auto tr = f.face.triple();
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = i + 1; j < 3; ++j) {
        BoundaryEdgeRef start{f, tr[i], tr[j]};
        if (done.count(start)) continue;
        // follow the fan of faces around this edge to the far boundary ref
        int tet = f.tet;
        Face cur = f.face;
        int lo = tr[i], hi = tr[j];
        bool sign = true;
        while (true) {
          Face other{-1};
          for (int m = 0; m < 4; ++m)
            if (m != lo && m != hi && !(Face{m} == cur)) other = Face{m};
          FaceRef next{tet, other};
          if (t.is_boundary_face(next)) {
            BoundaryEdgeRef partner{next, lo, hi};
            c.edges.add_pair(start, partner, sign);
            done.insert(start);
            done.insert(partner);
            break;
          }
          auto og = t.gluing_at(next);
          int mlo = og->map(lo), mhi = og->map(hi);
          sign = compose(sign, og->edge_sign(lo, hi));
          tet = og->b.tet;
          cur = og->b.face;
          lo = std::min(mlo, mhi);
          hi = std::max(mlo, mhi);
        }
      }
  }

  Skeleton s(t);
  std::set<TetVertex> on_boundary;
  for (const FaceRef& f : t.boundary_faces())
    for (int v : f.face.triple()) on_boundary.insert(TetVertex{f.tet, v});
  std::vector<std::vector<TetVertex>> classes;
  for (const auto& cls : s.vertex_classes()) {
    std::vector<TetVertex> kept;
    for (const TetVertex& tv : cls)
      if (on_boundary.count(tv)) kept.push_back(tv);
    if (!kept.empty()) classes.push_back(std::move(kept));
  }
  c.vertices = VertexConfiguration(std::move(classes));
  return c;
}

std::string edge_configuration_text(const EdgeConfiguration& e) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [r1, r2, o] : e.triples()) {
    if (!first) out << '\n';
    first = false;
    out << '(' << to_string(r1) << ',' << to_string(r2) << ',' << (o ? 't' : 'f') << ')';
  }
  return out.str();
}

std::string vertex_configuration_text(const VertexConfiguration& v) {
  std::ostringstream out;
  bool first = true;
  for (const auto& cls : v.classes()) {
    if (!first) out << '\n';
    first = false;
    out << '{';
    for (size_t i = 0; i < cls.size(); ++i) {
      if (i) out << ',';
      out << to_string(cls[i]);
    }
    out << '}';
  }
  return out.str();
}

}  // namespace fpg
