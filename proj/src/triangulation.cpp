#include "fpg/triangulation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fpg {

namespace {

// edge {lo,hi} -> 0..5
int edge_index(int lo, int hi) {
  static constexpr int idx[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  int i = idx[lo][hi];
  if (i < 0) throw std::logic_error("degenerate edge");
  return i;
}

// union-find with a boolean sign to the parent (true = same orientation)
struct SignedUnionFind {
  std::vector<int> parent;
  std::vector<bool> sign;  // relative to parent
  bool conflict = false;

  explicit SignedUnionFind(size_t n) : parent(n), sign(n, true) {
    for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }

  std::pair<int, bool> find(int x) const {
    bool s = true;
    while (parent[static_cast<size_t>(x)] != x) {
      s = (s == sign[static_cast<size_t>(x)]);
      x = parent[static_cast<size_t>(x)];
    }
    return {x, s};
  }

  // impose a ~ b with relative sign rel (true = same orientation)
  void unite(int a, int b, bool rel) {
    auto [ra, sa] = find(a);
    auto [rb, sb] = find(b);
    if (ra == rb) {
      if ((sa == sb) != rel) conflict = true;
      return;
    }
    // sign of rb relative to ra: sa * rel * sb
    parent[static_cast<size_t>(rb)] = ra;
    sign[static_cast<size_t>(rb)] = ((sa == rel) == sb);
  }
};

struct PlainUnionFind {
  std::vector<int> parent;
  explicit PlainUnionFind(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<size_t>(b)] = a;
  }
};

}  // namespace

Gluing::Gluing(FaceRef a_, FaceRef b_, std::array<int, 3> image_) : a(a_), b(b_), image(image_) {
  if (a == b) throw std::invalid_argument("gluing identifies a face with itself");
  auto bt = b.face.triple();
  std::array<int, 3> sorted_image = image;
  std::sort(sorted_image.begin(), sorted_image.end());
  if (sorted_image != bt) throw std::invalid_argument("gluing image is not a bijection of face triples");
}

int Gluing::map(int v) const {
  auto at = a.face.triple();
  for (size_t i = 0; i < 3; ++i)
    if (at[i] == v) return image[i];
  throw std::logic_error("vertex not on glued face");
}

int Gluing::inverse_map(int v) const {
  auto at = a.face.triple();
  for (size_t i = 0; i < 3; ++i)
    if (image[i] == v) return at[i];
  throw std::logic_error("vertex not on glued face");
}

std::string to_string(const FaceRef& f) {
  auto t = f.face.triple();
  std::ostringstream out;
  out << 't' << f.tet << ':' << t[0] << t[1] << t[2];
  return out.str();
}

std::string to_string(const TetVertex& v) {
  return "t" + std::to_string(v.tet) + ":" + std::to_string(v.vertex);
}

Triangulation::Triangulation(int tet_count, std::vector<Gluing> gluings)
    : tet_count_(tet_count), gluings_(std::move(gluings)) {
  if (tet_count < 0) throw std::invalid_argument("negative tetrahedron count");
  glued_.assign(static_cast<size_t>(tet_count) * 4, -1);
  auto slot = [&](const FaceRef& f) {
    if (f.tet < 0 || f.tet >= tet_count_) throw std::invalid_argument("gluing references missing tetrahedron");
    return static_cast<size_t>(f.tet) * 4 + static_cast<size_t>(f.face.missing);
  };
  for (size_t i = 0; i < gluings_.size(); ++i) {
    for (const FaceRef& f : {gluings_[i].a, gluings_[i].b}) {
      size_t s = slot(f);
      if (glued_[s] >= 0)
        throw std::invalid_argument("face " + to_string(f) + " used by two gluings");
      glued_[s] = static_cast<int>(i);
    }
  }
}

bool Triangulation::is_boundary_face(const FaceRef& f) const {
  return glued_[static_cast<size_t>(f.tet) * 4 + static_cast<size_t>(f.face.missing)] < 0;
}

std::vector<FaceRef> Triangulation::boundary_faces() const {
  std::vector<FaceRef> out;
  for (int t = 0; t < tet_count_; ++t)
    for (int m = 3; m >= 0; --m) {  // ascending triple order: 012, 013, 023, 123
      FaceRef f{t, Face{m}};
      if (is_boundary_face(f)) out.push_back(f);
    }
  return out;
}

int Triangulation::boundary_face_count() const {
  return 4 * tet_count_ - 2 * static_cast<int>(gluings_.size());
}

std::optional<Gluing> Triangulation::gluing_at(const FaceRef& f) const {
  int gi = glued_[static_cast<size_t>(f.tet) * 4 + static_cast<size_t>(f.face.missing)];
  if (gi < 0) return std::nullopt;
  const Gluing& g = gluings_[static_cast<size_t>(gi)];
  if (g.a == f) return g;
  // flip so that the queried face is the a side
  auto bt = g.b.face.triple();
  std::array<int, 3> inv{};
  for (size_t i = 0; i < 3; ++i) inv[i] = g.inverse_map(bt[i]);
  return Gluing(g.b, g.a, inv);
}

bool Triangulation::is_connected() const {
  if (tet_count_ == 0) return true;
  std::vector<bool> seen(static_cast<size_t>(tet_count_), false);
  std::vector<int> stack = {0};
  seen[0] = true;
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    for (const Gluing& g : gluings_) {
      int other = -1;
      if (g.a.tet == t) other = g.b.tet;
      else if (g.b.tet == t) other = g.a.tet;
      if (other >= 0 && !seen[static_cast<size_t>(other)]) {
        seen[static_cast<size_t>(other)] = true;
        stack.push_back(other);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

Skeleton::Skeleton(const Triangulation& t) : tet_count_(t.tet_count()) {
  size_t nedges = static_cast<size_t>(tet_count_) * 6;
  size_t nverts = static_cast<size_t>(tet_count_) * 4;
  SignedUnionFind edges(nedges);
  PlainUnionFind verts(nverts);

  auto edge_slot = [](int tet, int lo, int hi) {
    return static_cast<int>(tet * 6 + edge_index(lo, hi));
  };
  auto vertex_slot = [](int tet, int v) { return tet * 4 + v; };

  for (const Gluing& g : t.gluings()) {
    auto at = g.a.face.triple();
    for (int v : at) verts.unite(vertex_slot(g.a.tet, v), vertex_slot(g.b.tet, g.map(v)));
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = i + 1; j < 3; ++j) {
        int lo = at[i], hi = at[j];
        int mlo = g.map(lo), mhi = g.map(hi);
        edges.unite(edge_slot(g.a.tet, lo, hi),
                    edge_slot(g.b.tet, std::min(mlo, mhi), std::max(mlo, mhi)),
                    g.edge_sign(lo, hi));
      }
  }
  edge_reversal_ = edges.conflict;

  // dense class ids in order of each class's smallest slot
  edge_class_ids_.assign(nedges, -1);
  edge_signs_.assign(nedges, true);
  std::map<int, std::vector<int>> edge_groups;
  for (size_t s = 0; s < nedges; ++s)
    edge_groups[edges.find(static_cast<int>(s)).first].push_back(static_cast<int>(s));
  static constexpr int edge_lo[6] = {0, 0, 0, 1, 1, 2};
  static constexpr int edge_hi[6] = {1, 2, 3, 2, 3, 3};
  std::vector<std::vector<int>> edge_group_list;
  for (auto& [root, slots] : edge_groups) {
    (void)root;
    edge_group_list.push_back(std::move(slots));
  }
  std::sort(edge_group_list.begin(), edge_group_list.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  for (const auto& slots : edge_group_list) {
    int id = static_cast<int>(edge_classes_.size());
    bool rep_sign = edges.find(slots.front()).second;
    std::vector<TetEdge> members;
    for (int s : slots) {
      edge_class_ids_[static_cast<size_t>(s)] = id;
      edge_signs_[static_cast<size_t>(s)] = (edges.find(s).second == rep_sign);
      members.push_back(TetEdge{s / 6, edge_lo[s % 6], edge_hi[s % 6]});
    }
    edge_classes_.push_back(std::move(members));
  }

  vertex_class_ids_.assign(nverts, -1);
  std::map<int, std::vector<int>> vert_groups;
  for (size_t s = 0; s < nverts; ++s)
    vert_groups[verts.find(static_cast<int>(s))].push_back(static_cast<int>(s));
  std::vector<std::vector<int>> vert_group_list;
  for (auto& [root, slots] : vert_groups) {
    (void)root;
    vert_group_list.push_back(std::move(slots));
  }
  std::sort(vert_group_list.begin(), vert_group_list.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  for (const auto& slots : vert_group_list) {
    int id = static_cast<int>(vertex_classes_.size());
    std::vector<TetVertex> members;
    for (int s : slots) {
      vertex_class_ids_[static_cast<size_t>(s)] = id;
      members.push_back(TetVertex{s / 4, s % 4});
    }
    vertex_classes_.push_back(std::move(members));
  }
}

int Skeleton::edge_class_of(const TetEdge& e) const {
  return edge_class_ids_[static_cast<size_t>(e.tet * 6 + edge_index(e.lo, e.hi))];
}

bool Skeleton::edge_sign_of(const TetEdge& e) const {
  return edge_signs_[static_cast<size_t>(e.tet * 6 + edge_index(e.lo, e.hi))];
}

int Skeleton::vertex_class_of(const TetVertex& v) const {
  return vertex_class_ids_[static_cast<size_t>(v.tet * 4 + v.vertex)];
}

Skeleton skeleton(const Triangulation& t) { return Skeleton(t); }

namespace {

// One corner triangle per (tet, vertex) incidence of the class. The corner's
// three points sit on the tetrahedron edges at the vertex (labelled by the
// opposite endpoint); its three sides cross the tetrahedron faces at the
// vertex (labelled by the face).
struct LinkBuilder {
  const Triangulation& tri;
  std::vector<TetVertex> corners;
  std::map<TetVertex, int> corner_index;

  explicit LinkBuilder(const Triangulation& t, const std::vector<TetVertex>& cs)
      : tri(t), corners(cs) {
    for (size_t i = 0; i < corners.size(); ++i) corner_index[corners[i]] = static_cast<int>(i);
  }

  static std::array<int, 3> others(int v) {
    std::array<int, 3> o{};
    int k = 0;
    for (int w = 0; w < 4; ++w)
      if (w != v) o[static_cast<size_t>(k++)] = w;
    return o;
  }

  int point_id(int corner, int other) const {
    auto o = others(corners[static_cast<size_t>(corner)].vertex);
    for (int r = 0; r < 3; ++r)
      if (o[static_cast<size_t>(r)] == other) return corner * 3 + r;
    throw std::logic_error("bad point label");
  }

  // side of a corner crossing face f; f must contain the corner vertex
  int side_id(int corner, const Face& f) const {
    auto o = others(corners[static_cast<size_t>(corner)].vertex);
    for (int r = 0; r < 3; ++r)
      if (o[static_cast<size_t>(r)] == f.missing) return corner * 3 + r;
    throw std::logic_error("bad side label");
  }

  // reference direction of the side crossing face f, as (from,to) point labels;
  // directions follow the cycle of the corner's three points in ascending order
  std::pair<int, int> side_direction(int corner, const Face& f) const {
    auto o = others(corners[static_cast<size_t>(corner)].vertex);
    if (f.missing == o[2]) return {o[0], o[1]};
    if (f.missing == o[0]) return {o[1], o[2]};
    return {o[2], o[0]};
  }
};

}  // namespace

VertexLink vertex_link(const Triangulation& t, const Skeleton& s, int vclass) {
  const auto& corners = s.vertex_classes().at(static_cast<size_t>(vclass));
  LinkBuilder lb(t, corners);
  int f_count = static_cast<int>(corners.size());

  // the gluing at a corner side, oriented outward, plus the far corner
  auto far_side = [&](int c, Face f) -> std::optional<std::pair<int, Gluing>> {
    TetVertex tv = corners[static_cast<size_t>(c)];
    auto og = t.gluing_at(FaceRef{tv.tet, f});
    if (!og) return std::nullopt;
    int cb = lb.corner_index.at(TetVertex{og->b.tet, og->map(tv.vertex)});
    return std::make_pair(cb, *og);
  };
  auto corner_faces = [&](int c) {
    std::vector<Face> fs;
    for (int m = 0; m < 4; ++m)
      if (m != corners[static_cast<size_t>(c)].vertex) fs.push_back(Face{m});
    return fs;
  };

  // link vertices: point classes under the side identifications
  PlainUnionFind points(static_cast<size_t>(f_count) * 3);
  int glued_side_slots = 0;
  for (int c = 0; c < f_count; ++c) {
    TetVertex tv = corners[static_cast<size_t>(c)];
    for (Face f : corner_faces(c)) {
      auto fs = far_side(c, f);
      if (!fs) continue;
      ++glued_side_slots;
      auto& [cb, og] = *fs;
      for (int w : f.triple())
        if (w != tv.vertex) points.unite(lb.point_id(c, w), lb.point_id(cb, og.map(w)));
    }
  }

  int v_count = 0;
  {
    std::set<int> roots;
    for (int p = 0; p < f_count * 3; ++p) roots.insert(points.find(p));
    v_count = static_cast<int>(roots.size());
  }
  int e_count = f_count * 3 - glued_side_slots / 2;

  VertexLink link;
  link.triangle_count = f_count;
  link.euler_characteristic = v_count - e_count + f_count;

  // connectivity over glued sides
  {
    std::vector<bool> seen(static_cast<size_t>(f_count), false);
    std::vector<int> stack;
    if (f_count > 0) {
      seen[0] = true;
      stack.push_back(0);
    }
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      for (Face f : corner_faces(c))
        if (auto fs = far_side(c, f)) {
          int cb = fs->first;
          if (!seen[static_cast<size_t>(cb)]) {
            seen[static_cast<size_t>(cb)] = true;
            stack.push_back(cb);
          }
        }
    }
    link.connected = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }

  // orientability: propagate triangle orientations; coherently oriented
  // neighbours induce opposite directions on their shared side
  {
    std::vector<int> orient(static_cast<size_t>(f_count), 0);
    bool ok = true;
    for (int start = 0; start < f_count && ok; ++start) {
      if (orient[static_cast<size_t>(start)] != 0) continue;
      orient[static_cast<size_t>(start)] = 1;
      std::vector<int> stack = {start};
      while (!stack.empty() && ok) {
        int c = stack.back();
        stack.pop_back();
        for (Face f : corner_faces(c)) {
          auto fs = far_side(c, f);
          if (!fs) continue;
          auto& [cb, og] = *fs;
          auto [from_a, to_a] = lb.side_direction(c, f);
          int from_b = og.map(from_a);
          int to_b = og.map(to_a);
          auto [rf, rt] = lb.side_direction(cb, og.b.face);
          int rel = (from_b == rf && to_b == rt) ? -1 : 1;
          int want = orient[static_cast<size_t>(c)] * rel;
          int& o2 = orient[static_cast<size_t>(cb)];
          if (o2 == 0) {
            o2 = want;
            stack.push_back(cb);
          } else if (o2 != want) {
            ok = false;
            break;
          }
        }
      }
    }
    link.orientable = ok;
  }

  // boundary circles: connected components of the graph formed by unglued
  // sides over boundary point classes
  {
    PlainUnionFind comp(static_cast<size_t>(f_count) * 3);
    std::set<int> involved;
    for (int c = 0; c < f_count; ++c) {
      TetVertex tv = corners[static_cast<size_t>(c)];
      for (Face f : corner_faces(c)) {
        if (far_side(c, f)) continue;
        std::vector<int> endpoints;
        for (int w : f.triple())
          if (w != tv.vertex) endpoints.push_back(points.find(lb.point_id(c, w)));
        comp.unite(endpoints[0], endpoints[1]);
        involved.insert(endpoints[0]);
        involved.insert(endpoints[1]);
      }
    }
    std::set<int> roots;
    for (int p : involved) roots.insert(comp.find(p));
    link.boundary_cycle_count = static_cast<int>(roots.size());
  }

  return link;
}

namespace {

// Flat-array pass over all links at once; the per-class vertex_link above
// stays as the independent, richly queryable reference.
struct LinkScan {
  bool edge_reversal = false;
  bool orientable = true;
  int corner_count = 0;
  // indexed by corner slot (tet*4 + vertex), valid where root of its class
  std::vector<int> chi;
  std::vector<int> punctures;
  std::vector<int> pieces;  // connected components of the class's link
  std::vector<int> class_root;

  bool all_punctured_spheres() const {
    if (edge_reversal || !orientable) return false;
    for (int c = 0; c < corner_count; ++c)
      if (class_root[static_cast<size_t>(c)] == c) {
        if (pieces[static_cast<size_t>(c)] != 1) return false;
        if (chi[static_cast<size_t>(c)] + punctures[static_cast<size_t>(c)] != 2) return false;
      }
    return true;
  }

  bool all_spheres() const {
    if (edge_reversal || !orientable) return false;
    for (int c = 0; c < corner_count; ++c)
      if (class_root[static_cast<size_t>(c)] == c) {
        if (pieces[static_cast<size_t>(c)] != 1) return false;
        if (chi[static_cast<size_t>(c)] != 2) return false;
        if (punctures[static_cast<size_t>(c)] != 0) return false;
      }
    return true;
  }
};

struct FlatUf {
  std::vector<int> parent;
  explicit FlatUf(int n) : parent(static_cast<size_t>(n)) {
    for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<size_t>(b)] = a;
  }
};

struct FlatSignedUf {
  std::vector<int> parent;
  std::vector<signed char> sign;  // relative to parent, +1 same
  bool conflict = false;
  explicit FlatSignedUf(int n) : parent(static_cast<size_t>(n)), sign(static_cast<size_t>(n), 1) {
    for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
  }
  std::pair<int, int> find(int x) const {
    int s = 1;
    while (parent[static_cast<size_t>(x)] != x) {
      s *= sign[static_cast<size_t>(x)];
      x = parent[static_cast<size_t>(x)];
    }
    return {x, s};
  }
  void unite(int a, int b, int rel) {
    auto [ra, sa] = find(a);
    auto [rb, sb] = find(b);
    if (ra == rb) {
      if (sa * sb != rel) conflict = true;
      return;
    }
    parent[static_cast<size_t>(rb)] = ra;
    sign[static_cast<size_t>(rb)] = static_cast<signed char>(sa * rel * sb);
  }
};

// others[v] = the three vertices != v, ascending; vrank[v][w] = index of w in others[v]
constexpr int kOthers[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
constexpr int rank_of(int v, int w) {
  for (int r = 0; r < 3; ++r)
    if (kOthers[v][r] == w) return r;
  return -1;
}

// reference direction (from,to) of the side of corner v crossing the face
// that omits m, as labels of the opposite vertices
inline std::pair<int, int> side_dir(int v, int m) {
  const int* o = kOthers[v];
  if (m == o[2]) return {o[0], o[1]};
  if (m == o[0]) return {o[1], o[2]};
  return {o[2], o[0]};
}

LinkScan scan_links(const Triangulation& t) {
  const int n = t.tet_count();
  LinkScan scan;
  scan.corner_count = 4 * n;
  if (n == 0) return scan;

  FlatSignedUf edges(6 * n);
  FlatUf verts(4 * n);
  FlatSignedUf corner_orient(4 * n);
  FlatUf points(12 * n);
  std::vector<int> side_partner(static_cast<size_t>(12 * n), -1);

  for (const Gluing& g : t.gluings()) {
    auto at = g.a.face.triple();
    for (size_t i = 0; i < 3; ++i) {
      int v = at[i];
      int mv = g.image[i];
      int ca = g.a.tet * 4 + v;
      int cb = g.b.tet * 4 + mv;
      verts.unite(ca, cb);

      int sa = ca * 3 + rank_of(v, g.a.face.missing);
      int sb = cb * 3 + rank_of(mv, g.b.face.missing);
      side_partner[static_cast<size_t>(sa)] = sb;
      side_partner[static_cast<size_t>(sb)] = sa;

      for (size_t j = 0; j < 3; ++j) {
        if (j == i) continue;
        int w = at[j];
        points.unite(ca * 3 + rank_of(v, w), cb * 3 + rank_of(mv, g.image[j]));
      }

      auto [fa, ta] = side_dir(v, g.a.face.missing);
      auto [fb, tb] = side_dir(mv, g.b.face.missing);
      int rel = (g.map(fa) == fb && g.map(ta) == tb) ? -1 : 1;
      corner_orient.unite(ca, cb, rel);

      for (size_t j = i + 1; j < 3; ++j) {
        int lo = at[i], hi = at[j];
        int mlo = g.image[i], mhi = g.image[j];
        static constexpr int eidx[4][4] = {
            {-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
        edges.unite(g.a.tet * 6 + eidx[lo][hi],
                    g.b.tet * 6 + eidx[std::min(mlo, mhi)][std::max(mlo, mhi)],
                    mlo < mhi ? 1 : -1);
      }
    }
  }
  scan.edge_reversal = edges.conflict;
  scan.orientable = !corner_orient.conflict;

  scan.class_root.resize(static_cast<size_t>(4 * n));
  scan.chi.assign(static_cast<size_t>(4 * n), 0);
  scan.punctures.assign(static_cast<size_t>(4 * n), 0);
  scan.pieces.assign(static_cast<size_t>(4 * n), 0);
  for (int c = 0; c < 4 * n; ++c) scan.class_root[static_cast<size_t>(c)] = verts.find(c);

  // chi = V - E + F accumulated per class: each corner contributes one
  // triangle and three sides (glued sides counted half)
  std::vector<int> twice_chi(static_cast<size_t>(4 * n), 0);
  for (int c = 0; c < 4 * n; ++c) {
    int root = scan.class_root[static_cast<size_t>(c)];
    twice_chi[static_cast<size_t>(root)] += 2 - 6;  // F and the 3 sides, doubled
    for (int r = 0; r < 3; ++r)
      if (side_partner[static_cast<size_t>(c * 3 + r)] >= 0)
        twice_chi[static_cast<size_t>(root)] += 1;  // a glued slot is half an edge
  }
  for (int c = 0; c < 4 * n; ++c)
    if (corner_orient.find(c).first == c)
      scan.pieces[static_cast<size_t>(scan.class_root[static_cast<size_t>(c)])] += 1;
  for (int p = 0; p < 12 * n; ++p)
    if (points.find(p) == p)
      twice_chi[static_cast<size_t>(scan.class_root[static_cast<size_t>(p / 3)])] += 2;
  for (int c = 0; c < 4 * n; ++c)
    if (scan.class_root[static_cast<size_t>(c)] == c)
      scan.chi[static_cast<size_t>(c)] = twice_chi[static_cast<size_t>(c)] / 2;

  // boundary circles: components of the unglued-side graph over point classes
  FlatUf bcycles(12 * n);
  std::vector<char> involved(static_cast<size_t>(12 * n), 0);
  for (int c = 0; c < 4 * n; ++c) {
    int v = c % 4;
    for (int r = 0; r < 3; ++r) {
      if (side_partner[static_cast<size_t>(c * 3 + r)] >= 0) continue;
      int m = kOthers[v][r];
      int p1 = -1, p2 = -1;
      for (int q = 0; q < 3; ++q) {
        if (kOthers[v][q] == m) continue;
        int root = points.find(c * 3 + q);
        if (p1 < 0) p1 = root;
        else p2 = root;
      }
      bcycles.unite(p1, p2);
      involved[static_cast<size_t>(p1)] = 1;
      involved[static_cast<size_t>(p2)] = 1;
    }
  }
  for (int p = 0; p < 12 * n; ++p)
    if (involved[static_cast<size_t>(p)] && bcycles.find(p) == p)
      scan.punctures[static_cast<size_t>(scan.class_root[static_cast<size_t>(p / 3)])] += 1;

  return scan;
}

}  // namespace

bool is_partial_3manifold(const Triangulation& t) {
  return scan_links(t).all_punctured_spheres();
}

bool is_closed_3manifold(const Triangulation& t) {
  return t.is_connected() && scan_links(t).all_spheres();
}

MultiGraph face_pairing_graph(const Triangulation& t) {
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(t.gluings().size());
  for (const Gluing& g : t.gluings()) arcs.emplace_back(g.a.tet, g.b.tet);
  return MultiGraph(t.tet_count(), arcs);
}

namespace {

FaceRef parse_face_token(const std::string& tok, std::array<int, 3>* order) {
  // "t<idx>:<abc>"
  if (tok.size() < 5 || tok[0] != 't')
    throw std::invalid_argument("bad face token '" + tok + "'");
  auto colon = tok.find(':');
  if (colon == std::string::npos || tok.size() - colon != 4)
    throw std::invalid_argument("bad face token '" + tok + "'");
  int tet = std::stoi(tok.substr(1, colon - 1));
  std::array<int, 3> verts{};
  for (size_t i = 0; i < 3; ++i) {
    char c = tok[colon + 1 + i];
    if (c < '0' || c > '3') throw std::invalid_argument("bad vertex digit in '" + tok + "'");
    verts[i] = c - '0';
  }
  if (verts[0] == verts[1] || verts[0] == verts[2] || verts[1] == verts[2])
    throw std::invalid_argument("repeated vertex in '" + tok + "'");
  *order = verts;
  return FaceRef{tet, Face::from_triple(verts[0], verts[1], verts[2])};
}

}  // namespace

Triangulation parse_triangulation(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int tet_count = -1;
  std::vector<Gluing> gluings;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (tet_count < 0) {
      if (!(ls >> tet_count) || tet_count < 0)
        throw std::invalid_argument("bad tetrahedron count");
      continue;
    }
    std::string ta, tb;
    if (!(ls >> ta >> tb)) throw std::invalid_argument("bad gluing line '" + line + "'");
    std::array<int, 3> oa{}, ob{};
    FaceRef fa = parse_face_token(ta, &oa);
    FaceRef fb = parse_face_token(tb, &ob);
    // align the image with fa's ascending triple
    auto at = fa.face.triple();
    std::array<int, 3> image{};
    for (size_t i = 0; i < 3; ++i) {
      for (size_t j = 0; j < 3; ++j)
        if (oa[j] == at[i]) image[i] = ob[j];
    }
    gluings.emplace_back(fa, fb, image);
  }
  if (tet_count < 0) throw std::invalid_argument("empty triangulation file");
  return Triangulation(tet_count, std::move(gluings));
}

std::string serialize_triangulation(const Triangulation& t) {
  std::ostringstream out;
  out << t.tet_count() << '\n';
  for (const Gluing& g : t.gluings()) {
    out << to_string(g.a) << " t" << g.b.tet << ':';
    for (int v : g.image) out << v;
    out << '\n';
  }
  return out.str();
}

}  // namespace fpg
