#include "gramdet/surface_map.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "gramdet/error.hpp"

namespace gramdet {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

struct Occurrence {
  int face;
  int index;
  int sign;
};

struct Corners {
  std::vector<std::size_t> offset;  // corner id of (face, 0)
  std::size_t total = 0;
};

Corners corner_ids(const PolygonComplex& c) {
  Corners k;
  for (const auto& f : c.faces) {
    k.offset.push_back(k.total);
    k.total += f.size();
  }
  return k;
}

std::vector<std::vector<Occurrence>> occurrences(const PolygonComplex& c) {
  std::vector<std::vector<Occurrence>> occ(c.num_edges);
  for (int f = 0; f < static_cast<int>(c.faces.size()); ++f)
    for (int i = 0; i < static_cast<int>(c.faces[f].size()); ++i)
      occ[c.faces[f][i].edge].push_back({f, i, c.faces[f][i].sign});
  for (const auto& o : occ)
    if (o.size() != 2) throw ClassificationFailure("polygon complex edge does not occur exactly twice");
  return occ;
}

std::size_t tail(const PolygonComplex& c, const Corners& k, const Occurrence& o) {
  std::size_t len = c.faces[o.face].size();
  return k.offset[o.face] + (o.sign > 0 ? o.index : (o.index + 1) % len);
}

std::size_t head(const PolygonComplex& c, const Corners& k, const Occurrence& o) {
  std::size_t len = c.faces[o.face].size();
  return k.offset[o.face] + (o.sign > 0 ? (o.index + 1) % len : o.index);
}

}  // namespace

int PolygonComplex::vertex_count() const {
  auto occ = occurrences(*this);
  Corners k = corner_ids(*this);
  UnionFind uf(k.total);
  for (const auto& o : occ) {
    uf.unite(tail(*this, k, o[0]), tail(*this, k, o[1]));
    uf.unite(head(*this, k, o[0]), head(*this, k, o[1]));
  }
  int v = 0;
  for (std::size_t i = 0; i < k.total; ++i)
    if (uf.find(i) == i) ++v;
  return v;
}

int PolygonComplex::euler_characteristic() const {
  return vertex_count() - num_edges + static_cast<int>(faces.size());
}

std::vector<CutPiece> cut_along(const PolygonComplex& c, const std::vector<int>& cut_edges) {
  auto occ = occurrences(c);
  Corners k = corner_ids(c);
  std::vector<char> is_cut(c.num_edges, 0);
  for (int e : cut_edges) is_cut[e] = 1;

  UnionFind corners(k.total);
  UnionFind faces(c.faces.size());
  for (int e = 0; e < c.num_edges; ++e) {
    if (is_cut[e]) continue;
    const auto& o = occ[e];
    corners.unite(tail(c, k, o[0]), tail(c, k, o[1]));
    corners.unite(head(c, k, o[0]), head(c, k, o[1]));
    faces.unite(o[0].face, o[1].face);
  }

  std::map<std::size_t, int> piece_of_root;
  std::vector<int> piece(c.faces.size());
  for (std::size_t f = 0; f < c.faces.size(); ++f) {
    auto [it, inserted] = piece_of_root.try_emplace(faces.find(f), static_cast<int>(piece_of_root.size()));
    piece[f] = it->second;
  }
  std::vector<CutPiece> out(piece_of_root.size());
  std::vector<int> face_count(out.size(), 0), edge_count(out.size(), 0), vertex_count(out.size(), 0);
  for (std::size_t f = 0; f < c.faces.size(); ++f) ++face_count[piece[f]];
  for (int e = 0; e < c.num_edges; ++e) {
    for (const auto& o : occ[e]) {
      // An uncut edge is shared by its two occurrences; a cut edge becomes
      // two boundary edges.
      if (is_cut[e]) {
        ++edge_count[piece[o.face]];
      } else if (&o == &occ[e][0]) {
        ++edge_count[piece[o.face]];
      }
    }
  }
  std::vector<int> face_of_corner(k.total);
  for (std::size_t f = 0; f < c.faces.size(); ++f)
    for (std::size_t i = 0; i < c.faces[f].size(); ++i) face_of_corner[k.offset[f] + i] = static_cast<int>(f);
  for (std::size_t i = 0; i < k.total; ++i)
    if (corners.find(i) == i) ++vertex_count[piece[face_of_corner[i]]];

  // Boundary circles: components of the graph on vertex classes whose edges
  // are the cut occurrences.
  UnionFind boundary(k.total);
  std::vector<char> on_boundary(k.total, 0);
  for (int e = 0; e < c.num_edges; ++e) {
    if (!is_cut[e]) continue;
    for (const auto& o : occ[e]) {
      std::size_t t = corners.find(tail(c, k, o)), h = corners.find(head(c, k, o));
      boundary.unite(t, h);
      on_boundary[t] = on_boundary[h] = 1;
    }
  }
  std::vector<int> circles(out.size(), 0);
  for (std::size_t i = 0; i < k.total; ++i)
    if (on_boundary[i] && boundary.find(i) == i) ++circles[piece[face_of_corner[i]]];

  for (std::size_t p = 0; p < out.size(); ++p) {
    out[p].euler_characteristic = vertex_count[p] - edge_count[p] + face_count[p];
    out[p].boundary_circles = circles[p];
  }
  return out;
}

namespace {

// Faces of one Mobius side. Walks run along increasing labels; flat arcs
// met on the way are jumped and their inner faces emitted recursively.
class SideBuilder {
 public:
  SideBuilder(PolygonComplex& c, const MobiusDiagram& m, const std::vector<int>& outer, std::vector<int>& arc_edge)
      : c_(c), m_(m), outer_(outer), arc_edge_(arc_edge), n2_(2 * m.n), partner_(n2_ + 1, 0) {
    arc_edge_.assign(n2_ + 1, -1);
    for (const auto& e : m.flat) {
      int id = c_.new_edge();
      arc_edge_[e.first] = arc_edge_[e.second] = id;
      partner_[e.first] = e.second;
      partner_[e.second] = e.first;
    }
  }

  void build() {
    if (m_.k() == 0) {
      build_annular();
    } else {
      build_sectors();
    }
  }

 private:
  int dist(int from, int to) const { return ((to - from) % n2_ + n2_) % n2_; }

  Letter arc_letter(int from, int to) const {
    return {arc_edge_[from], from < to ? 1 : -1};
  }

  std::vector<Letter> walk(int u, int v, bool full) {
    std::vector<Letter> word;
    const int total = full ? n2_ : dist(u, v);
    int pos = u, travelled = 0;
    while (travelled < total) {
      int q = partner_[pos];
      int ahead = q ? dist(u, q) : 0;
      if (q && ahead > travelled && ahead < total) {
        word.push_back(arc_letter(pos, q));
        inner_face(pos, q);
        travelled = ahead;
        pos = q;
      } else {
        word.push_back({outer_[pos], 1});
        pos = pos % n2_ + 1;
        ++travelled;
      }
    }
    return word;
  }

  void inner_face(int u, int v) {
    std::vector<Letter> word = walk(u, v, false);
    word.push_back(arc_letter(v, u));
    if (hole_arc_ && hole_arc_->first == std::min(u, v) && hole_arc_->second == std::max(u, v)) add_hole(word);
    c_.faces.push_back(std::move(word));
  }

  // Crosscap disc inside the face: an auxiliary edge to a slot, then the
  // crosscap circle whose two halves are identified.
  void add_hole(std::vector<Letter>& word) {
    int aux = c_.new_edge(), cap = c_.new_edge();
    word.push_back({aux, 1});
    word.push_back({cap, 1});
    word.push_back({cap, 1});
    word.push_back({aux, -1});
  }

  void build_annular() {
    // The hole sits just inside the innermost seam-crossing arc, or in the
    // outer face when no arc crosses the seam.
    for (std::size_t i = 0; i < m_.flat.size(); ++i)
      if (m_.seam[i] && (!hole_arc_ || m_.flat[i].second - m_.flat[i].first < hole_arc_->second - hole_arc_->first))
        hole_arc_ = m_.flat[i];
    std::vector<Letter> outer_face = walk(1, 1, true);
    if (!hole_arc_) add_hole(outer_face);
    c_.faces.push_back(std::move(outer_face));
  }

  void build_sectors() {
    const int k = m_.k();
    const auto& s = m_.crosscap;
    std::vector<int> half(2 * k), cap(k);
    for (int t = 0; t < 2 * k; ++t) {
      half[t] = c_.new_edge();
      arc_edge_[s[t]] = half[t];
    }
    for (int j = 0; j < k; ++j) cap[j] = c_.new_edge();
    for (int j = 0; j < 2 * k; ++j) {
      int next = (j + 1) % (2 * k);
      std::vector<Letter> word = walk(s[j], s[next], false);
      word.push_back({half[next], 1});
      word.push_back({cap[j % k], -1});
      word.push_back({half[j], -1});
      c_.faces.push_back(std::move(word));
    }
  }

  PolygonComplex& c_;
  const MobiusDiagram& m_;
  const std::vector<int>& outer_;
  std::vector<int>& arc_edge_;
  int n2_;
  std::vector<int> partner_;
  std::optional<Arc> hole_arc_;
};

}  // namespace

KleinComplex build_klein_complex(const MobiusDiagram& m1, const MobiusDiagram& m2) {
  if (m1.n != m2.n) throw InvalidDiagram("glued diagrams must have the same n");
  KleinComplex k;
  std::vector<int> outer(2 * m1.n + 1, -1);
  for (int p = 1; p <= 2 * m1.n; ++p) outer[p] = k.complex.new_edge();
  SideBuilder(k.complex, m1, outer, k.arc_edge[0]).build();
  SideBuilder(k.complex, m2, outer, k.arc_edge[1]).build();
  return k;
}

}  // namespace gramdet
