#pragma once

#include <array>
#include <vector>

#include "gramdet/diagrams.hpp"

namespace gramdet {

// An edge traversed along (+1) or against (-1) its direction.
struct Letter {
  int edge;
  int sign;
};

// Closed surface given by polygon words; every edge occurs exactly twice.
struct PolygonComplex {
  int num_edges = 0;
  std::vector<std::vector<Letter>> faces;

  int new_edge() { return num_edges++; }
  int vertex_count() const;
  int euler_characteristic() const;
};

struct CutPiece {
  int euler_characteristic = 0;
  int boundary_circles = 0;
};

// The surface obtained by cutting along the given edges (which must form
// closed curves), split into connected pieces.
std::vector<CutPiece> cut_along(const PolygonComplex& complex, const std::vector<int>& cut_edges);

// Glued Klein bottle of two Mobius diagrams: outer segments shared, every
// arc an edge, crosscaps as antipodally identified circles.
struct KleinComplex {
  PolygonComplex complex;
  // arc_edge[s][p]: edge of side s's arc (flat arc or half crosscap arc) at point p.
  std::array<std::vector<int>, 2> arc_edge;
};

KleinComplex build_klein_complex(const MobiusDiagram& m1, const MobiusDiagram& m2);

}  // namespace gramdet
