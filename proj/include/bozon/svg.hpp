#pragma once

#include <string>
#include <vector>

#include "bozon/dimer.hpp"
#include "bozon/edge_set.hpp"
#include "bozon/planar_map.hpp"

namespace bozon {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Tutte barycentric drawing: the largest face on the unit circle, other
// vertices at the average of their neighbours. Bounded faces sit at the
// centroid of their corners, the outer face outside the circle.
struct Layout {
  std::vector<Point> vertices;
  std::vector<Point> faces;
  FaceId outer_face = 0;
};

Layout tutte_layout(const CombinatorialMap& map);

// Positions of the G_Q vertices near the corners of their quadrangle.
std::vector<Point> gq_layout(const CombinatorialMap& map, const Layout& layout);

// Side-by-side panels of G, G*, the quad-graph and G_Q.
std::string svg_overview(const CombinatorialMap& map);
// G with the primal polygon drawn heavy and the dual polygon as crossing
// segments; an empty pair leaves the plain drawing.
std::string svg_polygon_pair(const CombinatorialMap& map, const PolygonPair& pair);
// G_Q with the matched edges drawn heavy.
std::string svg_matching(const CombinatorialMap& map, const QuadDimerGraph& gq, const std::vector<int>& matching);

}  // namespace bozon
