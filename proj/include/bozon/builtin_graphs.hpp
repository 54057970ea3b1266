#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "bozon/planar_map.hpp"

namespace bozon {

// Rotation system of a straight-line drawing: darts around each vertex are
// sorted counterclockwise by angle. Edge e owns darts 2e (from first) and
// 2e+1 (from second).
CombinatorialMap map_from_drawing(const std::vector<std::array<double, 2>>& positions,
                                  const std::vector<std::pair<VertexId, VertexId>>& edges);

// Names: k3, c4, grid_M_N, wheel_K.
CombinatorialMap builtin_graph(const std::string& name);

// The family used by randomized suites.
std::vector<std::string> default_graph_family();

}  // namespace bozon
