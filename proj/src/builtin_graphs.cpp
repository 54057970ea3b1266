#include "bozon/builtin_graphs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <regex>

#include "bozon/error.hpp"

namespace bozon {

CombinatorialMap map_from_drawing(const std::vector<std::array<double, 2>>& positions,
                                  const std::vector<std::pair<VertexId, VertexId>>& edges) {
  RotationSystem rs;
  rs.rotations.resize(positions.size());
  std::vector<std::vector<std::pair<double, DartId>>> around(positions.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    rs.edges.push_back({static_cast<DartId>(2 * e), static_cast<DartId>(2 * e + 1)});
    auto angle = [&](VertexId from, VertexId to) {
      return std::atan2(positions[to][1] - positions[from][1], positions[to][0] - positions[from][0]);
    };
    around[u].push_back({angle(u, v), static_cast<DartId>(2 * e)});
    around[v].push_back({angle(v, u), static_cast<DartId>(2 * e + 1)});
  }
  for (std::size_t v = 0; v < positions.size(); ++v) {
    std::sort(around[v].begin(), around[v].end());
    for (auto [angle, d] : around[v]) rs.rotations[v].push_back(d);
  }
  return CombinatorialMap::build(rs);
}

namespace {

CombinatorialMap grid(int rows, int cols) {
  std::vector<std::array<double, 2>> pos;
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) pos.push_back({double(c), double(r)});
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c + 1 < cols; ++c) edges.push_back({r * cols + c, r * cols + c + 1});
  for (int r = 0; r + 1 < rows; ++r)
    for (int c = 0; c < cols; ++c) edges.push_back({r * cols + c, (r + 1) * cols + c});
  return map_from_drawing(pos, edges);
}

CombinatorialMap wheel(int rim) {
  std::vector<std::array<double, 2>> pos{{0.0, 0.0}};
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int i = 0; i < rim; ++i) {
    double t = 2.0 * std::numbers::pi * i / rim;
    pos.push_back({std::cos(t), std::sin(t)});
  }
  for (int i = 1; i <= rim; ++i) edges.push_back({0, i});
  for (int i = 1; i <= rim; ++i) edges.push_back({i, i % rim + 1});
  return map_from_drawing(pos, edges);
}

CombinatorialMap cycle(int n) {
  std::vector<std::array<double, 2>> pos;
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int i = 0; i < n; ++i) {
    double t = 2.0 * std::numbers::pi * i / n;
    pos.push_back({std::cos(t), std::sin(t)});
    edges.push_back({i, (i + 1) % n});
  }
  return map_from_drawing(pos, edges);
}

}  // namespace

CombinatorialMap builtin_graph(const std::string& name) {
  std::smatch m;
  if (name == "k3") return cycle(3);
  if (name == "c4") return cycle(4);
  static const std::regex grid_re("grid_([0-9]+)_([0-9]+)");
  static const std::regex wheel_re("wheel_([0-9]+)");
  if (std::regex_match(name, m, grid_re)) {
    int rows = std::stoi(m[1]), cols = std::stoi(m[2]);
    if (rows >= 1 && cols >= 1 && rows * cols >= 2 && rows * cols <= 400) return grid(rows, cols);
  }
  if (std::regex_match(name, m, wheel_re)) {
    int rim = std::stoi(m[1]);
    if (rim >= 3 && rim <= 200) return wheel(rim);
  }
  throw Error(ErrorKind::unknown_graph, "no builtin graph named '" + name + "'");
}

std::vector<std::string> default_graph_family() { return {"k3", "c4", "grid_2_3", "grid_3_3", "wheel_4"}; }

}  // namespace bozon
