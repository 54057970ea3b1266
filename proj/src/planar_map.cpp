#include "bozon/planar_map.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <string>

#include "bozon/error.hpp"

namespace bozon {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::malformed_rotation, what); }

}  // namespace

CombinatorialMap CombinatorialMap::build(const RotationSystem& rs, LoopPolicy loops) {
  CombinatorialMap m;
  const int vertex_count = static_cast<int>(rs.rotations.size());
  const int edge_count = static_cast<int>(rs.edges.size());
  const int dart_count = 2 * edge_count;
  if (vertex_count == 0) malformed("map has no vertices");

  m.alpha_.assign(dart_count, -1);
  m.edge_.assign(dart_count, -1);
  m.edge_darts_ = rs.edges;
  for (EdgeId e = 0; e < edge_count; ++e) {
    auto [a, b] = rs.edges[e];
    if (a < 0 || b < 0 || a >= dart_count || b >= dart_count || a == b)
      malformed("edge " + std::to_string(e) + " has invalid darts");
    if (m.edge_[a] != -1 || m.edge_[b] != -1) malformed("dart listed by two edges at edge " + std::to_string(e));
    m.edge_[a] = m.edge_[b] = e;
    m.alpha_[a] = b;
    m.alpha_[b] = a;
  }

  m.origin_.assign(dart_count, -1);
  m.sigma_.assign(dart_count, -1);
  m.sigma_inv_.assign(dart_count, -1);
  m.rotations_ = rs.rotations;
  for (VertexId v = 0; v < vertex_count; ++v) {
    const auto& cyc = rs.rotations[v];
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      DartId d = cyc[i];
      if (d < 0 || d >= dart_count) malformed("vertex " + std::to_string(v) + " lists unknown dart");
      if (m.origin_[d] != -1) malformed("dart " + std::to_string(d) + " appears in two rotations");
      m.origin_[d] = v;
      DartId next = cyc[(i + 1) % cyc.size()];
      m.sigma_[d] = next;
    }
  }
  for (DartId d = 0; d < dart_count; ++d) {
    if (m.origin_[d] == -1) malformed("dart " + std::to_string(d) + " missing from rotations");
    m.sigma_inv_[m.sigma_[d]] = d;
  }
  for (VertexId v = 0; v < vertex_count; ++v)
    if (rs.rotations[v].empty() && !(vertex_count == 1 && edge_count == 0))
      throw Error(ErrorKind::disconnected, "vertex " + std::to_string(v) + " is isolated");
  if (loops == LoopPolicy::reject) {
    for (EdgeId e = 0; e < edge_count; ++e)
      if (m.is_loop(e)) malformed("edge " + std::to_string(e) + " is a self-loop");
  }

  std::vector<bool> seen(vertex_count, false);
  std::deque<VertexId> queue{0};
  seen[0] = true;
  int reached = 1;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (DartId d : m.rotations_[v]) {
      VertexId w = m.target(d);
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  if (reached != vertex_count) throw Error(ErrorKind::disconnected, "map is not connected");

  m.face_.assign(dart_count, -1);
  for (DartId d = 0; d < dart_count; ++d) {
    if (m.face_[d] != -1) continue;
    const FaceId f = static_cast<FaceId>(m.faces_.size());
    std::vector<DartId> orbit;
    DartId x = d;
    do {
      m.face_[x] = f;
      orbit.push_back(x);
      x = m.phi(x);
    } while (x != d);
    m.faces_.push_back(std::move(orbit));
  }
  if (m.faces_.empty()) m.faces_.emplace_back();  // the lone vertex sits in one face
  m.face_count_ = static_cast<int>(m.faces_.size());

  const int euler = vertex_count - edge_count + m.face_count_;
  if (euler != 2)
    throw Error(ErrorKind::euler_violation, "V - E + F = " + std::to_string(euler) + " (genus " +
                                                std::to_string((2 - euler) / 2) + ")");
  return m;
}

bool CombinatorialMap::has_bridge() const {
  for (EdgeId e = 0; e < edge_count(); ++e)
    if (is_bridge(e)) return true;
  return false;
}

std::vector<VertexId> CombinatorialMap::face_vertices(FaceId f) const {
  std::vector<VertexId> out;
  for (DartId d : faces_[f]) out.push_back(origin_[d]);
  if (out.empty() && vertex_count() == 1) out.push_back(0);
  return out;
}

std::vector<EdgeId> CombinatorialMap::face_edges(FaceId f) const {
  std::vector<EdgeId> out;
  for (DartId d : faces_[f]) out.push_back(edge_[d]);
  return out;
}

std::vector<Dart> CombinatorialMap::darts() const {
  std::vector<Dart> out;
  out.reserve(dart_count());
  for (DartId d = 0; d < dart_count(); ++d) out.push_back({d, edge_[d], origin_[d]});
  return out;
}

RotationSystem CombinatorialMap::rotation_system() const { return {rotations_, edge_darts_}; }

DualMap dual(const CombinatorialMap& map) {
  RotationSystem rs;
  rs.edges.reserve(map.edge_count());
  for (EdgeId e = 0; e < map.edge_count(); ++e) rs.edges.push_back({map.dart_of(e, 0), map.dart_of(e, 1)});
  for (FaceId f = 0; f < map.face_count(); ++f) {
    auto orbit = map.face_darts(f);
    std::vector<DartId> cyc;
    if (!orbit.empty()) {
      // phi walks clockwise around the face, so the counterclockwise order is
      // the reversed orbit.
      cyc.push_back(orbit[0]);
      for (std::size_t i = orbit.size() - 1; i >= 1; --i) cyc.push_back(orbit[i]);
    }
    rs.rotations.push_back(std::move(cyc));
  }
  DualMap out;
  out.map = CombinatorialMap::build(rs, LoopPolicy::allow);
  out.edge_bijection.resize(map.edge_count());
  for (EdgeId e = 0; e < map.edge_count(); ++e) out.edge_bijection[e] = e;
  out.primal_vertex_of_face.resize(out.map.face_count(), 0);
  for (FaceId g = 0; g < out.map.face_count(); ++g) {
    auto orbit = out.map.face_darts(g);
    if (!orbit.empty()) out.primal_vertex_of_face[g] = map.target(orbit[0]);
  }
  return out;
}

QuadGraph quad_graph(const CombinatorialMap& map) {
  QuadGraph q;
  q.primal_vertex_count = map.vertex_count();
  q.dual_vertex_count = map.face_count();
  q.edges.reserve(map.dart_count());
  for (DartId d = 0; d < map.dart_count(); ++d) q.edges.push_back({map.origin(d), map.corner_face(d), d});
  return q;
}

namespace {

std::vector<int> walk(const PathSpec& path, int node_count, int edge_count,
                      const std::function<std::pair<int, int>(EdgeId)>& ends) {
  auto [start, finish] = path.endpoints;
  if (start < 0 || start >= node_count || finish < 0 || finish >= node_count)
    throw Error(ErrorKind::endpoint_mismatch, "path endpoint out of range");
  std::vector<int> nodes{start};
  std::vector<bool> visited(node_count, false);
  visited[start] = true;
  int current = start;
  for (EdgeId e : path.edges) {
    if (e < 0 || e >= edge_count) throw Error(ErrorKind::endpoint_mismatch, "path uses unknown edge");
    auto [a, b] = ends(e);
    int next;
    if (a == current)
      next = b;
    else if (b == current)
      next = a;
    else
      throw Error(ErrorKind::endpoint_mismatch, "edge " + std::to_string(e) + " does not continue the path");
    if (visited[next]) throw Error(ErrorKind::path_has_loop, "path revisits node " + std::to_string(next));
    visited[next] = true;
    nodes.push_back(next);
    current = next;
  }
  if (current != finish)
    throw Error(ErrorKind::endpoint_mismatch, "path ends at " + std::to_string(current) + ", declared " +
                                                  std::to_string(finish));
  return nodes;
}

}  // namespace

std::vector<VertexId> path_vertices(const CombinatorialMap& map, const PathSpec& path) {
  return walk(path, map.vertex_count(), map.edge_count(), [&](EdgeId e) { return map.endpoints(e); });
}

std::vector<FaceId> dual_path_faces(const CombinatorialMap& map, const PathSpec& path) {
  return walk(path, map.face_count(), map.edge_count(), [&](EdgeId e) { return map.dual_endpoints(e); });
}

DefectSet DefectSet::from_edge_sets(int edge_count, std::vector<EdgeId> gamma, std::vector<EdgeId> gamma_star) {
  DefectSet d;
  d.mask_.assign(edge_count, 0);
  auto normalize = [edge_count](std::vector<EdgeId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    for (EdgeId e : v)
      if (e < 0 || e >= edge_count) throw Error(ErrorKind::input_error, "defect edge out of range");
  };
  normalize(gamma);
  normalize(gamma_star);
  for (EdgeId e : gamma) d.mask_[e] = 1;
  for (EdgeId e : gamma_star) {
    if (d.mask_[e] == 1) throw Error(ErrorKind::overlap, "edge " + std::to_string(e) + " is in both defect sets");
    d.mask_[e] = 2;
  }
  d.gamma_ = std::move(gamma);
  d.gamma_star_ = std::move(gamma_star);
  return d;
}

DefectSet DefectSet::from_paths(int edge_count, std::vector<PathSpec> order_paths,
                                std::vector<PathSpec> disorder_paths) {
  std::vector<EdgeId> gamma, gamma_star;
  for (const auto& p : order_paths) gamma.insert(gamma.end(), p.edges.begin(), p.edges.end());
  for (const auto& p : disorder_paths) gamma_star.insert(gamma_star.end(), p.edges.begin(), p.edges.end());
  DefectSet d = from_edge_sets(edge_count, std::move(gamma), std::move(gamma_star));
  for (const auto& p : order_paths) d.order_vertices_.insert(d.order_vertices_.end(), p.endpoints.begin(), p.endpoints.end());
  for (const auto& p : disorder_paths)
    d.disorder_faces_.insert(d.disorder_faces_.end(), p.endpoints.begin(), p.endpoints.end());
  d.order_paths_ = std::move(order_paths);
  d.disorder_paths_ = std::move(disorder_paths);
  return d;
}

DefectSet validate_defects(const CombinatorialMap& map, const std::vector<PathSpec>& order_paths,
                           const std::vector<PathSpec>& disorder_paths) {
  std::vector<int> vertex_owner(map.vertex_count(), -1);
  std::vector<EdgeId> gamma, gamma_star;
  std::vector<VertexId> order_vertices;
  for (std::size_t i = 0; i < order_paths.size(); ++i) {
    for (VertexId v : path_vertices(map, order_paths[i])) {
      if (vertex_owner[v] != -1)
        throw Error(ErrorKind::paths_intersect, "order paths share vertex " + std::to_string(v));
      vertex_owner[v] = static_cast<int>(i);
    }
    gamma.insert(gamma.end(), order_paths[i].edges.begin(), order_paths[i].edges.end());
    order_vertices.push_back(order_paths[i].endpoints[0]);
    order_vertices.push_back(order_paths[i].endpoints[1]);
  }
  std::vector<int> face_owner(map.face_count(), -1);
  std::vector<FaceId> disorder_faces;
  for (std::size_t i = 0; i < disorder_paths.size(); ++i) {
    for (FaceId f : dual_path_faces(map, disorder_paths[i])) {
      if (face_owner[f] != -1)
        throw Error(ErrorKind::paths_intersect, "disorder paths share face " + std::to_string(f));
      face_owner[f] = static_cast<int>(i);
    }
    gamma_star.insert(gamma_star.end(), disorder_paths[i].edges.begin(), disorder_paths[i].edges.end());
    disorder_faces.push_back(disorder_paths[i].endpoints[0]);
    disorder_faces.push_back(disorder_paths[i].endpoints[1]);
  }
  std::vector<bool> in_gamma(map.edge_count(), false);
  for (EdgeId e : gamma) in_gamma[e] = true;
  for (EdgeId e : gamma_star)
    if (in_gamma[e])
      throw Error(ErrorKind::paths_intersect, "order and disorder paths cross at edge " + std::to_string(e));

  DefectSet d = DefectSet::from_edge_sets(map.edge_count(), std::move(gamma), std::move(gamma_star));
  d.order_paths_ = order_paths;
  d.disorder_paths_ = disorder_paths;
  d.order_vertices_ = std::move(order_vertices);
  d.disorder_faces_ = std::move(disorder_faces);
  return d;
}

DefectSet with_extra_disorder(const DefectSet& defects, std::vector<PathSpec> walks,
                              std::vector<EdgeId> extra_gamma_star) {
  std::vector<EdgeId> gamma_star = defects.gamma_star();
  for (EdgeId e : extra_gamma_star) {
    if (defects.in_gamma(e) || defects.in_gamma_star(e))
      throw Error(ErrorKind::overlap, "added disorder edge " + std::to_string(e) + " already carries a defect");
    gamma_star.push_back(e);
  }
  DefectSet d = DefectSet::from_edge_sets(defects.edge_count(), defects.gamma(), std::move(gamma_star));
  d.order_paths_ = defects.order_paths_;
  d.disorder_paths_ = defects.disorder_paths_;
  d.order_vertices_ = defects.order_vertices_;
  d.disorder_faces_ = defects.disorder_faces_;
  for (auto& w : walks) {
    d.disorder_faces_.push_back(w.endpoints[0]);
    d.disorder_faces_.push_back(w.endpoints[1]);
    d.disorder_paths_.push_back(std::move(w));
  }
  return d;
}

namespace {

std::optional<std::vector<EdgeId>> bfs(int node_count, int from, int to, const std::vector<bool>& blocked_nodes,
                                       const std::vector<bool>& blocked_edges,
                                       const std::function<void(int, const std::function<void(EdgeId, int)>&)>& neighbours) {
  if (from < 0 || to < 0 || from >= node_count || to >= node_count) return std::nullopt;
  auto blocked = [&](int n) { return !blocked_nodes.empty() && blocked_nodes[n]; };
  if (from != to && blocked(to)) return std::nullopt;
  std::vector<EdgeId> via(node_count, -1);
  std::vector<int> prev(node_count, -1);
  std::vector<bool> seen(node_count, false);
  std::deque<int> queue{from};
  seen[from] = true;
  while (!queue.empty() && !seen[to]) {
    int n = queue.front();
    queue.pop_front();
    neighbours(n, [&](EdgeId e, int m) {
      if (seen[m] || (!blocked_edges.empty() && blocked_edges[e]) || blocked(m)) return;
      seen[m] = true;
      via[m] = e;
      prev[m] = n;
      queue.push_back(m);
    });
  }
  if (!seen[to]) return std::nullopt;
  std::vector<EdgeId> path;
  for (int n = to; n != from; n = prev[n]) path.push_back(via[n]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::optional<std::vector<EdgeId>> find_path(const CombinatorialMap& map, VertexId from, VertexId to,
                                             const std::vector<bool>& blocked_vertices,
                                             const std::vector<bool>& blocked_edges) {
  return bfs(map.vertex_count(), from, to, blocked_vertices, blocked_edges,
             [&](int v, const std::function<void(EdgeId, int)>& visit) {
               for (DartId d : map.rotation(v)) visit(map.edge_of(d), map.target(d));
             });
}

std::optional<std::vector<EdgeId>> find_dual_path(const CombinatorialMap& map, FaceId from, FaceId to,
                                                  const std::vector<bool>& blocked_faces,
                                                  const std::vector<bool>& blocked_edges) {
  return bfs(map.face_count(), from, to, blocked_faces, blocked_edges,
             [&](int f, const std::function<void(EdgeId, int)>& visit) {
               for (DartId d : map.face_darts(f)) visit(map.edge_of(d), map.face_of(map.alpha(d)));
             });
}

}  // namespace bozon
