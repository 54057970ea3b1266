#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace bozon {

using VertexId = int;
using EdgeId = int;
using DartId = int;
using FaceId = int;

struct Dart {
  DartId id;
  EdgeId edge;
  VertexId vertex;  // origin
};

// Input form of an embedded graph: counterclockwise dart cycle per vertex and
// the two darts of every edge.
struct RotationSystem {
  std::vector<std::vector<DartId>> rotations;
  std::vector<std::array<DartId, 2>> edges;
};

enum class LoopPolicy { reject, allow };

// Sphere-embedded connected multigraph. alpha flips a dart, sigma turns
// counterclockwise around the origin, phi = sigma . alpha walks a face with the
// face on its right.
class CombinatorialMap {
 public:
  CombinatorialMap() = default;

  static CombinatorialMap build(const RotationSystem& rotation, LoopPolicy loops = LoopPolicy::reject);

  int vertex_count() const noexcept { return static_cast<int>(rotations_.size()); }
  int edge_count() const noexcept { return static_cast<int>(edge_darts_.size()); }
  int dart_count() const noexcept { return static_cast<int>(alpha_.size()); }
  int face_count() const noexcept { return face_count_; }

  DartId alpha(DartId d) const { return alpha_[d]; }
  DartId sigma(DartId d) const { return sigma_[d]; }
  DartId sigma_inv(DartId d) const { return sigma_inv_[d]; }
  DartId phi(DartId d) const { return sigma_[alpha_[d]]; }

  VertexId origin(DartId d) const { return origin_[d]; }
  VertexId target(DartId d) const { return origin_[alpha_[d]]; }
  EdgeId edge_of(DartId d) const { return edge_[d]; }
  // Face to the right of d.
  FaceId face_of(DartId d) const { return face_[d]; }
  // Face containing the angular sector from d counterclockwise to sigma(d).
  FaceId corner_face(DartId d) const { return face_[sigma_[d]]; }

  DartId dart_of(EdgeId e, int side) const { return edge_darts_[e][side]; }
  std::pair<VertexId, VertexId> endpoints(EdgeId e) const {
    return {origin_[edge_darts_[e][0]], origin_[edge_darts_[e][1]]};
  }
  // Dual edge endpoints: the faces on the two sides of e.
  std::pair<FaceId, FaceId> dual_endpoints(EdgeId e) const {
    return {face_[edge_darts_[e][0]], face_[edge_darts_[e][1]]};
  }
  bool is_loop(EdgeId e) const {
    auto [u, v] = endpoints(e);
    return u == v;
  }
  // On the sphere an edge is a bridge iff the same face lies on both sides.
  bool is_bridge(EdgeId e) const {
    auto [f, g] = dual_endpoints(e);
    return f == g;
  }
  bool has_bridge() const;

  std::span<const DartId> rotation(VertexId v) const { return rotations_[v]; }
  std::span<const DartId> face_darts(FaceId f) const { return faces_[f]; }
  std::vector<VertexId> face_vertices(FaceId f) const;
  std::vector<EdgeId> face_edges(FaceId f) const;

  std::vector<Dart> darts() const;
  RotationSystem rotation_system() const;

 private:
  std::vector<DartId> alpha_, sigma_, sigma_inv_;
  std::vector<VertexId> origin_;
  std::vector<EdgeId> edge_;
  std::vector<FaceId> face_;
  std::vector<std::array<DartId, 2>> edge_darts_;
  std::vector<std::vector<DartId>> rotations_;
  std::vector<std::vector<DartId>> faces_;
  int face_count_ = 0;
};

struct DualMap {
  CombinatorialMap map;
  // primal edge e -> dual edge e*; dual vertex f is primal face f.
  std::vector<EdgeId> edge_bijection;
  // dual face -> primal vertex it surrounds.
  std::vector<VertexId> primal_vertex_of_face;
};

DualMap dual(const CombinatorialMap& map);

// Bipartite quad-graph on V + V* vertices: one edge per face corner, dual
// vertex ids offset by the primal vertex count.
struct QuadGraph {
  struct Edge {
    VertexId vertex;
    FaceId face;
    DartId corner;  // the corner from this dart counterclockwise to sigma(dart)
  };
  int primal_vertex_count = 0;
  int dual_vertex_count = 0;
  std::vector<Edge> edges;

  int vertex_count() const noexcept { return primal_vertex_count + dual_vertex_count; }
  int edge_count() const noexcept { return static_cast<int>(edges.size()); }
};

QuadGraph quad_graph(const CombinatorialMap& map);

// A loop-free path. For order paths endpoints are primal vertices; for
// disorder paths they are faces and edges are crossed dually.
struct PathSpec {
  std::array<int, 2> endpoints{};
  std::vector<EdgeId> edges;
};

class DefectSet {
 public:
  DefectSet() = default;

  // Defect edge sets without path bookkeeping; gamma and gamma_star must be
  // disjoint.
  static DefectSet from_edge_sets(int edge_count, std::vector<EdgeId> gamma, std::vector<EdgeId> gamma_star);
  static DefectSet empty(int edge_count) { return from_edge_sets(edge_count, {}, {}); }
  // Keeps the given paths as recorded without re-checking loops or
  // disjointness; Gamma and Gamma* are the unions of their edges.
  static DefectSet from_paths(int edge_count, std::vector<PathSpec> order_paths,
                              std::vector<PathSpec> disorder_paths);

  const std::vector<PathSpec>& order_paths() const noexcept { return order_paths_; }
  const std::vector<PathSpec>& disorder_paths() const noexcept { return disorder_paths_; }
  const std::vector<EdgeId>& gamma() const noexcept { return gamma_; }
  const std::vector<EdgeId>& gamma_star() const noexcept { return gamma_star_; }
  const std::vector<VertexId>& order_vertices() const noexcept { return order_vertices_; }
  const std::vector<FaceId>& disorder_faces() const noexcept { return disorder_faces_; }

  bool in_gamma(EdgeId e) const { return mask_[e] == 1; }
  bool in_gamma_star(EdgeId e) const { return mask_[e] == 2; }
  int edge_count() const noexcept { return static_cast<int>(mask_.size()); }
  bool is_empty() const noexcept { return gamma_.empty() && gamma_star_.empty(); }

 private:
  friend DefectSet validate_defects(const CombinatorialMap&, const std::vector<PathSpec>&,
                                    const std::vector<PathSpec>&);
  friend DefectSet with_extra_disorder(const DefectSet&, std::vector<PathSpec>, std::vector<EdgeId>);

  std::vector<PathSpec> order_paths_;
  std::vector<PathSpec> disorder_paths_;
  std::vector<EdgeId> gamma_;
  std::vector<EdgeId> gamma_star_;
  std::vector<VertexId> order_vertices_;
  std::vector<FaceId> disorder_faces_;
  std::vector<unsigned char> mask_;  // 0 free, 1 gamma, 2 gamma_star
};

DefectSet validate_defects(const CombinatorialMap& map, const std::vector<PathSpec>& order_paths,
                           const std::vector<PathSpec>& disorder_paths);

// Appends disorder walks that need not be loop-free (boundary reductions);
// extra_gamma_star must avoid the existing defects.
DefectSet with_extra_disorder(const DefectSet& defects, std::vector<PathSpec> walks,
                              std::vector<EdgeId> extra_gamma_star);

// Shortest paths by breadth-first search in rotation order. Blocked masks may
// be empty. The dual variant walks between faces across edges.
std::optional<std::vector<EdgeId>> find_path(const CombinatorialMap& map, VertexId from, VertexId to,
                                             const std::vector<bool>& blocked_vertices = {},
                                             const std::vector<bool>& blocked_edges = {});
std::optional<std::vector<EdgeId>> find_dual_path(const CombinatorialMap& map, FaceId from, FaceId to,
                                                  const std::vector<bool>& blocked_faces = {},
                                                  const std::vector<bool>& blocked_edges = {});

// Vertices visited by an order path, in walk order; throws on a broken walk.
std::vector<VertexId> path_vertices(const CombinatorialMap& map, const PathSpec& path);
std::vector<FaceId> dual_path_faces(const CombinatorialMap& map, const PathSpec& path);

}  // namespace bozon
