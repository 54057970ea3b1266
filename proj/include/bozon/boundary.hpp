#pragma once

#include <vector>

#include "bozon/caps.hpp"
#include "bozon/ising.hpp"
#include "bozon/planar_map.hpp"
#include "bozon/report.hpp"

namespace bozon {

enum class BoundaryKind { plus, plus_free, dobrushin };

// Spins fixed on the boundary of one face. plus fixes every boundary vertex
// to +1; plus_free fixes the endpoints of fixed_edges, a single contiguous
// arc of the face; dobrushin fixes plus_vertices (a contiguous arc) to +1 and
// the rest of the boundary to -1.
struct BoundaryCondition {
  FaceId face = 0;
  BoundaryKind kind = BoundaryKind::plus;
  std::vector<EdgeId> fixed_edges;
  std::vector<VertexId> plus_vertices;
};

// Free-boundary model on a reduced map with
//   Z_bc(G, Jbar) = scalar * Z_free(new_map, new couplings with new_defects).
struct ReductionResult {
  CombinatorialMap new_map;
  CouplingAssignment new_couplings;
  DefectSet new_defects;
  double scalar = 1.0;
  VertexId merged_vertex = -1;     // -1 when nothing was fixed
  std::vector<VertexId> vertex_map;  // original vertex -> new vertex
  std::vector<EdgeId> edge_map;      // new edge -> original edge
  std::vector<EdgeId> edge_image;    // original edge -> new edge, -1 if removed
  std::vector<EdgeId> removed_edges;  // contracted or deleted, original ids
  // Disorder walks appended by the Dobrushin reduction, in new edge ids.
  std::vector<PathSpec> disorder_route;
};

ReductionResult reduce_plus(const CombinatorialMap& map, const CouplingAssignment& base, const DefectSet& defects,
                            FaceId face);
ReductionResult reduce_plus_free(const CombinatorialMap& map, const CouplingAssignment& base,
                                 const DefectSet& defects, const std::vector<EdgeId>& fixed_edges);
ReductionResult reduce_dobrushin(const CombinatorialMap& map, const CouplingAssignment& base,
                                 const DefectSet& defects, FaceId face, const std::vector<VertexId>& plus_vertices);
ReductionResult reduce(const CombinatorialMap& map, const CouplingAssignment& base, const DefectSet& defects,
                       const BoundaryCondition& condition);

// Pinned spins of a boundary condition: +1, -1, or 0 for free vertices.
std::vector<int> boundary_spins(const CombinatorialMap& map, const BoundaryCondition& condition);

// Couplings with every edge at v negated, the gauge image of flipping v.
CouplingAssignment negate_at_vertex(const CombinatorialMap& map, const CouplingAssignment& couplings, VertexId v);

// Z_bc(G, Jbar) by enumeration against scalar * Z_free(G', Jbar').
IdentityReport check_reduction(const CombinatorialMap& map, const CouplingAssignment& base, const DefectSet& defects,
                               const BoundaryCondition& condition, const Caps& caps = {},
                               double tolerance = default_tolerance);

nlohmann::json to_json(const ReductionResult& result);

}  // namespace bozon
