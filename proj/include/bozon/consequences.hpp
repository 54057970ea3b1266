#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bozon/caps.hpp"
#include "bozon/dimer.hpp"
#include "bozon/ising.hpp"
#include "bozon/planar_map.hpp"
#include "bozon/report.hpp"

namespace bozon {

// Loop-free, vertex-disjoint shortest paths joining (v0, v1), (v2, v3), ...
// Throws PathsIntersect when the greedy routing gets stuck.
std::vector<PathSpec> pair_paths(const CombinatorialMap& map, const std::vector<VertexId>& vertices);

struct SpinCorrelation {
  double value = 0.0;        // real part of (-i)^|Gamma| Z(Jbar) / Z(J)
  double imaginary_residue = 0.0;
  double direct = 0.0;       // plain expectation of the spin product
  int gamma_size = 0;
  IdentityReport report;     // value against direct
};

// E[sigma_u1 ... sigma_u2n] through order paths; the path endpoints must be
// the given vertices.
SpinCorrelation spin_correlation(const CombinatorialMap& map, const CouplingAssignment& base,
                                 const std::vector<VertexId>& vertices, const std::vector<PathSpec>& paths,
                                 const Caps& caps = {}, double tolerance = default_tolerance);

struct CorrelationReport {
  double squared_value = 0.0;
  double dimer_ratio = 0.0;
  int sign = 1;  // realized: squared_value = sign * dimer_ratio
  int gamma_size = 0;
  DimerMethod method = DimerMethod::brute;
  IdentityReport report;
  bool pass = false;
};

// Squared spin correlation by enumeration against
// Z_dimer(nu(Jbar)) / Z_dimer(nu(J)) with no extra sign.
CorrelationReport spin_correlation_squared_dimer(const CombinatorialMap& map, const CouplingAssignment& base,
                                                 const std::vector<VertexId>& vertices,
                                                 const std::vector<PathSpec>& paths, const Caps& caps = {},
                                                 double tolerance = default_tolerance);

// Vertex u_j on the boundary of face f_j; order paths join the u_j and
// disorder paths join the f_j.
struct SpinorSpec {
  std::vector<std::pair<VertexId, FaceId>> pairs;
  std::vector<PathSpec> order_paths;
  std::vector<PathSpec> disorder_paths;
};

struct SpinorReport {
  Complex correlator;  // <sigma ... mu ...> = Z(Jbar) / Z(J)
  CorrelationReport squared;
};

// Squared spinor correlator against (-1)^|Gamma| times the dimer ratio, up to
// a recorded sign.
SpinorReport spinor_correlation_squared(const CombinatorialMap& map, const CouplingAssignment& base,
                                        const SpinorSpec& spec, const Caps& caps = {},
                                        double tolerance = default_tolerance);

struct MagnetizationReport {
  double direct = 0.0;        // plus-boundary expectation by enumeration
  double order_ratio = 0.0;   // (-i)^|gamma| Z+(Jbar) / Z+(J) on G
  double reduced_pair = 0.0;  // E[sigma_u sigma_v] on G' through the defect path
  double reduced_direct = 0.0;  // E[sigma_u sigma_v] on G' by enumeration
  PathSpec gamma;
  VertexId merged_vertex = -1;
  std::optional<CorrelationReport> squared;  // absent when G' has a bridge
  IdentityReport report;                     // direct against reduced_pair
  bool pass = false;
};

// Default gamma: shortest path from a vertex of the face to u that avoids the
// boundary edges and the other boundary vertices.
std::optional<PathSpec> magnetization_path(const CombinatorialMap& map, FaceId face, VertexId u);

MagnetizationReport magnetization(const CombinatorialMap& map, const CouplingAssignment& base, FaceId face, VertexId u,
                                  const std::optional<PathSpec>& gamma = std::nullopt, const Caps& caps = {},
                                  double tolerance = default_tolerance);

// Defects on the dual map with order and disorder exchanged.
DefectSet dual_defects(const CombinatorialMap& map, const DualMap& dual, const DefectSet& defects);

struct DualityReport {
  IdentityReport correlator;          // (-i)^|Gamma| <..>_G = (-i)^|Gamma*| <..>_G*
  IdentityReport correlator_literal;  // the same with (-1) in place of (-i)
  double coupling_error = 0.0;        // max |dual(Jbar_e) - Jbar*_e| over edges
  double weight_error = 0.0;          // max |1/cosh(2J*) - tanh(2J)| over edges
  bool pass = false;                  // correlator, couplings and weights
};

DualityReport kw_duality_check(const CombinatorialMap& map, const CouplingAssignment& base, const DefectSet& defects,
                               const Caps& caps = {}, double tolerance = default_tolerance);

nlohmann::json to_json(const SpinCorrelation& r);
nlohmann::json to_json(const CorrelationReport& r);
nlohmann::json to_json(const MagnetizationReport& r);
nlohmann::json to_json(const DualityReport& r);

}  // namespace bozon
