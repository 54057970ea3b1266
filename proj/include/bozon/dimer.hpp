#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "bozon/caps.hpp"
#include "bozon/edge_set.hpp"
#include "bozon/ising.hpp"
#include "bozon/linalg.hpp"
#include "bozon/planar_map.hpp"
#include "bozon/report.hpp"

namespace bozon {

enum class GqEdgeKind { leg, primal_parallel, dual_parallel };
enum class VertexClass { black, white };

struct GqEdge {
  VertexId black = -1;
  VertexId white = -1;
  GqEdgeKind kind = GqEdgeKind::leg;
  EdgeId edge = -1;    // primal edge of the quadrangle; the corner's edge for legs
  DartId corner = -1;  // legs only: primal dart opening the corner
};

// Quadrangle of primal edge e with darts d0 = dart_of(e, 0) from u and
// d1 = dart_of(e, 1) from v. Vertices in cyclic order: a (u, left of d0),
// b (v, left of d0), c (v, right of d0), d (u, right of d0).
struct Quadrangle {
  EdgeId edge = -1;
  std::array<VertexId, 4> vertices{};
  std::array<int, 2> primal_parallel{};  // a-b, c-d
  std::array<int, 2> dual_parallel{};    // b-c, d-a
  std::array<int, 4> legs{};             // leg at a, b, c, d
};

// Vertex 4e+k belongs to quadrangle e; a, c are black and b, d white. Edge
// 4e+k is a quadrangle side, edge 4|E| + x the leg in the corner of dart x.
struct QuadDimerGraph {
  std::vector<GqEdge> edges;
  std::vector<Quadrangle> quadrangles;
  std::vector<VertexClass> vertex_class;
  std::vector<int> class_index;  // row (black) or column (white) index
  std::vector<int> leg_at;       // leg edge id at each vertex
  CombinatorialMap embedding;    // darts 2g from the black end, 2g+1 from the white end

  int vertex_count() const noexcept { return static_cast<int>(vertex_class.size()); }
  int edge_count() const noexcept { return static_cast<int>(edges.size()); }
  int black_count() const noexcept { return vertex_count() / 2; }
};

QuadDimerGraph build_gq(const CombinatorialMap& map);
QuadDimerGraph build_gq(const CombinatorialMap& map, const DualMap& dual);

struct DimerWeights {
  std::vector<double> values;
};

// 1 on legs, tanh(2J) on primal-parallel and 1/cosh(2J) on dual-parallel
// edges, for any coupling with a quarter-turn shift.
DimerWeights dimer_weights(const QuadDimerGraph& gq, const CouplingAssignment& couplings);
// The same for base couplings.
DimerWeights nu(const QuadDimerGraph& gq, const CouplingAssignment& base);
// Base weights with primal-parallel edges negated on gamma_star and
// dual-parallel edges negated on gamma.
DimerWeights nu_modified(const QuadDimerGraph& gq, const CouplingAssignment& base, const DefectSet& defects);

// Calls visit with the matched edge ids of every perfect matching, in a
// fixed order. Throws TooLarge past caps.dimer_vertices.
void for_each_matching(const QuadDimerGraph& gq, const std::function<void(const std::vector<int>&)>& visit,
                       const Caps& caps = {});
// Signed weighted matching sum by enumeration, skipping zero-weight edges.
double brute_force_dimer_Z(const QuadDimerGraph& gq, const DimerWeights& weights, const Caps& caps = {});

// +1 when G_Q edge g is oriented from its black to its white end.
struct KasteleynOrientation {
  std::vector<int> sign;
  FaceId outer_face = 0;
};

// Clockwise-odd on every face except the outer one, built along a spanning
// tree of the faces. Throws OrientationFailure if the check fails.
KasteleynOrientation kasteleyn_orientation(const QuadDimerGraph& gq);
// Every bounded face has an odd number of edges oriented along its
// clockwise traversal.
bool is_admissible(const QuadDimerGraph& gq, const KasteleynOrientation& orientation);

Matrix kasteleyn_matrix(const QuadDimerGraph& gq, const DimerWeights& weights,
                        const KasteleynOrientation& orientation);
Determinant dimer_Z_det(const QuadDimerGraph& gq, const DimerWeights& weights,
                        const KasteleynOrientation& orientation);
// det(numerator) / det(denominator) under one orientation; throws
// SingularMatrix when the denominator vanishes.
double dimer_det_ratio(const QuadDimerGraph& gq, const DimerWeights& numerator, const DimerWeights& denominator,
                       const KasteleynOrientation& orientation);

enum class DimerMethod { brute, determinant };

// Signed matching sums for base and modified weights. Brute force within
// caps.dimer_vertices; above it, determinants under one orientation with the
// overall sign fixed by the positive base sum.
struct DimerPair {
  double base = 0.0;
  double modified = 0.0;
  DimerMethod method = DimerMethod::brute;
  double condition = 0.0;
};
DimerPair dimer_partition_pair(const QuadDimerGraph& gq, const DimerWeights& base, const DimerWeights& modified,
                               const Caps& caps = {});

// A leg configuration as one bit per leg, indexed by primal dart.
using LegMask = std::vector<bool>;

// The two leg configurations compatible with a non-intersecting pair: leg
// (u, f) is matched when x_u + y_f is odd, where x cuts the dual polygon and
// y cuts the primal one. Throws InconsistentPair for an invalid pair.
std::array<LegMask, 2> leg_configurations(const CombinatorialMap& map, const PolygonPair& pair);
// Quadrangles with no matched leg under a leg configuration.
int free_quadrangles(const QuadDimerGraph& gq, const LegMask& legs);
// Dimer configurations mapping to the pair: 2^q0(L) + 2^q0(L'), summed over
// its two leg configurations.
std::int64_t polygon_to_dimer_count(const QuadDimerGraph& gq, const CombinatorialMap& map, const PolygonPair& pair);
// Pair induced by a matching: quadrangles with exactly one matched side put e
// in the primal (primal-parallel side) or dual (dual-parallel side) polygon.
PolygonPair matching_to_pair(const QuadDimerGraph& gq, const std::vector<int>& matching);

// Pair-polygon sum without C against Z_dimer(nu(Jbar)) / 2.
IdentityReport check_bipartite_dimer_identity(const CombinatorialMap& map, const DualMap& dual,
                                              const CouplingAssignment& base, const DefectSet& defects,
                                              const Caps& caps = {}, double tolerance = default_tolerance);
IdentityReport verify_bipartite_dimer_identity(const CombinatorialMap& map, const DualMap& dual,
                                               const CouplingAssignment& base, const DefectSet& defects,
                                               const Caps& caps = {}, double tolerance = default_tolerance);

struct TheoremReport {
  IdentityReport ratio;             // [Z(Jbar)/Z(J)]^2 against sign * (-1)^|Gamma| dimer ratio
  IdentityReport unsquared;         // [Z(J)]^2 = 2^|V| prod cosh(2J) Z_dimer(nu(J))
  IdentityReport unsquared_defect;  // [Z(Jbar)]^2 = (-1)^|Gamma| 2^|V| prod cosh(2J) Z_dimer(nu(Jbar))
  int sign = 1;                     // realized sign
  double squared_ratio = 0.0;
  double dimer_ratio = 0.0;  // (-1)^|Gamma| Z_dimer(nu(Jbar)) / Z_dimer(nu(J))
  DimerMethod method = DimerMethod::brute;
  bool pass = false;
};

TheoremReport check_theorem_main(const CombinatorialMap& map, const DualMap& dual, const CouplingAssignment& base,
                                 const DefectSet& defects, const Caps& caps = {},
                                 double tolerance = default_tolerance);
TheoremReport verify_theorem_main(const CombinatorialMap& map, const DualMap& dual, const CouplingAssignment& base,
                                  const DefectSet& defects, const Caps& caps = {},
                                  double tolerance = default_tolerance);

nlohmann::json to_json(const TheoremReport& report);
const char* method_name(DimerMethod method);

}  // namespace bozon
