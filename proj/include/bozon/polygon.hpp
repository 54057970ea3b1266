#pragma once

#include <complex>
#include <vector>

#include "bozon/caps.hpp"
#include "bozon/edge_set.hpp"
#include "bozon/ising.hpp"
#include "bozon/planar_map.hpp"
#include "bozon/report.hpp"

namespace bozon {

// |E| - |V| + 1 for the connected graph.
int cycle_rank(const CombinatorialMap& graph);

// All even subgraphs, by Gray-code walk over a fundamental cycle basis. Loops
// of a dual graph are their own basis cycles. The empty polygon comes first.
std::vector<PolygonConfig> enumerate_polygons(const CombinatorialMap& graph, GraphSide side, const Caps& caps = {});

// Edge weights of the squared model: tanh(2J) on primal edges, 1/cosh(2J) on
// dual edges, and C = 2^(|V|+1) prod cosh(2J) (complex in general; real for
// couplings whose shift is a multiple of i*pi/2).
struct PolygonWeights {
  std::vector<double> primal;
  std::vector<double> dual;
  Complex constant;
};

PolygonWeights polygon_weights(const CombinatorialMap& map, const CouplingAssignment& modified);

// C rewritten through the base couplings: (-1)^|Gamma| 2^(|V|+1) prod cosh(2J_e).
double factored_constant(const CombinatorialMap& map, const CouplingAssignment& base, const DefectSet& defects);

struct PairPolygonSum {
  double pair_sum = 0.0;  // sum over non-intersecting pairs, without C
  Complex constant;
  Complex value;          // constant * pair_sum
  long long pair_count = 0;
};

PairPolygonSum pair_polygon_sum(const CombinatorialMap& map, const DualMap& dual, const CouplingAssignment& modified,
                                const Caps& caps = {});

// Weight of one pair under the given polygon weights.
double pair_weight(const PolygonWeights& weights, const PolygonPair& pair);

// [Z(G, Jbar)]^2 against C times the pair-polygon sum.
IdentityReport check_squared_partition(const CombinatorialMap& map, const DualMap& dual,
                                       const CouplingAssignment& base, const DefectSet& defects,
                                       const Caps& caps = {}, double tolerance = default_tolerance);
IdentityReport verify_squared_partition(const CombinatorialMap& map, const DualMap& dual,
                                        const CouplingAssignment& base, const DefectSet& defects,
                                        const Caps& caps = {}, double tolerance = default_tolerance);

}  // namespace bozon
