#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "bozon/planar_map.hpp"

namespace bozon {

// Edge subsets of graphs with at most 64 edges. Primal and dual edges share
// ids through the identity edge bijection.
using EdgeMask = std::uint64_t;

inline constexpr int max_mask_edges = 64;

inline bool mask_contains(EdgeMask m, EdgeId e) { return (m >> e) & 1U; }
inline EdgeMask mask_bit(EdgeId e) { return EdgeMask{1} << e; }
inline int mask_size(EdgeMask m) { return std::popcount(m); }

std::vector<EdgeId> mask_edges(EdgeMask m);
EdgeMask edges_mask(const std::vector<EdgeId>& edges);

enum class GraphSide { primal, dual };

// Even subgraph of the carrying graph (G for primal, G* for dual).
struct PolygonConfig {
  GraphSide side = GraphSide::primal;
  EdgeMask edges = 0;

  bool contains(EdgeId e) const { return mask_contains(edges, e); }
  friend bool operator==(const PolygonConfig&, const PolygonConfig&) = default;
};

// Non-intersecting when no edge e of the primal polygon has e* in the dual one.
struct PolygonPair {
  PolygonConfig primal{GraphSide::primal, 0};
  PolygonConfig dual{GraphSide::dual, 0};

  bool non_intersecting() const { return (primal.edges & dual.edges) == 0; }
};

// Every vertex of `graph` meets an even number of edges of the mask (a loop
// counts twice).
bool is_even_subgraph(const CombinatorialMap& graph, EdgeMask edges);

}  // namespace bozon
