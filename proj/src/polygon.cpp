#include "bozon/polygon.hpp"

#include <cmath>
#include <deque>
#include <string>

#include "bozon/error.hpp"

namespace bozon {

std::vector<EdgeId> mask_edges(EdgeMask m) {
  std::vector<EdgeId> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

EdgeMask edges_mask(const std::vector<EdgeId>& edges) {
  EdgeMask m = 0;
  for (EdgeId e : edges) {
    if (e < 0 || e >= max_mask_edges) throw Error(ErrorKind::too_large, "edge id beyond mask width");
    m |= mask_bit(e);
  }
  return m;
}

bool is_even_subgraph(const CombinatorialMap& graph, EdgeMask edges) {
  std::vector<int> degree(graph.vertex_count(), 0);
  for (EdgeId e : mask_edges(edges)) {
    if (e >= graph.edge_count()) return false;
    auto [u, v] = graph.endpoints(e);
    ++degree[u];
    ++degree[v];
  }
  for (int d : degree)
    if (d % 2) return false;
  return true;
}

int cycle_rank(const CombinatorialMap& graph) { return graph.edge_count() - graph.vertex_count() + 1; }

std::vector<PolygonConfig> enumerate_polygons(const CombinatorialMap& graph, GraphSide side, const Caps& caps) {
  if (graph.edge_count() > max_mask_edges) throw Error(ErrorKind::too_large, "polygon masks hold at most 64 edges");
  const int rank = cycle_rank(graph);
  if (rank > caps.cycle_rank)
    throw Error(ErrorKind::too_large, "cycle rank " + std::to_string(rank) + " exceeds cap " +
                                          std::to_string(caps.cycle_rank));

  // BFS tree; root paths as edge masks.
  const int n = graph.vertex_count();
  std::vector<EdgeMask> to_root(n, 0);
  std::vector<bool> seen(n, false);
  std::vector<bool> tree_edge(graph.edge_count(), false);
  std::deque<VertexId> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (DartId d : graph.rotation(v)) {
      VertexId w = graph.target(d);
      if (seen[w]) continue;
      seen[w] = true;
      tree_edge[graph.edge_of(d)] = true;
      to_root[w] = to_root[v] | mask_bit(graph.edge_of(d));
      queue.push_back(w);
    }
  }
  std::vector<EdgeMask> basis;
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    if (tree_edge[e]) continue;
    auto [u, v] = graph.endpoints(e);
    basis.push_back(to_root[u] ^ to_root[v] ^ mask_bit(e));
  }

  std::vector<PolygonConfig> out;
  out.reserve(std::size_t{1} << basis.size());
  EdgeMask current = 0;
  out.push_back({side, current});
  const std::uint64_t total = std::uint64_t{1} << basis.size();
  for (std::uint64_t i = 1; i < total; ++i) {
    current ^= basis[std::countr_zero(i)];
    out.push_back({side, current});
  }
  return out;
}

PolygonWeights polygon_weights(const CombinatorialMap& map, const CouplingAssignment& modified) {
  if (modified.size() != map.edge_count()) throw Error(ErrorKind::length_mismatch, "coupling count mismatch");
  PolygonWeights w;
  w.constant = std::pow(2.0, map.vertex_count() + 1);
  for (EdgeId e = 0; e < map.edge_count(); ++e) {
    const Coupling twice = modified[e].doubled();
    const Complex c = twice.cosh_value();
    w.primal.push_back(twice.tanh_value());
    w.dual.push_back((1.0 / c).real());
    w.constant *= c;
  }
  return w;
}

double factored_constant(const CombinatorialMap& map, const CouplingAssignment& base, const DefectSet& defects) {
  double c = std::pow(2.0, map.vertex_count() + 1);
  for (EdgeId e = 0; e < map.edge_count(); ++e) c *= std::cosh(2.0 * base[e].real);
  return defects.gamma().size() % 2 ? -c : c;
}

double pair_weight(const PolygonWeights& weights, const PolygonPair& pair) {
  double w = 1.0;
  for (EdgeId e : mask_edges(pair.primal.edges)) w *= weights.primal[e];
  for (EdgeId e : mask_edges(pair.dual.edges)) w *= weights.dual[e];
  return w;
}

PairPolygonSum pair_polygon_sum(const CombinatorialMap& map, const DualMap& dual, const CouplingAssignment& modified,
                                const Caps& caps) {
  const PolygonWeights weights = polygon_weights(map, modified);
  const auto primal = enumerate_polygons(map, GraphSide::primal, caps);
  const auto duals = enumerate_polygons(dual.map, GraphSide::dual, caps);

  // Dual polygon edges are dual edge ids; bring them back to primal ids once.
  std::vector<EdgeId> primal_of_dual(map.edge_count());
  for (EdgeId e = 0; e < map.edge_count(); ++e) primal_of_dual[dual.edge_bijection[e]] = e;
  std::vector<std::pair<EdgeMask, double>> dual_terms;
  dual_terms.reserve(duals.size());
  for (const auto& q : duals) {
    EdgeMask m = 0;
    double w = 1.0;
    for (EdgeId de : mask_edges(q.edges)) {
      m |= mask_bit(primal_of_dual[de]);
      w *= weights.dual[primal_of_dual[de]];
    }
    dual_terms.emplace_back(m, w);
  }

  PairPolygonSum out;
  long double total = 0.0L;
  for (const auto& p : primal) {
    double wp = 1.0;
    for (EdgeId e : mask_edges(p.edges)) wp *= weights.primal[e];
    if (wp == 0.0) {
      for (const auto& [m, w] : dual_terms) out.pair_count += (m & p.edges) == 0;
      continue;
    }
    long double inner = 0.0L;
    for (const auto& [m, w] : dual_terms) {
      if (m & p.edges) continue;
      inner += w;
      ++out.pair_count;
    }
    total += wp * inner;
  }
  out.pair_sum = static_cast<double>(total);
  out.constant = weights.constant;
  out.value = weights.constant * out.pair_sum;
  return out;
}

IdentityReport check_squared_partition(const CombinatorialMap& map, const DualMap& dual,
                                       const CouplingAssignment& base, const DefectSet& defects, const Caps& caps,
                                       double tolerance) {
  const CouplingAssignment modified = modify_couplings(base, defects);
  const Complex z = partition_function(map, modified, caps);
  const PairPolygonSum pairs = pair_polygon_sum(map, dual, modified, caps);
  return compare("[Z(G,Jbar)]^2 = C * pair-polygon sum", z * z, pairs.value, tolerance);
}

IdentityReport verify_squared_partition(const CombinatorialMap& map, const DualMap& dual,
                                        const CouplingAssignment& base, const DefectSet& defects, const Caps& caps,
                                        double tolerance) {
  IdentityReport r = check_squared_partition(map, dual, base, defects, caps, tolerance);
  require(r);
  return r;
}

}  // namespace bozon
