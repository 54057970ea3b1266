#pragma once

// Independent reference evaluators for the tests. None of these go through
// the closed forms or enumeration strategies of the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "bozon/ising.hpp"
#include "bozon/planar_map.hpp"

namespace oracle {

using bozon::CombinatorialMap;
using Complex = std::complex<double>;

inline Complex complex_coupling(double real, bool order_shift) {
  return {real, order_shift ? std::numbers::pi / 2.0 : 0.0};
}

// Sum over 2^V spin configurations of exp(sum_e K_e s_u s_v) with generic
// complex exponentials.
inline Complex ising_z(const CombinatorialMap& map, const std::vector<Complex>& couplings) {
  const int n = map.vertex_count();
  Complex total = 0.0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    Complex exponent = 0.0;
    for (bozon::EdgeId e = 0; e < map.edge_count(); ++e) {
      auto [u, v] = map.endpoints(e);
      const int s = (((x >> u) ^ (x >> v)) & 1U) ? -1 : 1;
      exponent += couplings[e] * double(s);
    }
    total += std::exp(exponent);
  }
  return total;
}

inline std::vector<Complex> modified(const CombinatorialMap& map, const std::vector<double>& base,
                                     const bozon::DefectSet& d) {
  std::vector<Complex> out;
  for (bozon::EdgeId e = 0; e < map.edge_count(); ++e) {
    if (d.in_gamma(e))
      out.push_back(complex_coupling(base[e], true));
    else if (d.in_gamma_star(e))
      out.push_back(-base[e]);
    else
      out.push_back(base[e]);
  }
  return out;
}

inline std::vector<Complex> as_complex(const std::vector<double>& v) { return {v.begin(), v.end()}; }

// E[prod sigma] by plain enumeration, optional pinned spins (0 = free).
inline double expectation(const CombinatorialMap& map, const std::vector<double>& couplings,
                          const std::vector<bozon::VertexId>& observed, const std::vector<int>& fixed = {}) {
  const int n = map.vertex_count();
  double z = 0.0, num = 0.0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      if (!fixed.empty() && fixed[v] != 0) ok = (((x >> v) & 1U) ? -1 : 1) == fixed[v];
    if (!ok) continue;
    double energy = 0.0;
    for (bozon::EdgeId e = 0; e < map.edge_count(); ++e) {
      auto [u, v] = map.endpoints(e);
      energy += couplings[e] * ((((x >> u) ^ (x >> v)) & 1U) ? -1.0 : 1.0);
    }
    double prod = 1.0;
    for (int v : observed) prod *= ((x >> v) & 1U) ? -1.0 : 1.0;
    z += std::exp(energy);
    num += prod * std::exp(energy);
  }
  return num / z;
}

// Pinned-spin partition function by plain enumeration.
inline double pinned_z(const CombinatorialMap& map, const std::vector<double>& couplings,
                       const std::vector<int>& fixed) {
  const int n = map.vertex_count();
  double z = 0.0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      if (fixed[v] != 0) ok = (((x >> v) & 1U) ? -1 : 1) == fixed[v];
    if (!ok) continue;
    double energy = 0.0;
    for (bozon::EdgeId e = 0; e < map.edge_count(); ++e) {
      auto [u, v] = map.endpoints(e);
      energy += couplings[e] * ((((x >> u) ^ (x >> v)) & 1U) ? -1.0 : 1.0);
    }
    z += std::exp(energy);
  }
  return z;
}

// All even subgraphs by filtering every edge subset.
inline std::vector<std::uint64_t> even_subsets(const CombinatorialMap& g) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.edge_count()); ++m) {
    std::vector<int> deg(g.vertex_count(), 0);
    for (bozon::EdgeId e = 0; e < g.edge_count(); ++e)
      if ((m >> e) & 1U) {
        auto [u, v] = g.endpoints(e);
        ++deg[u];
        ++deg[v];
      }
    bool even = true;
    for (int d : deg) even = even && d % 2 == 0;
    if (even) out.push_back(m);
  }
  return out;
}

// Permanent of a square matrix by dynamic programming over column subsets:
// the signed matching sum of a bipartite graph.
inline double permanent(const std::vector<std::vector<double>>& a) {
  const int n = static_cast<int>(a.size());
  std::vector<double> dp(std::size_t{1} << n, 0.0);
  dp[0] = 1.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (dp[mask] == 0.0) continue;
    const int row = std::popcount(mask);
    if (row == n) continue;
    for (int c = 0; c < n; ++c)
      if (!((mask >> c) & 1U) && a[row][c] != 0.0) dp[mask | (std::uint64_t{1} << c)] += dp[mask] * a[row][c];
  }
  return dp.back();
}

// Same embedding under a random relabeling of vertices, edges and darts
// (including swapping the two darts of an edge).
inline CombinatorialMap relabel(const CombinatorialMap& map, std::mt19937_64& rng,
                                std::vector<bozon::EdgeId>* edge_image = nullptr,
                                std::vector<bozon::VertexId>* vertex_image = nullptr) {
  std::vector<int> vperm(map.vertex_count()), eperm(map.edge_count());
  for (int i = 0; i < map.vertex_count(); ++i) vperm[i] = i;
  for (int i = 0; i < map.edge_count(); ++i) eperm[i] = i;
  std::shuffle(vperm.begin(), vperm.end(), rng);
  std::shuffle(eperm.begin(), eperm.end(), rng);
  std::vector<int> flip(map.edge_count());
  for (auto& f : flip) f = static_cast<int>(rng() & 1U);
  auto new_dart = [&](bozon::DartId d) {
    bozon::EdgeId e = map.edge_of(d);
    int side = map.dart_of(e, 0) == d ? 0 : 1;
    return 2 * eperm[e] + (side ^ flip[e]);
  };
  bozon::RotationSystem rs;
  rs.rotations.resize(map.vertex_count());
  rs.edges.resize(map.edge_count());
  for (bozon::EdgeId e = 0; e < map.edge_count(); ++e) rs.edges[eperm[e]] = {2 * eperm[e], 2 * eperm[e] + 1};
  for (bozon::VertexId v = 0; v < map.vertex_count(); ++v)
    for (bozon::DartId d : map.rotation(v)) rs.rotations[vperm[v]].push_back(new_dart(d));
  if (edge_image) *edge_image = eperm;
  if (vertex_image) *vertex_image = vperm;
  return CombinatorialMap::build(rs);
}

inline std::vector<double> random_couplings(int edges, std::mt19937_64& rng, double lo = 0.1, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> out(edges);
  for (auto& j : out) j = u(rng);
  return out;
}

inline double rel_err(Complex a, Complex b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace oracle
