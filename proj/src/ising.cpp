#include "bozon/ising.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "bozon/error.hpp"
#include "bozon/polygon.hpp"

namespace bozon {

Complex Coupling::value() const { return {real, (quarter_turns & 3) * std::numbers::pi / 2.0}; }

double Coupling::tanh_value() const {
  return (quarter_turns & 1) ? 1.0 / std::tanh(real) : std::tanh(real);
}

Complex Coupling::cosh_value() const {
  switch (quarter_turns & 3) {
    case 0: return {std::cosh(real), 0.0};
    case 1: return {0.0, std::sinh(real)};
    case 2: return {-std::cosh(real), 0.0};
    default: return {0.0, -std::sinh(real)};
  }
}

CouplingAssignment CouplingAssignment::from_reals(const std::vector<double>& values) {
  std::vector<Coupling> out;
  out.reserve(values.size());
  for (double v : values) out.push_back({v, 0});
  return CouplingAssignment(std::move(out));
}

CouplingAssignment CouplingAssignment::uniform(int edge_count, double value) {
  return from_reals(std::vector<double>(edge_count, value));
}

bool CouplingAssignment::is_base() const {
  for (const auto& c : couplings_)
    if (!(c.real > 0.0) || (c.quarter_turns & 3) != 0) return false;
  return true;
}

CouplingAssignment CouplingAssignment::doubled() const {
  std::vector<Coupling> out;
  out.reserve(couplings_.size());
  for (const auto& c : couplings_) out.push_back(c.doubled());
  return CouplingAssignment(std::move(out));
}

CouplingAssignment modify_couplings(const CouplingAssignment& base, const DefectSet& defects) {
  if (base.size() != defects.edge_count())
    throw Error(ErrorKind::length_mismatch, "couplings and defects cover different edge counts");
  CouplingAssignment out = base;
  for (EdgeId e : defects.gamma()) out[e].quarter_turns = (out[e].quarter_turns + 1) & 3;
  for (EdgeId e : defects.gamma_star()) out[e].real = -out[e].real;
  return out;
}

SpinSum spin_sum(const CombinatorialMap& map, const CouplingAssignment& couplings, const std::vector<int>& fixed,
                 const std::vector<VertexId>& observed, const Caps& caps) {
  const int n = map.vertex_count();
  if (couplings.size() != map.edge_count())
    throw Error(ErrorKind::length_mismatch, "coupling count differs from edge count");
  if (!fixed.empty() && static_cast<int>(fixed.size()) != n)
    throw Error(ErrorKind::length_mismatch, "fixed-spin vector differs from vertex count");

  std::vector<int> spin(n, 1);
  std::vector<VertexId> free;
  for (VertexId v = 0; v < n; ++v) {
    if (fixed.empty() || fixed[v] == 0)
      free.push_back(v);
    else
      spin[v] = fixed[v] > 0 ? 1 : -1;
  }
  if (static_cast<int>(free.size()) > caps.spin_vertices)
    throw Error(ErrorKind::too_large, std::to_string(free.size()) + " free spins exceed cap " +
                                          std::to_string(caps.spin_vertices));

  struct Bond {
    VertexId u, v;
    double real;
    int turns;
  };
  std::vector<Bond> bonds;
  bonds.reserve(map.edge_count());
  for (EdgeId e = 0; e < map.edge_count(); ++e) {
    auto [u, v] = map.endpoints(e);
    bonds.push_back({u, v, couplings[e].real, couplings[e].quarter_turns & 3});
  }

  // Buckets by the power of i carried by each configuration.
  std::array<long double, 4> weight{}, obs{};
  const std::uint64_t total = std::uint64_t{1} << free.size();
  for (std::uint64_t x = 0; x < total; ++x) {
    for (std::size_t i = 0; i < free.size(); ++i) spin[free[i]] = ((x >> i) & 1U) ? -1 : 1;
    double energy = 0.0;
    int phase = 0;
    for (const auto& b : bonds) {
      const int s = spin[b.u] * spin[b.v];
      energy += b.real * s;
      phase += s > 0 ? b.turns : 4 - b.turns;
    }
    int sign = 1;
    for (VertexId v : observed) sign *= spin[v];
    const long double w = std::exp(static_cast<long double>(energy));
    weight[phase & 3] += w;
    obs[phase & 3] += sign * w;
  }
  auto fold = [](const std::array<long double, 4>& b) {
    return Complex(static_cast<double>(b[0] - b[2]), static_cast<double>(b[1] - b[3]));
  };
  return {fold(weight), fold(obs)};
}

Complex partition_function(const CombinatorialMap& map, const CouplingAssignment& couplings, const Caps& caps) {
  return spin_sum(map, couplings, {}, {}, caps).weight;
}

IsingCorrelator order_disorder_correlation(const CombinatorialMap& map, const CouplingAssignment& base,
                                           const DefectSet& defects, const Caps& caps) {
  const Complex numerator = partition_function(map, modify_couplings(base, defects), caps);
  const Complex denominator = partition_function(map, base, caps);
  return {numerator / denominator, static_cast<int>(defects.gamma().size()),
          static_cast<int>(defects.gamma_star().size())};
}

double spin_expectation(const CombinatorialMap& map, const CouplingAssignment& couplings,
                        const std::vector<VertexId>& vertices, const std::vector<int>& fixed, const Caps& caps) {
  const SpinSum s = spin_sum(map, couplings, fixed, vertices, caps);
  return (s.observable / s.weight).real();
}

SpinConfig xor_product(const SpinConfig& a, const SpinConfig& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::length_mismatch, "spin configurations differ in length");
  SpinConfig out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

ExpansionCheck high_temp_expansion_check(const CombinatorialMap& map, const CouplingAssignment& couplings,
                                         const Caps& caps) {
  ExpansionCheck out;
  out.lhs = partition_function(map, couplings, caps);
  Complex prefactor = std::pow(2.0, map.vertex_count());
  for (EdgeId e = 0; e < map.edge_count(); ++e) prefactor *= couplings[e].cosh_value();
  double polygon_sum = 0.0;
  for (const PolygonConfig& p : enumerate_polygons(map, GraphSide::primal, caps)) {
    double w = 1.0;
    for (EdgeId e : mask_edges(p.edges)) w *= couplings[e].tanh_value();
    polygon_sum += w;
  }
  out.rhs = prefactor * polygon_sum;
  return out;
}

PolygonConfig low_temp_polygon(const CombinatorialMap& map, const DualMap& dual, const SpinConfig& tau) {
  if (static_cast<int>(tau.size()) != map.vertex_count())
    throw Error(ErrorKind::length_mismatch, "tau differs from vertex count");
  if (map.edge_count() > max_mask_edges) throw Error(ErrorKind::too_large, "edge masks hold at most 64 edges");
  PolygonConfig out{GraphSide::dual, 0};
  for (EdgeId e = 0; e < map.edge_count(); ++e) {
    auto [u, v] = map.endpoints(e);
    if (tau[u] != tau[v]) out.edges |= mask_bit(dual.edge_bijection[e]);
  }
  return out;
}

CouplingAssignment dual_couplings(const CouplingAssignment& base) {
  std::vector<Coupling> out;
  out.reserve(base.size());
  for (EdgeId e = 0; e < base.size(); ++e) {
    const Coupling& c = base[e];
    if (!(c.real > 0.0) || (c.quarter_turns & 3) != 0)
      throw Error(ErrorKind::non_positive_coupling, "edge " + std::to_string(e) + " needs a positive real coupling");
    out.push_back({-0.5 * std::log(std::tanh(c.real)), 0});
  }
  return CouplingAssignment(std::move(out));
}

Coupling dual_coupling(const Coupling& c) {
  if (c.real == 0.0) throw Error(ErrorKind::non_positive_coupling, "zero coupling has no dual");
  const double t = c.tanh_value();
  if (t > 0.0) return {-0.5 * std::log(t), 0};
  return {-0.5 * std::log(-t), 1};
}

}  // namespace bozon
