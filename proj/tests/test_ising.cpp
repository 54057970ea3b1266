#include <cmath>
#include <random>

#include "bozon/builtin_graphs.hpp"
#include "bozon/error.hpp"
#include "bozon/ising.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bozon;

namespace {

std::vector<PathSpec> single_edge_path(const CombinatorialMap& m, EdgeId e) {
  auto [u, v] = m.endpoints(e);
  return {PathSpec{{u, v}, {e}}};
}

}  // namespace

TEST_CASE("single edge partition function") {
  const auto m = map_from_drawing({{0, 0}, {1, 0}}, {{0, 1}});
  for (double j : {0.0, 0.3, 1.7}) {
    const Complex z = partition_function(m, CouplingAssignment::uniform(1, j));
    CHECK(z.real() == doctest::Approx(4.0 * std::cosh(j)).epsilon(1e-12));
    CHECK(z.imag() == 0.0);
  }
}

TEST_CASE("triangle partition function closed form") {
  const auto k3 = builtin_graph("k3");
  for (double j : {0.1, 0.8, 2.0}) {
    const Complex z = partition_function(k3, CouplingAssignment::uniform(3, j));
    CHECK(z.real() == doctest::Approx(2.0 * std::exp(3 * j) + 6.0 * std::exp(-j)).epsilon(1e-12));
  }
}

TEST_CASE("spin sum agrees with complex exponential oracle") {
  std::mt19937_64 rng(3);
  for (const auto& name : default_graph_family()) {
    const auto m = builtin_graph(name);
    for (int trial = 0; trial < 3; ++trial) {
      const auto j = oracle::random_couplings(m.edge_count(), rng);
      // One order edge and a disjoint disorder edge where possible.
      const EdgeId g = static_cast<EdgeId>(rng() % m.edge_count());
      EdgeId s = static_cast<EdgeId>((g + 1 + rng() % (m.edge_count() - 1)) % m.edge_count());
      const DefectSet d = DefectSet::from_edge_sets(m.edge_count(), {g}, {s});
      const auto mod = modify_couplings(CouplingAssignment::from_reals(j), d);
      const Complex got = partition_function(m, mod);
      const Complex want = oracle::ising_z(m, oracle::modified(m, j, d));
      CHECK(oracle::rel_err(got, want) < 1e-10);
    }
  }
}

TEST_CASE("modified couplings") {
  const auto base = CouplingAssignment::from_reals({0.5, 0.7, 0.9});
  const auto d = DefectSet::from_edge_sets(3, {0}, {2});
  const auto m = modify_couplings(base, d);
  CHECK(m[0] == Coupling{0.5, 1});
  CHECK(m[1] == Coupling{0.7, 0});
  CHECK(m[2] == Coupling{-0.9, 0});
  CHECK(modify_couplings(base, DefectSet::empty(3)).values() == base.values());
  CHECK_THROWS_AS(modify_couplings(base, DefectSet::empty(2)), Error);
}

TEST_CASE("coupling closed forms") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    const double r = u(rng);
    for (int q = 0; q < 4; ++q) {
      const Coupling c{r, q};
      const Complex z = c.value();
      CHECK(std::abs(c.cosh_value() - std::cosh(z)) < 1e-12 * std::cosh(r) + 1e-14);
      if (std::abs(r) > 1e-3) CHECK(std::abs(Complex(c.tanh_value()) - std::tanh(z)) < 1e-9 * std::abs(std::tanh(z)));
    }
  }
}

TEST_CASE("high temperature expansion") {
  std::mt19937_64 rng(9);
  for (const auto& name : default_graph_family()) {
    const auto m = builtin_graph(name);
    const auto j = oracle::random_couplings(m.edge_count(), rng);
    const auto r = high_temp_expansion_check(m, CouplingAssignment::from_reals(j));
    CHECK(oracle::rel_err(r.lhs, r.rhs) < 1e-10);
  }
}

TEST_CASE("order correlator is a spin correlation") {
  const auto k3 = builtin_graph("k3");
  const std::vector<double> j{0.4, 0.9, 1.3};
  const auto d = validate_defects(k3, single_edge_path(k3, 0), {});
  const IsingCorrelator c = order_disorder_correlation(k3, CouplingAssignment::from_reals(j), d);
  auto [u, v] = k3.endpoints(0);
  const Complex spin = Complex(0, -1) * c.value;
  CHECK(spin.real() == doctest::Approx(oracle::expectation(k3, j, {u, v})).epsilon(1e-12));
  CHECK(std::abs(spin.imag()) < 1e-12);
  CHECK(c.gamma_size == 1);
}

TEST_CASE("pinned spins and expectation") {
  const auto c4 = builtin_graph("c4");
  const std::vector<double> j{0.3, 0.6, 0.9, 1.2};
  const std::vector<int> fixed{1, 0, 0, -1};
  const auto s = spin_sum(c4, CouplingAssignment::from_reals(j), fixed);
  CHECK(s.weight.real() == doctest::Approx(oracle::pinned_z(c4, j, fixed)).epsilon(1e-12));
  CHECK(spin_expectation(c4, CouplingAssignment::from_reals(j), {1}, fixed) ==
        doctest::Approx(oracle::expectation(c4, j, {1}, fixed)).epsilon(1e-12));
}

TEST_CASE("spin cap") {
  const auto g = builtin_graph("grid_3_3");
  Caps caps;
  caps.spin_vertices = 8;
  CHECK_THROWS_AS(partition_function(g, CouplingAssignment::uniform(g.edge_count(), 0.5), caps), Error);
}

TEST_CASE("xor product of configurations") {
  CHECK(xor_product({1, -1, -1}, {-1, -1, 1}) == SpinConfig{-1, 1, -1});
  CHECK_THROWS_AS(xor_product({1}, {1, 1}), Error);
}

TEST_CASE("low temperature polygon is even on the dual") {
  const auto g = builtin_graph("grid_2_3");
  const DualMap d = dual(g);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    SpinConfig tau(g.vertex_count());
    for (auto& s : tau) s = (rng() & 1U) ? 1 : -1;
    const PolygonConfig p = low_temp_polygon(g, d, tau);
    CHECK(is_even_subgraph(d.map, p.edges));
  }
}

TEST_CASE("dual couplings") {
  const auto base = CouplingAssignment::from_reals({0.2, 1.0});
  const auto star = dual_couplings(base);
  for (int e = 0; e < 2; ++e) {
    CHECK(std::tanh(star[e].real) == doctest::Approx(std::exp(-2.0 * base[e].real)).epsilon(1e-12));
    CHECK(1.0 / std::cosh(2 * star[e].real) == doctest::Approx(std::tanh(2 * base[e].real)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(dual_couplings(CouplingAssignment::from_reals({-0.5})), Error);
  // Order and disorder trade places under the duality map.
  CHECK(dual_coupling({0.7, 1}) == Coupling{-dual_coupling({0.7, 0}).real, 0});
  const Coupling flipped = dual_coupling({-0.7, 0});
  CHECK(flipped.quarter_turns == 1);
  CHECK(flipped.real == doctest::Approx(dual_coupling({0.7, 0}).real));
}
