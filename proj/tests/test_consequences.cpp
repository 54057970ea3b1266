#include <cmath>
#include <random>

#include "bozon/builtin_graphs.hpp"
#include "bozon/consequences.hpp"
#include "bozon/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bozon;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::input_error;
}

FaceId largest_face(const CombinatorialMap& m) {
  FaceId best = 0;
  for (FaceId f = 1; f < m.face_count(); ++f)
    if (m.face_darts(f).size() > m.face_darts(best).size()) best = f;
  return best;
}

VertexId hub(const CombinatorialMap& m) {
  VertexId best = 0;
  for (VertexId v = 1; v < m.vertex_count(); ++v)
    if (m.rotation(v).size() > m.rotation(best).size()) best = v;
  return best;
}

}  // namespace

TEST_CASE("single edge gives tanh J") {
  const auto m = map_from_drawing({{0.0, 0.0}, {1.0, 0.0}}, {{0, 1}});
  for (double j : {0.1, 0.7, 2.0}) {
    const auto r = spin_correlation(m, CouplingAssignment::uniform(1, j), {0, 1}, {PathSpec{{0, 1}, {0}}});
    CHECK(r.value == doctest::Approx(std::tanh(j)).epsilon(1e-12));
    CHECK(r.imaginary_residue < 1e-12);
    CHECK(r.report.pass);
  }
}

TEST_CASE("adjacent spins on the square") {
  const auto c4 = builtin_graph("c4");
  const double j = 0.8, t = std::tanh(j);
  const auto [u, v] = c4.endpoints(0);
  const auto base = CouplingAssignment::uniform(4, j);
  const double expected = (t + t * t * t) / (1 + t * t * t * t);
  const auto r = spin_correlation(c4, base, {u, v}, {PathSpec{{u, v}, {0}}});
  CHECK(r.value == doctest::Approx(expected).epsilon(1e-12));
  CHECK(oracle::expectation(c4, {j, j, j, j}, {u, v}) == doctest::Approx(expected).epsilon(1e-12));
  const auto sq = spin_correlation_squared_dimer(c4, base, {u, v}, {PathSpec{{u, v}, {0}}});
  CHECK(sq.pass);
  CHECK(sq.sign == 1);
  CHECK(sq.squared_value == doctest::Approx(expected * expected).epsilon(1e-12));
}

TEST_CASE("correlations do not depend on the chosen path") {
  const auto c4 = builtin_graph("c4");
  const auto [u, v] = c4.endpoints(0);
  const auto base = CouplingAssignment::from_reals({0.3, 1.2, 0.5, 0.9});
  const auto short_way = spin_correlation(c4, base, {u, v}, {PathSpec{{u, v}, {0}}});
  std::vector<bool> no_zero(4, false);
  no_zero[0] = true;
  const auto other = find_path(c4, u, v, {}, no_zero);
  REQUIRE(other);
  CHECK(other->size() == 3);
  const auto long_way = spin_correlation(c4, base, {u, v}, {PathSpec{{u, v}, *other}});
  CHECK(short_way.value == doctest::Approx(long_way.value).epsilon(1e-12));
}

TEST_CASE("squared correlations against dimers") {
  std::mt19937_64 rng(31);
  for (const char* name : {"k3", "c4", "grid_2_3", "wheel_4", "grid_3_3"}) {
    const auto m = builtin_graph(name);
    for (int trial = 0; trial < 3; ++trial) {
      const auto j = oracle::random_couplings(m.edge_count(), rng);
      const auto base = CouplingAssignment::from_reals(j);
      std::vector<VertexId> vs{VertexId(rng() % m.vertex_count()), VertexId(rng() % m.vertex_count())};
      if (vs[0] == vs[1]) vs[1] = (vs[1] + 1) % m.vertex_count();
      const auto paths = pair_paths(m, vs);
      const auto r = spin_correlation_squared_dimer(m, base, vs, paths);
      CHECK(r.pass);
      CHECK(r.sign == 1);
      const double e = oracle::expectation(m, j, vs);
      CHECK(r.squared_value == doctest::Approx(e * e).epsilon(1e-10));
    }
  }
}

TEST_CASE("four spins on the larger grid") {
  const auto g = builtin_graph("grid_3_3");
  std::mt19937_64 rng(4);
  const auto j = oracle::random_couplings(g.edge_count(), rng);
  const std::vector<VertexId> vs{0, 2, 6, 8};
  const auto paths = pair_paths(g, vs);
  CHECK(paths.size() == 2);
  const auto r = spin_correlation(g, CouplingAssignment::from_reals(j), vs, paths);
  CHECK(r.report.pass);
  CHECK(r.value == doctest::Approx(oracle::expectation(g, j, vs)).epsilon(1e-10));
  CHECK(spin_correlation_squared_dimer(g, CouplingAssignment::from_reals(j), vs, paths).pass);
}

TEST_CASE("weak coupling drives correlations to zero") {
  const auto c4 = builtin_graph("c4");
  const auto [u, v] = c4.endpoints(0);
  const auto r = spin_correlation(c4, CouplingAssignment::uniform(4, 1e-6), {u, v}, {PathSpec{{u, v}, {0}}});
  CHECK(std::abs(r.value - 1e-6) < 1e-9);
  const auto sq = spin_correlation_squared_dimer(c4, CouplingAssignment::uniform(4, 1e-6), {u, v},
                                                 {PathSpec{{u, v}, {0}}});
  CHECK(std::abs(sq.squared_value - sq.dimer_ratio) < 1e-15);
}

TEST_CASE("endpoints must match the insertions") {
  const auto c4 = builtin_graph("c4");
  const auto [u, v] = c4.endpoints(0);
  const auto base = CouplingAssignment::uniform(4, 0.5);
  CHECK(kind_of([&] { spin_correlation(c4, base, {u, v}, {PathSpec{{u, u}, {}}}); }) ==
        ErrorKind::endpoint_mismatch);
  CHECK(kind_of([&] { pair_paths(c4, {u}); }) == ErrorKind::input_error);
}

TEST_CASE("spinor correlators") {
  const auto c4 = builtin_graph("c4");
  const auto base = CouplingAssignment::from_reals({0.4, 0.9, 0.6, 1.3});
  SUBCASE("no insertions") {
    const auto r = spinor_correlation_squared(c4, base, {});
    CHECK(r.correlator.real() == doctest::Approx(1.0));
    CHECK(r.squared.pass);
  }
  SUBCASE("one vertex and one face") {
    // u on both faces; the order path is trivial and the dual path crosses one edge.
    const auto [u, w] = c4.endpoints(1);
    (void)w;
    const auto [f, g] = c4.dual_endpoints(1);
    SpinorSpec spec;
    spec.pairs = {{u, f}, {w, g}};
    spec.order_paths = {PathSpec{{u, w}, {1}}};
    spec.disorder_paths = {PathSpec{{f, g}, {3}}};
    const auto r = spinor_correlation_squared(c4, base, spec);
    CHECK(r.squared.pass);
    const auto d = validate_defects(c4, spec.order_paths, spec.disorder_paths);
    const Complex want = oracle::ising_z(c4, oracle::modified(c4, {0.4, 0.9, 0.6, 1.3}, d)) /
                         oracle::ising_z(c4, oracle::as_complex({0.4, 0.9, 0.6, 1.3}));
    CHECK(oracle::rel_err(r.correlator, want) < 1e-12);
  }
  SUBCASE("vertex off its face") {
    const auto verts = c4.face_vertices(0);
    SpinorSpec spec;
    spec.pairs = {{verts[0], 0}};
    // Every vertex of C4 lies on both faces; use an out-of-range face instead.
    spec.pairs = {{verts[0], 7}};
    CHECK(kind_of([&] { spinor_correlation_squared(c4, base, spec); }) == ErrorKind::input_error);
  }
}

TEST_CASE("magnetization with plus boundary") {
  SUBCASE("boundary vertex is fully magnetized") {
    const auto c4 = builtin_graph("c4");
    const auto r = magnetization(c4, CouplingAssignment::uniform(4, 0.5), 0, c4.face_vertices(0)[0]);
    CHECK(r.direct == doctest::Approx(1.0));
    CHECK(r.pass);
  }
  SUBCASE("wheel hub") {
    const auto w = builtin_graph("wheel_4");
    const FaceId rim = largest_face(w);
    const VertexId c = hub(w);
    std::mt19937_64 rng(9);
    const auto j = oracle::random_couplings(w.edge_count(), rng);
    const auto r = magnetization(w, CouplingAssignment::from_reals(j), rim, c);
    CHECK(r.pass);
    CHECK(r.gamma.edges.size() == 1);
    std::vector<int> fixed(w.vertex_count(), 1);
    fixed[c] = 0;
    const double want = oracle::expectation(w, j, {c}, fixed);
    CHECK(r.direct == doctest::Approx(want).epsilon(1e-12));
    CHECK(r.reduced_pair == doctest::Approx(want).epsilon(1e-10));
    CHECK(r.direct > 0.0);
    CHECK(r.direct < 1.0);
    // The reduced map is two vertices joined by four parallel edges.
    REQUIRE(r.squared.has_value());
    CHECK(r.squared->pass);
  }
  SUBCASE("strong coupling saturates") {
    const auto w = builtin_graph("wheel_4");
    const auto r = magnetization(w, CouplingAssignment::uniform(w.edge_count(), 5.0), largest_face(w), hub(w));
    CHECK(std::abs(r.direct - 1.0) < 1e-3);
    CHECK(r.pass);
  }
  SUBCASE("grid interior") {
    const auto g = builtin_graph("grid_3_3");
    std::mt19937_64 rng(12);
    const auto r = magnetization(g, CouplingAssignment::from_reals(oracle::random_couplings(12, rng)),
                                 largest_face(g), 4);
    CHECK(r.pass);
    CHECK(r.direct > 0.0);
    CHECK(r.direct < 1.0);
  }
  SUBCASE("gamma on the boundary is rejected") {
    const auto w = builtin_graph("wheel_4");
    const FaceId rim = largest_face(w);
    const auto e = w.face_edges(rim)[0];
    const auto [a, b] = w.endpoints(e);
    CHECK(kind_of([&] {
            magnetization(w, CouplingAssignment::uniform(8, 0.5), rim, hub(w), PathSpec{{a, b}, {e}});
          }) == ErrorKind::defect_on_boundary);
  }
}

TEST_CASE("Kramers-Wannier duality") {
  std::mt19937_64 rng(2024);
  SUBCASE("order on K3 becomes disorder on the dual") {
    const auto k3 = builtin_graph("k3");
    const auto [u, v] = k3.endpoints(0);
    const auto d = validate_defects(k3, {PathSpec{{u, v}, {0}}}, {});
    const auto r = kw_duality_check(k3, CouplingAssignment::from_reals({0.5, 0.9, 1.4}), d);
    CHECK(r.pass);
    CHECK(r.correlator.pass);
    const DualMap dm = dual(k3);
    const auto dd = dual_defects(k3, dm, d);
    CHECK(dd.gamma().empty());
    CHECK(dd.gamma_star().size() == 1);
  }
  SUBCASE("random weights per edge") {
    for (int trial = 0; trial < 20; ++trial) {
      const auto& names = default_graph_family();
      const auto m = builtin_graph(names[trial % 4]);
      const auto base = CouplingAssignment::from_reals(oracle::random_couplings(m.edge_count(), rng));
      const auto e = EdgeId(rng() % m.edge_count());
      const auto [u, v] = m.endpoints(e);
      const auto order = validate_defects(m, {PathSpec{{u, v}, {e}}}, {});
      const auto [f, g] = m.dual_endpoints(e);
      const auto disorder = validate_defects(m, {}, {PathSpec{{f, g}, {e}}});
      for (const auto& d : {DefectSet::empty(m.edge_count()), order, disorder}) {
        const auto r = kw_duality_check(m, base, d);
        CHECK(r.pass);
        CHECK(r.coupling_error <= 1e-12);
        CHECK(r.weight_error <= 1e-12);
      }
    }
  }
  SUBCASE("empty defects give one on both sides") {
    const auto c4 = builtin_graph("c4");
    const auto r = kw_duality_check(c4, CouplingAssignment::uniform(4, 0.7), DefectSet::empty(4));
    CHECK(r.correlator.lhs.real() == doctest::Approx(1.0));
    CHECK(r.correlator.rhs.real() == doctest::Approx(1.0));
  }
  SUBCASE("the real sign form fails for odd lengths") {
    const auto k3 = builtin_graph("k3");
    const auto [u, v] = k3.endpoints(0);
    const auto d = validate_defects(k3, {PathSpec{{u, v}, {0}}}, {});
    const auto r = kw_duality_check(k3, CouplingAssignment::uniform(3, 0.6), d);
    CHECK(r.correlator.pass);
    CHECK_FALSE(r.correlator_literal.pass);
  }
}
