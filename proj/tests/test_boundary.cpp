#include <cmath>
#include <random>
#include <set>

#include "bozon/boundary.hpp"
#include "bozon/builtin_graphs.hpp"
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

// Brute-force check of one reduction for both J and Jbar, with the left side
// from the plain enumeration oracle.
void check_both(const CombinatorialMap& m, const std::vector<double>& j, const DefectSet& d,
                const BoundaryCondition& bc) {
  const auto base = CouplingAssignment::from_reals(j);
  const auto spins = boundary_spins(m, bc);
  for (const DefectSet& defects : {DefectSet::empty(m.edge_count()), d}) {
    const ReductionResult r = reduce(m, base, defects, bc);
    CHECK(r.scalar > 0.0);
    CHECK(r.new_map.vertex_count() - r.new_map.edge_count() + r.new_map.face_count() == 2);
    const Complex rhs = r.scalar * partition_function(r.new_map, modify_couplings(r.new_couplings, r.new_defects));
    Complex lhs;
    if (defects.is_empty()) {
      lhs = oracle::pinned_z(m, j, spins);
    } else {
      lhs = spin_sum(m, modify_couplings(base, defects), spins).weight;
    }
    CHECK(oracle::rel_err(lhs, rhs) < 1e-10);
    CHECK(check_reduction(m, base, defects, bc).pass);
  }
}

std::set<EdgeId> face_edge_set(const CombinatorialMap& m, FaceId f) {
  auto v = m.face_edges(f);
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("plus boundary on the square collapses to a point") {
  const auto c4 = builtin_graph("c4");
  const double j = 0.7;
  const auto base = CouplingAssignment::uniform(4, j);
  const auto r = reduce_plus(c4, base, DefectSet::empty(4), 0);
  CHECK(r.new_map.vertex_count() == 1);
  CHECK(r.new_map.edge_count() == 0);
  CHECK(r.scalar == doctest::Approx(0.5 * std::exp(4 * j)));
  // Z_plus(C4) = e^{4J} = scalar * 2.
  CHECK(r.scalar * partition_function(r.new_map, r.new_couplings).real() == doctest::Approx(std::exp(4 * j)));
}

TEST_CASE("plus boundary on every face of the family") {
  std::mt19937_64 rng(101);
  for (const auto& name : default_graph_family()) {
    const auto m = builtin_graph(name);
    for (FaceId f = 0; f < m.face_count(); ++f) {
      const auto j = oracle::random_couplings(m.edge_count(), rng);
      const auto boundary = face_edge_set(m, f);
      std::set<VertexId> bv;
      for (VertexId v : m.face_vertices(f)) bv.insert(v);
      // An order edge that is neither on the face nor a chord of it.
      DefectSet d = DefectSet::empty(m.edge_count());
      for (EdgeId e = 0; e < m.edge_count(); ++e) {
        auto [u, v] = m.endpoints(e);
        if (boundary.count(e) || (bv.count(u) && bv.count(v))) continue;
        d = validate_defects(m, {PathSpec{{u, v}, {e}}}, {});
        break;
      }
      BoundaryCondition bc;
      bc.face = f;
      bc.kind = BoundaryKind::plus;
      check_both(m, j, d, bc);
    }
  }
}

TEST_CASE("plus boundary keeps parallel edges") {
  const auto w = builtin_graph("wheel_4");
  // The rim face: the one face with four edges.
  FaceId rim = -1;
  for (FaceId f = 0; f < w.face_count(); ++f)
    if (w.face_darts(f).size() == 4) rim = f;
  REQUIRE(rim >= 0);
  const auto r = reduce_plus(w, CouplingAssignment::uniform(8, 0.5), DefectSet::empty(8), rim);
  CHECK(r.new_map.vertex_count() == 2);
  CHECK(r.new_map.edge_count() == 4);
  CHECK(r.new_map.face_count() == 4);
  CHECK(r.merged_vertex >= 0);
}

TEST_CASE("plus boundary rejects defects on the face") {
  const auto k3 = builtin_graph("k3");
  auto [u, v] = k3.endpoints(0);
  const auto d = validate_defects(k3, {PathSpec{{u, v}, {0}}}, {});
  CHECK(kind_of([&] { reduce_plus(k3, CouplingAssignment::uniform(3, 0.5), d, k3.dual_endpoints(0).first); }) ==
        ErrorKind::defect_on_boundary);
}

TEST_CASE("plus-free boundary") {
  const auto c4 = builtin_graph("c4");
  const auto base = CouplingAssignment::from_reals({0.3, 0.8, 1.1, 0.5});
  const auto empty = DefectSet::empty(4);
  SUBCASE("every boundary edge matches plus") {
    const auto all = c4.face_edges(0);
    const auto a = reduce_plus_free(c4, base, empty, all);
    const auto b = reduce_plus(c4, base, empty, 0);
    CHECK(a.scalar == doctest::Approx(b.scalar));
    CHECK(a.new_map.vertex_count() == b.new_map.vertex_count());
    CHECK(a.new_map.edge_count() == b.new_map.edge_count());
  }
  SUBCASE("no fixed edge is the identity") {
    const auto r = reduce_plus_free(c4, base, empty, {});
    CHECK(r.scalar == 1.0);
    CHECK(r.new_map.edge_count() == 4);
    CHECK(r.merged_vertex == -1);
    CHECK(partition_function(r.new_map, r.new_couplings).real() ==
          doctest::Approx(partition_function(c4, base).real()));
  }
  SUBCASE("half the boundary") {
    const auto edges = c4.face_edges(0);
    BoundaryCondition bc;
    bc.kind = BoundaryKind::plus_free;
    bc.fixed_edges = {edges[0], edges[1]};
    check_both(c4, {0.3, 0.8, 1.1, 0.5}, empty, bc);
  }
  SUBCASE("arcs on larger graphs") {
    std::mt19937_64 rng(5);
    for (const auto& name : default_graph_family()) {
      const auto m = builtin_graph(name);
      for (FaceId f = 0; f < m.face_count(); ++f) {
        const auto edges = m.face_edges(f);
        for (std::size_t len = 1; len < edges.size(); ++len) {
          BoundaryCondition bc;
          bc.kind = BoundaryKind::plus_free;
          const std::size_t start = rng() % edges.size();
          for (std::size_t i = 0; i < len; ++i) bc.fixed_edges.push_back(edges[(start + i) % edges.size()]);
          check_both(m, oracle::random_couplings(m.edge_count(), rng), DefectSet::empty(m.edge_count()), bc);
        }
      }
    }
  }
  SUBCASE("non-contiguous arc") {
    const auto edges = c4.face_edges(0);
    CHECK(kind_of([&] { reduce_plus_free(c4, base, empty, {edges[0], edges[2]}); }) ==
          ErrorKind::non_contiguous_arc);
  }
  SUBCASE("defect on a fixed edge") {
    const auto d = DefectSet::from_edge_sets(4, {}, {c4.face_edges(0)[0]});
    CHECK(kind_of([&] { reduce_plus_free(c4, base, d, {c4.face_edges(0)[0]}); }) == ErrorKind::defect_on_boundary);
  }
}

TEST_CASE("Dobrushin boundary on the square") {
  const auto c4 = builtin_graph("c4");
  const auto verts = c4.face_vertices(0);
  BoundaryCondition bc;
  bc.kind = BoundaryKind::dobrushin;
  bc.face = 0;
  bc.plus_vertices = {verts[0], verts[1]};
  check_both(c4, {0.6, 0.6, 0.6, 0.6}, DefectSet::empty(4), bc);
  const auto r = reduce(c4, CouplingAssignment::uniform(4, 0.6), DefectSet::empty(4), bc);
  CHECK(r.new_map.vertex_count() == 1);
  CHECK(r.new_defects.gamma_star().empty());
  CHECK(r.scalar == doctest::Approx(0.5));
  // Z_dob(C4) = e^{2J} e^{-2J} ... = 1 + nothing free: all four spins fixed.
  CHECK(oracle::pinned_z(c4, {0.6, 0.6, 0.6, 0.6}, boundary_spins(c4, bc)) == doctest::Approx(1.0));
}

TEST_CASE("Dobrushin boundary across the family") {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (const auto& name : default_graph_family()) {
    const auto m = builtin_graph(name);
    for (FaceId f = 0; f < m.face_count(); ++f) {
      const auto cyc = m.face_vertices(f);
      const std::size_t k = cyc.size();
      for (std::size_t len = 1; len < k; ++len) {
        BoundaryCondition bc;
        bc.kind = BoundaryKind::dobrushin;
        bc.face = f;
        const std::size_t start = rng() % k;
        for (std::size_t i = 0; i < len; ++i) bc.plus_vertices.push_back(cyc[(start + i) % k]);
        const auto spins = boundary_spins(m, bc);
        const auto boundary = face_edge_set(m, f);
        std::set<VertexId> bv(cyc.begin(), cyc.end());
        // Defect edge off the face, not a chord, away from the minus arc.
        DefectSet d = DefectSet::empty(m.edge_count());
        for (EdgeId e = 0; e < m.edge_count(); ++e) {
          auto [u, v] = m.endpoints(e);
          if (boundary.count(e) || (bv.count(u) && bv.count(v)) || spins[u] < 0 || spins[v] < 0) continue;
          if (rng() & 1U)
            d = validate_defects(m, {PathSpec{{u, v}, {e}}}, {});
          else
            d = DefectSet::from_edge_sets(m.edge_count(), {}, {e});
          break;
        }
        check_both(m, oracle::random_couplings(m.edge_count(), rng), d, bc);
        ++checked;
      }
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("Dobrushin route is recorded") {
  const auto g = builtin_graph("grid_3_3");
  FaceId outer = -1;
  for (FaceId f = 0; f < g.face_count(); ++f)
    if (g.face_darts(f).size() == 8) outer = f;
  REQUIRE(outer >= 0);
  const auto cyc = g.face_vertices(outer);
  const std::vector<VertexId> plus(cyc.begin(), cyc.begin() + 4);
  const auto r = reduce_dobrushin(g, CouplingAssignment::uniform(12, 0.4), DefectSet::empty(12), outer, plus);
  std::size_t route_edges = 0;
  for (const auto& p : r.disorder_route) route_edges += p.edges.size();
  CHECK(route_edges == r.new_defects.gamma_star().size());
  CHECK_FALSE(r.new_defects.gamma_star().empty());
}

TEST_CASE("Dobrushin preconditions") {
  const auto c4 = builtin_graph("c4");
  const auto base = CouplingAssignment::uniform(4, 0.5);
  const auto empty = DefectSet::empty(4);
  const auto verts = c4.face_vertices(0);
  CHECK(kind_of([&] { reduce_dobrushin(c4, base, empty, 0, verts); }) == ErrorKind::bad_arc_split);
  CHECK(kind_of([&] { reduce_dobrushin(c4, base, empty, 0, {}); }) == ErrorKind::bad_arc_split);
  CHECK(kind_of([&] { reduce_dobrushin(c4, base, empty, 0, {verts[0], verts[2]}); }) == ErrorKind::bad_arc_split);
}

TEST_CASE("gauge flip at one vertex") {
  std::mt19937_64 rng(8);
  for (const auto& name : default_graph_family()) {
    const auto m = builtin_graph(name);
    const auto base = CouplingAssignment::from_reals(oracle::random_couplings(m.edge_count(), rng));
    for (VertexId v = 0; v < m.vertex_count(); ++v) {
      const Complex a = partition_function(m, base);
      const Complex b = partition_function(m, negate_at_vertex(m, base, v));
      CHECK(oracle::rel_err(a, b) < 1e-12);
    }
  }
}
