#include <random>
#include <set>

#include "bozon/builtin_graphs.hpp"
#include "bozon/error.hpp"
#include "bozon/planar_map.hpp"
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

}  // namespace

TEST_CASE("triangle and square satisfy Euler") {
  for (const char* name : {"k3", "c4"}) {
    const auto m = builtin_graph(name);
    CHECK(m.vertex_count() - m.edge_count() + m.face_count() == 2);
    CHECK(m.face_count() == 2);
  }
  const auto k3 = builtin_graph("k3");
  CHECK(k3.vertex_count() == 3);
  CHECK(k3.edge_count() == 3);
}

TEST_CASE("builtin family is planar and bridgeless") {
  for (const auto& name : default_graph_family()) {
    const auto m = builtin_graph(name);
    CHECK(m.vertex_count() - m.edge_count() + m.face_count() == 2);
    CHECK_FALSE(m.has_bridge());
  }
  const auto g = builtin_graph("grid_3_3");
  CHECK(g.vertex_count() == 9);
  CHECK(g.edge_count() == 12);
  CHECK(g.face_count() == 5);
  const auto w = builtin_graph("wheel_4");
  CHECK(w.vertex_count() == 5);
  CHECK(w.edge_count() == 8);
  CHECK(w.face_count() == 5);
}

TEST_CASE("unknown builtin name") {
  CHECK(kind_of([] { builtin_graph("petersen"); }) == ErrorKind::unknown_graph);
}

TEST_CASE("two disjoint edges are disconnected") {
  RotationSystem rs{{{0}, {1}, {2}, {3}}, {{0, 1}, {2, 3}}};
  CHECK(kind_of([&] { CombinatorialMap::build(rs); }) == ErrorKind::disconnected);
}

TEST_CASE("toroidal theta rotation violates Euler") {
  // Three parallel edges with the same cyclic order at both ends: one face.
  RotationSystem rs{{{0, 2, 4}, {1, 3, 5}}, {{0, 1}, {2, 3}, {4, 5}}};
  CHECK(kind_of([&] { CombinatorialMap::build(rs); }) == ErrorKind::euler_violation);
  RotationSystem planar{{{0, 2, 4}, {5, 3, 1}}, {{0, 1}, {2, 3}, {4, 5}}};
  const auto m = CombinatorialMap::build(planar);
  CHECK(m.face_count() == 3);
}

TEST_CASE("malformed rotations") {
  SUBCASE("dart listed twice") {
    RotationSystem rs{{{0, 0}, {1}}, {{0, 1}}};
    CHECK(kind_of([&] { CombinatorialMap::build(rs); }) == ErrorKind::malformed_rotation);
  }
  SUBCASE("dart missing") {
    RotationSystem rs{{{0}, {}}, {{0, 1}}};
    CHECK(kind_of([&] { CombinatorialMap::build(rs); }) == ErrorKind::malformed_rotation);
  }
  SUBCASE("self-loop rejected by default") {
    RotationSystem rs{{{0, 1, 2}, {3}}, {{0, 1}, {2, 3}}};
    CHECK(kind_of([&] { CombinatorialMap::build(rs); }) == ErrorKind::malformed_rotation);
    CHECK_NOTHROW(CombinatorialMap::build(rs, LoopPolicy::allow));
  }
}

TEST_CASE("permutation laws") {
  const auto m = builtin_graph("grid_2_3");
  for (DartId d = 0; d < m.dart_count(); ++d) {
    CHECK(m.alpha(m.alpha(d)) == d);
    CHECK(m.alpha(d) != d);
    CHECK(m.sigma_inv(m.sigma(d)) == d);
    CHECK(m.origin(m.sigma(d)) == m.origin(d));
    CHECK(m.face_of(m.phi(d)) == m.face_of(d));
    CHECK(m.edge_of(m.alpha(d)) == m.edge_of(d));
  }
  std::size_t total = 0;
  for (FaceId f = 0; f < m.face_count(); ++f) total += m.face_darts(f).size();
  CHECK(total == std::size_t(m.dart_count()));
}

TEST_CASE("bridge detection") {
  // Path on three vertices: both edges are bridges, a single face.
  const auto p = map_from_drawing({{0, 0}, {1, 0}, {2, 0}}, {{0, 1}, {1, 2}});
  CHECK(p.face_count() == 1);
  CHECK(p.has_bridge());
  CHECK(p.is_bridge(0));
}

TEST_CASE("dual counts and involution") {
  std::mt19937_64 rng(7);
  for (const auto& name : default_graph_family()) {
    const auto m = builtin_graph(name);
    const DualMap d = dual(m);
    CHECK(d.map.vertex_count() == m.face_count());
    CHECK(d.map.edge_count() == m.edge_count());
    CHECK(d.map.face_count() == m.vertex_count());
    // Dual edge e* joins the two faces beside e.
    for (EdgeId e = 0; e < m.edge_count(); ++e) {
      auto [f, g] = m.dual_endpoints(e);
      auto [x, y] = d.map.endpoints(d.edge_bijection[e]);
      CHECK(std::set<int>{f, g} == std::set<int>{x, y});
    }
    // Dual faces surround their primal vertex: every dart in the face is the
    // reverse of a dart leaving that vertex.
    for (FaceId g = 0; g < d.map.face_count(); ++g) {
      const VertexId v = d.primal_vertex_of_face[g];
      std::set<EdgeId> around, face;
      for (DartId x : m.rotation(v)) around.insert(m.edge_of(x));
      for (DartId x : d.map.face_darts(g)) face.insert(d.map.edge_of(x));
      CHECK(around == face);
    }
    // Double dual is the primal up to d -> alpha(d).
    const DualMap dd = dual(d.map);
    CHECK(dd.map.vertex_count() == m.vertex_count());
    std::vector<int> vimg(m.vertex_count(), -1);
    bool iso = true;
    for (DartId x = 0; x < m.dart_count(); ++x) {
      const DartId y = m.alpha(x);
      iso = iso && dd.map.sigma(y) == m.alpha(m.sigma(x));
      int& slot = vimg[m.origin(x)];
      if (slot < 0) slot = dd.map.origin(y);
      iso = iso && slot == dd.map.origin(y);
    }
    CHECK(iso);
  }
}

TEST_CASE("relabelling keeps face structure") {
  std::mt19937_64 rng(11);
  for (const auto& name : default_graph_family()) {
    const auto m = builtin_graph(name);
    const auto r = oracle::relabel(m, rng);
    CHECK(r.face_count() == m.face_count());
    std::multiset<std::size_t> a, b;
    for (FaceId f = 0; f < m.face_count(); ++f) a.insert(m.face_darts(f).size());
    for (FaceId f = 0; f < r.face_count(); ++f) b.insert(r.face_darts(f).size());
    CHECK(a == b);
  }
}

TEST_CASE("quad graph has one edge per dart") {
  for (const auto& name : default_graph_family()) {
    const auto m = builtin_graph(name);
    const QuadGraph q = quad_graph(m);
    CHECK(q.edge_count() == 2 * m.edge_count());
    CHECK(q.vertex_count() == m.vertex_count() + m.face_count());
    std::vector<int> deg(m.vertex_count(), 0);
    for (const auto& e : q.edges) {
      ++deg[e.vertex];
      CHECK(m.origin(e.corner) == e.vertex);
      CHECK(m.corner_face(e.corner) == e.face);
    }
    for (VertexId v = 0; v < m.vertex_count(); ++v) CHECK(deg[v] == int(m.rotation(v).size()));
  }
}

TEST_CASE("defect validation") {
  const auto k3 = builtin_graph("k3");
  SUBCASE("single order edge") {
    auto [u, v] = k3.endpoints(0);
    const DefectSet d = validate_defects(k3, {PathSpec{{u, v}, {0}}}, {});
    CHECK(d.gamma() == std::vector<EdgeId>{0});
    CHECK(d.gamma_star().empty());
    CHECK(d.order_vertices().size() == 2);
  }
  SUBCASE("disorder across one edge") {
    auto [f, g] = k3.dual_endpoints(1);
    const DefectSet d = validate_defects(k3, {}, {PathSpec{{f, g}, {1}}});
    CHECK(d.gamma_star() == std::vector<EdgeId>{1});
  }
  SUBCASE("shared edge") {
    auto [u, v] = k3.endpoints(0);
    auto [f, g] = k3.dual_endpoints(0);
    CHECK(kind_of([&] { validate_defects(k3, {PathSpec{{u, v}, {0}}}, {PathSpec{{f, g}, {0}}}); }) ==
          ErrorKind::paths_intersect);
  }
  SUBCASE("wrong endpoints") {
    auto [u, v] = k3.endpoints(0);
    CHECK(kind_of([&] { validate_defects(k3, {PathSpec{{u, u}, {0}}}, {}); }) == ErrorKind::endpoint_mismatch);
    (void)v;
  }
  SUBCASE("closed walk is not loop-free") {
    auto [u, v] = k3.endpoints(0);
    (void)v;
    CHECK(kind_of([&] { validate_defects(k3, {PathSpec{{u, u}, {0, 1, 2}}}, {}); }) == ErrorKind::path_has_loop);
  }
  SUBCASE("disorder walk on the square revisits a face") {
    const auto c4 = builtin_graph("c4");
    auto [f, g] = c4.dual_endpoints(0);
    CHECK(kind_of([&] { validate_defects(c4, {}, {PathSpec{{f, f}, {0, 1}}}); }) == ErrorKind::path_has_loop);
    (void)g;
  }
  SUBCASE("two-edge disorder path on the 3x3 grid") {
    // Diagonal squares of the 3x3 grid are two dual steps apart.
    const auto g = builtin_graph("grid_3_3");
    auto edges_of_two = [&]() -> std::optional<PathSpec> {
      for (FaceId a = 0; a < g.face_count(); ++a)
        for (FaceId b = 0; b < g.face_count(); ++b) {
          auto p = find_dual_path(g, a, b);
          if (p && p->size() == 2) return PathSpec{{a, b}, *p};
        }
      return std::nullopt;
    }();
    REQUIRE(edges_of_two);
    const DefectSet d = validate_defects(g, {}, {*edges_of_two});
    CHECK(d.gamma_star().size() == 2);
    CHECK(d.disorder_faces().size() == 2);
  }
  SUBCASE("order paths must be vertex disjoint") {
    const auto g = builtin_graph("grid_2_3");
    // Two single-edge paths sharing vertex 1.
    std::vector<PathSpec> paths;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      auto [u, v] = g.endpoints(e);
      if (u == 1 || v == 1) paths.push_back({{u, v}, {e}});
      if (paths.size() == 2) break;
    }
    CHECK(kind_of([&] { validate_defects(g, paths, {}); }) == ErrorKind::paths_intersect);
  }
  SUBCASE("overlap in raw edge sets") {
    CHECK(kind_of([] { DefectSet::from_edge_sets(3, {0}, {0}); }) == ErrorKind::overlap);
  }
}
