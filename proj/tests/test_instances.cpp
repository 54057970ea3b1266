#include <cmath>
#include <set>

#include "bozon/builtin_graphs.hpp"
#include "bozon/instances.hpp"
#include "bozon/svg.hpp"
#include "doctest.h"

using namespace bozon;

TEST_CASE("random instances respect the defect budget") {
  const auto all = random_instances(200, 17, default_graph_family());
  std::set<std::string> graphs;
  int with_order = 0, with_disorder = 0;
  for (const auto& in : all) {
    graphs.insert(in.graph_name);
    CHECK(in.defects.gamma().size() + in.defects.gamma_star().size() <= 4);
    for (double j : in.couplings) {
      CHECK(j >= coupling_low);
      CHECK(j < coupling_high);
    }
    // Order and disorder edge sets are disjoint by construction.
    for (EdgeId e : in.defects.gamma()) CHECK_FALSE(in.defects.in_gamma_star(e));
    with_order += !in.defects.gamma().empty();
    with_disorder += !in.defects.gamma_star().empty();
  }
  CHECK(graphs.size() == default_graph_family().size());
  CHECK(with_order > 40);
  CHECK(with_disorder > 40);
}

TEST_CASE("instances depend only on seed and index") {
  const auto a = random_instance(default_graph_family(), 5, 3);
  const auto b = random_instances(4, 5, default_graph_family())[3];
  CHECK(a.graph_name == b.graph_name);
  CHECK(a.couplings == b.couplings);
  CHECK(a.defects.gamma() == b.defects.gamma());
  CHECK(instance_seed(5, 3) != instance_seed(5, 4));
  CHECK(instance_seed(5, 3) != instance_seed(6, 3));
}

TEST_CASE("barycentric layout of the grid") {
  const auto g = builtin_graph("grid_3_3");
  const Layout l = tutte_layout(g);
  CHECK(g.face_darts(l.outer_face).size() == 8);
  // The centre vertex is the only free one and lands on the origin.
  VertexId centre = -1;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.rotation(v).size() == 4) centre = v;
  REQUIRE(centre >= 0);
  CHECK(std::abs(l.vertices[centre].x) < 1e-9);
  CHECK(std::abs(l.vertices[centre].y) < 1e-9);
  for (const Point& p : l.vertices) CHECK(std::hypot(p.x, p.y) <= 1.0 + 1e-12);
  CHECK(gq_layout(g, l).size() == 4 * 12);
}
