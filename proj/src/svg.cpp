#include "bozon/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

#include "bozon/planar_map.hpp"

namespace bozon {

namespace {

constexpr int relax_sweeps = 2000;
constexpr double panel = 320.0;
constexpr double scale = 120.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Maps layout coordinates into a panel with offset ox; y points down in SVG.
struct Canvas {
  std::string body;
  double ox = 0.0;

  double sx(Point p) const { return ox + panel / 2 + scale * p.x; }
  double sy(Point p) const { return panel / 2 - scale * p.y; }

  void line(Point a, Point b, const char* stroke, double width, const char* extra = "") {
    body += "<line x1=\"" + num(sx(a)) + "\" y1=\"" + num(sy(a)) + "\" x2=\"" + num(sx(b)) + "\" y2=\"" +
            num(sy(b)) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"" + extra + "/>\n";
  }
  void dot(Point p, const char* fill, double r, const char* stroke = "none") {
    body += "<circle cx=\"" + num(sx(p)) + "\" cy=\"" + num(sy(p)) + "\" r=\"" + num(r) + "\" fill=\"" + fill +
            "\" stroke=\"" + stroke + "\"/>\n";
  }
  void label(double x, double y, const std::string& text) {
    body += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"14\" font-family=\"sans-serif\">" + text +
            "</text>\n";
  }
};

std::string document(const std::string& body, int panels) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(panel * panels) + "\" height=\"" + num(panel) +
         "\" viewBox=\"0 0 " + num(panel * panels) + " " + num(panel) + "\">\n<rect width=\"100%\" height=\"100%\" " +
         "fill=\"white\"/>\n" + body + "</svg>\n";
}

Point lerp(Point a, Point b, double t) { return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; }

// Dual edge e* drawn through the midpoint of e, which keeps it inside the
// drawing even when the outer face point is far away.
void dual_edge(Canvas& c, const CombinatorialMap& map, const Layout& l, EdgeId e, const char* stroke, double width) {
  auto [u, v] = map.endpoints(e);
  auto [f, g] = map.dual_endpoints(e);
  const Point mid = lerp(l.vertices[u], l.vertices[v], 0.5);
  c.line(l.faces[f], mid, stroke, width);
  c.line(mid, l.faces[g], stroke, width);
}

void draw_primal(Canvas& c, const CombinatorialMap& map, const Layout& l) {
  for (EdgeId e = 0; e < map.edge_count(); ++e) {
    auto [u, v] = map.endpoints(e);
    c.line(l.vertices[u], l.vertices[v], "black", 1.5);
  }
  for (const Point& p : l.vertices) c.dot(p, "black", 4.0);
}

}  // namespace

Layout tutte_layout(const CombinatorialMap& map) {
  Layout l;
  l.vertices.assign(map.vertex_count(), {});
  l.faces.assign(map.face_count(), {});
  for (FaceId f = 1; f < map.face_count(); ++f)
    if (map.face_darts(f).size() > map.face_darts(l.outer_face).size()) l.outer_face = f;
  std::vector<VertexId> rim;
  std::set<VertexId> seen;
  for (VertexId v : map.face_vertices(l.outer_face))
    if (seen.insert(v).second) rim.push_back(v);
  std::vector<bool> pinned(map.vertex_count(), false);
  for (std::size_t i = 0; i < rim.size(); ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(rim.size());
    l.vertices[rim[i]] = {std::cos(t), std::sin(t)};
    pinned[rim[i]] = true;
  }
  for (int sweep = 0; sweep < relax_sweeps; ++sweep) {
    for (VertexId v = 0; v < map.vertex_count(); ++v) {
      if (pinned[v]) continue;
      Point sum;
      const auto darts = map.rotation(v);
      for (DartId d : darts) {
        sum.x += l.vertices[map.target(d)].x;
        sum.y += l.vertices[map.target(d)].y;
      }
      l.vertices[v] = {sum.x / static_cast<double>(darts.size()), sum.y / static_cast<double>(darts.size())};
    }
  }
  for (FaceId f = 0; f < map.face_count(); ++f) {
    const auto corners = map.face_vertices(f);
    Point sum;
    for (VertexId v : corners) {
      sum.x += l.vertices[v].x;
      sum.y += l.vertices[v].y;
    }
    l.faces[f] = {sum.x / static_cast<double>(corners.size()), sum.y / static_cast<double>(corners.size())};
  }
  l.faces[l.outer_face] = {1.25, 1.1};
  return l;
}

std::vector<Point> gq_layout(const CombinatorialMap& map, const Layout& l) {
  std::vector<Point> out(4 * static_cast<std::size_t>(map.edge_count()));
  for (EdgeId e = 0; e < map.edge_count(); ++e) {
    auto [u, v] = map.endpoints(e);
    const Point pu = l.vertices[u], pv = l.vertices[v];
    const double dx = pv.x - pu.x, dy = pv.y - pu.y;
    const double len = std::max(std::hypot(dx, dy), 1e-9);
    const double off = 0.08;
    const Point left{-dy / len * off, dx / len * off};
    auto shifted = [](Point p, Point o, double s) { return Point{p.x + s * o.x, p.y + s * o.y}; };
    const Point near_u = lerp(pu, pv, 0.3), near_v = lerp(pu, pv, 0.7);
    out[4 * e + 0] = shifted(near_u, left, 1.0);
    out[4 * e + 1] = shifted(near_v, left, 1.0);
    out[4 * e + 2] = shifted(near_v, left, -1.0);
    out[4 * e + 3] = shifted(near_u, left, -1.0);
  }
  return out;
}

std::string svg_overview(const CombinatorialMap& map) {
  const Layout l = tutte_layout(map);
  Canvas c;
  c.label(10, 20, "G");
  draw_primal(c, map, l);

  c.ox = panel;
  c.label(c.ox + 10, 20, "G*");
  for (EdgeId e = 0; e < map.edge_count(); ++e) {
    auto [u, v] = map.endpoints(e);
    c.line(l.vertices[u], l.vertices[v], "#cccccc", 1.0);
    dual_edge(c, map, l, e, "#1f5fbf", 1.5);
  }
  for (const Point& p : l.faces) c.dot(p, "#1f5fbf", 4.0);

  c.ox = 2 * panel;
  c.label(c.ox + 10, 20, "quad-graph");
  for (const auto& edge : quad_graph(map).edges) c.line(l.vertices[edge.vertex], l.faces[edge.face], "#7a7a7a", 1.0);
  for (const Point& p : l.vertices) c.dot(p, "black", 4.0);
  for (const Point& p : l.faces) c.dot(p, "white", 4.0, "black");

  c.ox = 3 * panel;
  c.label(c.ox + 10, 20, "G_Q");
  const auto gq = build_gq(map);
  const auto pos = gq_layout(map, l);
  for (const auto& e : gq.edges)
    c.line(pos[e.black], pos[e.white], e.kind == GqEdgeKind::leg ? "#999999" : "black", 1.0);
  for (VertexId v = 0; v < gq.vertex_count(); ++v)
    c.dot(pos[v], gq.vertex_class[v] == VertexClass::black ? "black" : "white", 3.0, "black");
  return document(c.body, 4);
}

std::string svg_polygon_pair(const CombinatorialMap& map, const PolygonPair& pair) {
  const Layout l = tutte_layout(map);
  Canvas c;
  draw_primal(c, map, l);
  for (EdgeId e = 0; e < map.edge_count(); ++e) {
    if (pair.primal.contains(e)) {
      auto [u, v] = map.endpoints(e);
      c.line(l.vertices[u], l.vertices[v], "#c0392b", 4.0, " class=\"primal-polygon\"");
    }
    if (pair.dual.contains(e)) dual_edge(c, map, l, e, "#1f5fbf", 3.0);
  }
  return document(c.body, 1);
}

std::string svg_matching(const CombinatorialMap& map, const QuadDimerGraph& gq, const std::vector<int>& matching) {
  const Layout l = tutte_layout(map);
  const auto pos = gq_layout(map, l);
  Canvas c;
  std::vector<bool> matched(gq.edge_count(), false);
  for (int g : matching) matched[g] = true;
  for (int g = 0; g < gq.edge_count(); ++g) {
    const auto& e = gq.edges[g];
    if (matched[g])
      c.line(pos[e.black], pos[e.white], "#c0392b", 3.5, " class=\"dimer\"");
    else
      c.line(pos[e.black], pos[e.white], "#bbbbbb", 1.0);
  }
  for (VertexId v = 0; v < gq.vertex_count(); ++v)
    c.dot(pos[v], gq.vertex_class[v] == VertexClass::black ? "black" : "white", 3.0, "black");
  return document(c.body, 1);
}

}  // namespace bozon
