#include "bozon/dimer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "bozon/error.hpp"
#include "bozon/polygon.hpp"

namespace bozon {

namespace {

constexpr int vertex_a = 0, vertex_b = 1, vertex_c = 2, vertex_d = 3;

}  // namespace

QuadDimerGraph build_gq(const CombinatorialMap& map) {
  if (map.has_bridge()) throw Error(ErrorKind::bridge_unsupported, "G_Q needs a bridge-free map");
  const int ne = map.edge_count();
  QuadDimerGraph gq;
  gq.vertex_class.resize(4 * ne);
  gq.class_index.resize(4 * ne);
  gq.leg_at.resize(4 * ne);
  gq.edges.resize(6 * ne);
  gq.quadrangles.resize(ne);

  auto ccw_vertex = [&](DartId x) {
    const EdgeId e = map.edge_of(x);
    return 4 * e + (x == map.dart_of(e, 0) ? vertex_a : vertex_c);
  };
  auto cw_vertex = [&](DartId x) {
    const EdgeId e = map.edge_of(x);
    return 4 * e + (x == map.dart_of(e, 0) ? vertex_d : vertex_b);
  };
  auto leg_id = [&](DartId x) { return 4 * ne + x; };

  for (EdgeId e = 0; e < ne; ++e) {
    const int a = 4 * e + vertex_a, b = 4 * e + vertex_b, c = 4 * e + vertex_c, d = 4 * e + vertex_d;
    gq.vertex_class[a] = gq.vertex_class[c] = VertexClass::black;
    gq.vertex_class[b] = gq.vertex_class[d] = VertexClass::white;
    gq.class_index[a] = gq.class_index[b] = 2 * e;
    gq.class_index[c] = gq.class_index[d] = 2 * e + 1;
    gq.edges[4 * e + 0] = {a, b, GqEdgeKind::primal_parallel, e, -1};
    gq.edges[4 * e + 1] = {c, b, GqEdgeKind::dual_parallel, e, -1};
    gq.edges[4 * e + 2] = {c, d, GqEdgeKind::primal_parallel, e, -1};
    gq.edges[4 * e + 3] = {a, d, GqEdgeKind::dual_parallel, e, -1};
    const DartId d0 = map.dart_of(e, 0), d1 = map.dart_of(e, 1);
    Quadrangle& q = gq.quadrangles[e];
    q.edge = e;
    q.vertices = {a, b, c, d};
    q.primal_parallel = {4 * e + 0, 4 * e + 2};
    q.dual_parallel = {4 * e + 1, 4 * e + 3};
    q.legs = {leg_id(d0), leg_id(map.sigma_inv(d1)), leg_id(d1), leg_id(map.sigma_inv(d0))};
  }
  for (DartId x = 0; x < map.dart_count(); ++x) {
    const int g = leg_id(x);
    gq.edges[g] = {ccw_vertex(x), cw_vertex(map.sigma(x)), GqEdgeKind::leg, map.edge_of(x), x};
    gq.leg_at[gq.edges[g].black] = g;
    gq.leg_at[gq.edges[g].white] = g;
  }

  // Counterclockwise order at each vertex: the quadrangle interior sits
  // between its two sides, the leg points into the corner.
  RotationSystem rs;
  rs.rotations.resize(4 * ne);
  rs.edges.resize(6 * ne);
  for (int g = 0; g < 6 * ne; ++g) rs.edges[g] = {2 * g, 2 * g + 1};
  auto from_black = [](int g) { return 2 * g; };
  auto from_white = [](int g) { return 2 * g + 1; };
  for (EdgeId e = 0; e < ne; ++e) {
    const DartId d0 = map.dart_of(e, 0), d1 = map.dart_of(e, 1);
    rs.rotations[4 * e + vertex_a] = {from_black(4 * e + 3), from_black(4 * e + 0), from_black(leg_id(d0))};
    rs.rotations[4 * e + vertex_c] = {from_black(4 * e + 1), from_black(4 * e + 2), from_black(leg_id(d1))};
    rs.rotations[4 * e + vertex_d] = {from_white(leg_id(map.sigma_inv(d0))), from_white(4 * e + 2),
                                      from_white(4 * e + 3)};
    rs.rotations[4 * e + vertex_b] = {from_white(leg_id(map.sigma_inv(d1))), from_white(4 * e + 0),
                                      from_white(4 * e + 1)};
  }
  gq.embedding = CombinatorialMap::build(rs);
  return gq;
}

QuadDimerGraph build_gq(const CombinatorialMap& map, const DualMap& dual) {
  if (dual.map.edge_count() != map.edge_count())
    throw Error(ErrorKind::length_mismatch, "dual does not belong to this map");
  return build_gq(map);
}

DimerWeights dimer_weights(const QuadDimerGraph& gq, const CouplingAssignment& couplings) {
  if (couplings.size() != static_cast<int>(gq.quadrangles.size()))
    throw Error(ErrorKind::length_mismatch, "coupling count differs from edge count");
  DimerWeights w;
  w.values.resize(gq.edges.size());
  for (std::size_t g = 0; g < gq.edges.size(); ++g) {
    const GqEdge& edge = gq.edges[g];
    const Coupling twice = couplings[edge.edge].doubled();
    switch (edge.kind) {
      case GqEdgeKind::leg: w.values[g] = 1.0; break;
      case GqEdgeKind::primal_parallel: w.values[g] = twice.tanh_value(); break;
      case GqEdgeKind::dual_parallel: w.values[g] = (1.0 / twice.cosh_value()).real(); break;
    }
  }
  return w;
}

DimerWeights nu(const QuadDimerGraph& gq, const CouplingAssignment& base) {
  if (base.size() != static_cast<int>(gq.quadrangles.size()))
    throw Error(ErrorKind::length_mismatch, "coupling count differs from edge count");
  DimerWeights w;
  w.values.resize(gq.edges.size());
  for (std::size_t g = 0; g < gq.edges.size(); ++g) {
    const GqEdge& edge = gq.edges[g];
    const double j2 = 2.0 * base[edge.edge].real;
    switch (edge.kind) {
      case GqEdgeKind::leg: w.values[g] = 1.0; break;
      case GqEdgeKind::primal_parallel: w.values[g] = std::tanh(j2); break;
      case GqEdgeKind::dual_parallel: w.values[g] = 1.0 / std::cosh(j2); break;
    }
  }
  return w;
}

DimerWeights nu_modified(const QuadDimerGraph& gq, const CouplingAssignment& base, const DefectSet& defects) {
  if (defects.edge_count() != static_cast<int>(gq.quadrangles.size()))
    throw Error(ErrorKind::length_mismatch, "defects cover a different edge count");
  DimerWeights w = nu(gq, base);
  for (std::size_t g = 0; g < gq.edges.size(); ++g) {
    const GqEdge& edge = gq.edges[g];
    if (edge.kind == GqEdgeKind::primal_parallel && defects.in_gamma_star(edge.edge)) w.values[g] = -w.values[g];
    if (edge.kind == GqEdgeKind::dual_parallel && defects.in_gamma(edge.edge)) w.values[g] = -w.values[g];
  }
  return w;
}

namespace {

void check_dimer_cap(const QuadDimerGraph& gq, const Caps& caps) {
  if (gq.vertex_count() > caps.dimer_vertices)
    throw Error(ErrorKind::too_large, "G_Q has " + std::to_string(gq.vertex_count()) + " vertices, cap is " +
                                          std::to_string(caps.dimer_vertices));
}

std::vector<std::vector<int>> incident_edges(const QuadDimerGraph& gq) {
  std::vector<std::vector<int>> inc(gq.vertex_count());
  for (int g = 0; g < gq.edge_count(); ++g) {
    inc[gq.edges[g].black].push_back(g);
    inc[gq.edges[g].white].push_back(g);
  }
  return inc;
}

// Depth-first matching search that always branches on the unmatched vertex
// with the fewest usable edges, so dead ends are cut as soon as they appear.
class MatchingSearch {
 public:
  MatchingSearch(const QuadDimerGraph& gq, const std::vector<bool>& usable)
      : gq_(gq), usable_(usable), inc_(incident_edges(gq)), matched_(gq.vertex_count(), false) {}

  template <class Visit>
  void run(Visit&& visit) {
    std::vector<int> chosen;
    recurse(chosen, visit);
  }

 private:
  int other(int g, int v) const { return gq_.edges[g].black == v ? gq_.edges[g].white : gq_.edges[g].black; }

  template <class Visit>
  void recurse(std::vector<int>& chosen, Visit& visit) {
    int best = -1, best_options = 1 << 30;
    for (int v = 0; v < gq_.vertex_count(); ++v) {
      if (matched_[v]) continue;
      int options = 0;
      for (int g : inc_[v])
        if (usable_[g] && !matched_[other(g, v)]) ++options;
      if (options < best_options) {
        best = v;
        best_options = options;
        if (options == 0) return;
      }
    }
    if (best < 0) {
      visit(chosen);
      return;
    }
    matched_[best] = true;
    for (int g : inc_[best]) {
      const int w = other(g, best);
      if (!usable_[g] || matched_[w]) continue;
      matched_[w] = true;
      chosen.push_back(g);
      recurse(chosen, visit);
      chosen.pop_back();
      matched_[w] = false;
    }
    matched_[best] = false;
  }

  const QuadDimerGraph& gq_;
  const std::vector<bool>& usable_;
  std::vector<std::vector<int>> inc_;
  std::vector<bool> matched_;
};

}  // namespace

void for_each_matching(const QuadDimerGraph& gq, const std::function<void(const std::vector<int>&)>& visit,
                       const Caps& caps) {
  check_dimer_cap(gq, caps);
  const std::vector<bool> usable(gq.edges.size(), true);
  MatchingSearch(gq, usable).run([&](const std::vector<int>& m) {
    std::vector<int> sorted = m;
    std::sort(sorted.begin(), sorted.end());
    visit(sorted);
  });
}

double brute_force_dimer_Z(const QuadDimerGraph& gq, const DimerWeights& weights, const Caps& caps) {
  check_dimer_cap(gq, caps);
  if (weights.values.size() != gq.edges.size()) throw Error(ErrorKind::length_mismatch, "weight count mismatch");
  std::vector<bool> usable(gq.edges.size());
  for (std::size_t g = 0; g < gq.edges.size(); ++g) usable[g] = weights.values[g] != 0.0;
  long double total = 0.0L;
  MatchingSearch(gq, usable).run([&](const std::vector<int>& m) {
    long double w = 1.0L;
    for (int g : m) w *= weights.values[g];
    total += w;
  });
  return static_cast<double>(total);
}

namespace {

// Darts of a face traversed along phi run clockwise around it when the face
// is bounded; a dart agrees with the orientation when it leaves the tail.
int agreeing_darts(const QuadDimerGraph& gq, const KasteleynOrientation& o, FaceId f) {
  int count = 0;
  for (DartId x : gq.embedding.face_darts(f)) {
    const int g = gq.embedding.edge_of(x);
    const bool from_black = (x % 2) == 0;
    if ((o.sign[g] > 0) == from_black) ++count;
  }
  return count;
}

}  // namespace

bool is_admissible(const QuadDimerGraph& gq, const KasteleynOrientation& orientation) {
  if (orientation.sign.size() != gq.edges.size()) return false;
  for (FaceId f = 0; f < gq.embedding.face_count(); ++f)
    if (f != orientation.outer_face && agreeing_darts(gq, orientation, f) % 2 == 0) return false;
  return true;
}

KasteleynOrientation kasteleyn_orientation(const QuadDimerGraph& gq) {
  const CombinatorialMap& m = gq.embedding;
  KasteleynOrientation o;
  o.sign.assign(gq.edges.size(), 1);
  o.outer_face = 0;

  // Breadth-first tree of faces; every face except the root owns the edge
  // to its parent and fixes its own parity with it, leaves first.
  std::vector<int> parent_edge(m.face_count(), -1);
  std::vector<bool> seen(m.face_count(), false);
  std::vector<FaceId> order;
  std::deque<FaceId> queue{o.outer_face};
  seen[o.outer_face] = true;
  while (!queue.empty()) {
    const FaceId f = queue.front();
    queue.pop_front();
    order.push_back(f);
    for (DartId x : m.face_darts(f)) {
      const FaceId g = m.face_of(m.alpha(x));
      if (seen[g]) continue;
      seen[g] = true;
      parent_edge[g] = m.edge_of(x);
      queue.push_back(g);
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const FaceId f = *it;
    if (f == o.outer_face) continue;
    if (agreeing_darts(gq, o, f) % 2 == 0) o.sign[parent_edge[f]] = -o.sign[parent_edge[f]];
  }
  if (!is_admissible(gq, o)) throw Error(ErrorKind::orientation_failure, "face parity check failed");
  return o;
}

Matrix kasteleyn_matrix(const QuadDimerGraph& gq, const DimerWeights& weights,
                        const KasteleynOrientation& orientation) {
  if (weights.values.size() != gq.edges.size()) throw Error(ErrorKind::length_mismatch, "weight count mismatch");
  Matrix k(gq.black_count());
  for (std::size_t g = 0; g < gq.edges.size(); ++g) {
    const GqEdge& e = gq.edges[g];
    k(gq.class_index[e.black], gq.class_index[e.white]) += orientation.sign[g] * weights.values[g];
  }
  return k;
}

Determinant dimer_Z_det(const QuadDimerGraph& gq, const DimerWeights& weights,
                        const KasteleynOrientation& orientation) {
  return lu_determinant(kasteleyn_matrix(gq, weights, orientation));
}

double dimer_det_ratio(const QuadDimerGraph& gq, const DimerWeights& numerator, const DimerWeights& denominator,
                       const KasteleynOrientation& orientation) {
  const Determinant den = dimer_Z_det(gq, denominator, orientation);
  if (den.singular || den.value == 0.0) throw Error(ErrorKind::singular_matrix, "denominator determinant vanishes");
  return dimer_Z_det(gq, numerator, orientation).value / den.value;
}

DimerPair dimer_partition_pair(const QuadDimerGraph& gq, const DimerWeights& base, const DimerWeights& modified,
                               const Caps& caps) {
  DimerPair out;
  if (gq.vertex_count() <= caps.dimer_vertices) {
    out.base = brute_force_dimer_Z(gq, base, caps);
    out.modified = brute_force_dimer_Z(gq, modified, caps);
    out.method = DimerMethod::brute;
    return out;
  }
  const KasteleynOrientation o = kasteleyn_orientation(gq);
  const Determinant b = dimer_Z_det(gq, base, o);
  if (b.singular || b.value == 0.0) throw Error(ErrorKind::singular_matrix, "base determinant vanishes");
  const double s = b.value > 0.0 ? 1.0 : -1.0;
  out.base = s * b.value;
  out.modified = s * dimer_Z_det(gq, modified, o).value;
  out.method = DimerMethod::determinant;
  out.condition = b.condition;
  return out;
}

std::array<LegMask, 2> leg_configurations(const CombinatorialMap& map, const PolygonPair& pair) {
  if (map.edge_count() > max_mask_edges) throw Error(ErrorKind::too_large, "edge masks hold at most 64 edges");
  if (!pair.non_intersecting()) throw Error(ErrorKind::inconsistent_pair, "polygons share an edge");
  const EdgeMask primal = pair.primal.edges, dual_edges = pair.dual.edges;
  if (map.edge_count() < max_mask_edges && ((primal | dual_edges) >> map.edge_count()) != 0)
    throw Error(ErrorKind::inconsistent_pair, "edge id out of range");

  // Two-colour vertices across the dual polygon and faces across the primal.
  auto colour = [](int count, auto neighbours, const char* what) {
    std::vector<int> c(count, -1);
    c[0] = 0;
    std::deque<int> queue{0};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      neighbours(v, [&](int w, int flip) {
        if (c[w] < 0) {
          c[w] = c[v] ^ flip;
          queue.push_back(w);
        } else if (c[w] != (c[v] ^ flip)) {
          throw Error(ErrorKind::inconsistent_pair, what);
        }
      });
    }
    return c;
  };
  const auto x = colour(
      map.vertex_count(),
      [&](int v, auto&& f) {
        for (DartId d : map.rotation(v)) f(map.target(d), mask_contains(dual_edges, map.edge_of(d)) ? 1 : 0);
      },
      "dual polygon is not even");
  const auto y = colour(
      map.face_count(),
      [&](int face, auto&& f) {
        for (DartId d : map.face_darts(face))
          f(map.face_of(map.alpha(d)), mask_contains(primal, map.edge_of(d)) ? 1 : 0);
      },
      "primal polygon is not even");

  std::array<LegMask, 2> out{LegMask(map.dart_count()), LegMask(map.dart_count())};
  for (DartId d = 0; d < map.dart_count(); ++d) {
    const bool matched = (x[map.origin(d)] ^ y[map.corner_face(d)]) != 0;
    out[0][d] = matched;
    out[1][d] = !matched;
  }
  return out;
}

int free_quadrangles(const QuadDimerGraph& gq, const LegMask& legs) {
  const int ne = static_cast<int>(gq.quadrangles.size());
  int count = 0;
  for (const Quadrangle& q : gq.quadrangles) {
    bool any = false;
    for (int g : q.legs) any = any || legs[g - 4 * ne];
    if (!any) ++count;
  }
  return count;
}

std::int64_t polygon_to_dimer_count(const QuadDimerGraph& gq, const CombinatorialMap& map, const PolygonPair& pair) {
  const auto configs = leg_configurations(map, pair);
  return (std::int64_t{1} << free_quadrangles(gq, configs[0])) + (std::int64_t{1} << free_quadrangles(gq, configs[1]));
}

PolygonPair matching_to_pair(const QuadDimerGraph& gq, const std::vector<int>& matching) {
  std::vector<int> sides(gq.quadrangles.size(), 0);
  std::vector<int> last(gq.quadrangles.size(), -1);
  for (int g : matching) {
    if (gq.edges[g].kind == GqEdgeKind::leg) continue;
    ++sides[gq.edges[g].edge];
    last[gq.edges[g].edge] = g;
  }
  PolygonPair pair;
  for (std::size_t e = 0; e < sides.size(); ++e) {
    if (sides[e] != 1) continue;
    if (gq.edges[last[e]].kind == GqEdgeKind::primal_parallel)
      pair.primal.edges |= mask_bit(static_cast<EdgeId>(e));
    else
      pair.dual.edges |= mask_bit(static_cast<EdgeId>(e));
  }
  return pair;
}

IdentityReport check_bipartite_dimer_identity(const CombinatorialMap& map, const DualMap& dual,
                                              const CouplingAssignment& base, const DefectSet& defects,
                                              const Caps& caps, double tolerance) {
  const QuadDimerGraph gq = build_gq(map, dual);
  const CouplingAssignment modified = modify_couplings(base, defects);
  const PairPolygonSum pairs = pair_polygon_sum(map, dual, modified, caps);
  const DimerPair z = dimer_partition_pair(gq, nu(gq, base), nu_modified(gq, base, defects), caps);
  return compare("pair-polygon sum = Z_dimer(nu(Jbar)) / 2", pairs.pair_sum, 0.5 * z.modified, tolerance);
}

IdentityReport verify_bipartite_dimer_identity(const CombinatorialMap& map, const DualMap& dual,
                                               const CouplingAssignment& base, const DefectSet& defects,
                                               const Caps& caps, double tolerance) {
  IdentityReport r = check_bipartite_dimer_identity(map, dual, base, defects, caps, tolerance);
  require(r);
  return r;
}

TheoremReport check_theorem_main(const CombinatorialMap& map, const DualMap& dual, const CouplingAssignment& base,
                                 const DefectSet& defects, const Caps& caps, double tolerance) {
  const QuadDimerGraph gq = build_gq(map, dual);
  const Complex z = partition_function(map, base, caps);
  const Complex zbar = partition_function(map, modify_couplings(base, defects), caps);
  const DimerPair zd = dimer_partition_pair(gq, nu(gq, base), nu_modified(gq, base, defects), caps);
  const double parity = defects.gamma().size() % 2 ? -1.0 : 1.0;

  double prefactor = std::pow(2.0, map.vertex_count());
  for (EdgeId e = 0; e < map.edge_count(); ++e) prefactor *= std::cosh(2.0 * base[e].real);

  TheoremReport r;
  r.method = zd.method;
  const Complex lhs = (zbar / z) * (zbar / z);
  r.squared_ratio = lhs.real();
  r.dimer_ratio = parity * zd.modified / zd.base;
  r.sign = r.squared_ratio * r.dimer_ratio < 0.0 ? -1 : 1;
  r.ratio = compare("[Z(Jbar)/Z(J)]^2 = sign * (-1)^|Gamma| Z_dimer(nu(Jbar)) / Z_dimer(nu(J))", lhs,
                    r.sign * r.dimer_ratio, tolerance);
  r.unsquared = compare("[Z(J)]^2 = 2^|V| prod cosh(2J) Z_dimer(nu(J))", z * z, prefactor * zd.base, tolerance);
  r.unsquared_defect = compare("[Z(Jbar)]^2 = (-1)^|Gamma| 2^|V| prod cosh(2J) Z_dimer(nu(Jbar))", zbar * zbar,
                               parity * prefactor * zd.modified, tolerance);
  r.pass = r.ratio.pass && r.unsquared.pass && r.unsquared_defect.pass;
  return r;
}

TheoremReport verify_theorem_main(const CombinatorialMap& map, const DualMap& dual, const CouplingAssignment& base,
                                  const DefectSet& defects, const Caps& caps, double tolerance) {
  TheoremReport r = check_theorem_main(map, dual, base, defects, caps, tolerance);
  require(r.ratio);
  require(r.unsquared);
  require(r.unsquared_defect);
  return r;
}

const char* method_name(DimerMethod method) { return method == DimerMethod::brute ? "brute" : "determinant"; }

nlohmann::json to_json(const TheoremReport& r) {
  return {{"ratio", to_json(r.ratio)},
          {"unsquared", to_json(r.unsquared)},
          {"unsquared_defect", to_json(r.unsquared_defect)},
          {"sign", r.sign},
          {"squared_ratio", r.squared_ratio},
          {"dimer_ratio", r.dimer_ratio},
          {"method", method_name(r.method)},
          {"pass", r.pass}};
}

}  // namespace bozon
