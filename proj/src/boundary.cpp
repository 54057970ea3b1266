#include "bozon/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "bozon/error.hpp"

namespace bozon {

namespace {

// Edge contraction and deletion on a rotation system. Contracting a non-loop
// edge splices the two rotations at the edge, which keeps the embedding on
// the sphere; deleting a loop merges the two faces beside it.
class Surgery {
 public:
  explicit Surgery(const CombinatorialMap& m)
      : m_(m), rot_(m.vertex_count()), rep_(m.vertex_count()), alive_(m.edge_count(), true) {
    for (VertexId v = 0; v < m.vertex_count(); ++v) {
      auto r = m.rotation(v);
      rot_[v].assign(r.begin(), r.end());
    }
    std::iota(rep_.begin(), rep_.end(), 0);
  }

  int find(VertexId v) {
    while (rep_[v] != v) v = rep_[v] = rep_[rep_[v]];
    return v;
  }
  int home(DartId x) { return find(m_.origin(x)); }
  bool alive(EdgeId e) const { return alive_[e]; }
  bool is_loop(EdgeId e) { return home(m_.dart_of(e, 0)) == home(m_.dart_of(e, 1)); }

  void contract(EdgeId e) {
    const DartId x = m_.dart_of(e, 0), y = m_.dart_of(e, 1);
    const int u = home(x), w = home(y);
    std::vector<DartId> merged;
    auto append_after = [&merged](const std::vector<DartId>& cyc, DartId d) {
      const std::size_t i = std::find(cyc.begin(), cyc.end(), d) - cyc.begin();
      for (std::size_t k = 1; k < cyc.size(); ++k) merged.push_back(cyc[(i + k) % cyc.size()]);
    };
    append_after(rot_[u], x);
    append_after(rot_[w], y);
    rot_[u] = std::move(merged);
    rot_[w].clear();
    rep_[w] = u;
    alive_[e] = false;
  }

  void remove(EdgeId e) {
    for (int side = 0; side < 2; ++side) {
      const DartId x = m_.dart_of(e, side);
      auto& cyc = rot_[home(x)];
      cyc.erase(std::find(cyc.begin(), cyc.end(), x));
    }
    alive_[e] = false;
  }

  // Dense relabeling of what is left.
  void finish(ReductionResult& out) {
    std::vector<VertexId> new_vertex(m_.vertex_count(), -1);
    int nv = 0;
    for (VertexId v = 0; v < m_.vertex_count(); ++v)
      if (find(v) == v) new_vertex[v] = nv++;
    out.edge_image.assign(m_.edge_count(), -1);
    out.edge_map.clear();
    for (EdgeId e = 0; e < m_.edge_count(); ++e)
      if (alive_[e]) {
        out.edge_image[e] = static_cast<EdgeId>(out.edge_map.size());
        out.edge_map.push_back(e);
      }
    RotationSystem rs;
    rs.rotations.resize(nv);
    rs.edges.resize(out.edge_map.size());
    for (std::size_t e = 0; e < out.edge_map.size(); ++e)
      rs.edges[e] = {static_cast<DartId>(2 * e), static_cast<DartId>(2 * e + 1)};
    for (VertexId v = 0; v < m_.vertex_count(); ++v) {
      if (find(v) != v) continue;
      for (DartId x : rot_[v]) rs.rotations[new_vertex[v]].push_back(new_dart(out, x));
    }
    out.new_map = CombinatorialMap::build(rs);
    out.vertex_map.resize(m_.vertex_count());
    for (VertexId v = 0; v < m_.vertex_count(); ++v) out.vertex_map[v] = new_vertex[find(v)];
  }

  DartId new_dart(const ReductionResult& out, DartId x) const {
    const EdgeId e = m_.edge_of(x);
    return 2 * out.edge_image[e] + (m_.dart_of(e, 0) == x ? 0 : 1);
  }

 private:
  const CombinatorialMap& m_;
  std::vector<std::vector<DartId>> rot_;
  std::vector<int> rep_;
  std::vector<bool> alive_;
};

void require_defect_free(const DefectSet& defects, EdgeId e, const char* role) {
  if (defects.in_gamma(e) || defects.in_gamma_star(e))
    throw Error(ErrorKind::defect_on_boundary, std::string(role) + " edge " + std::to_string(e) + " carries a defect");
}

void check_sizes(const CombinatorialMap& map, const CouplingAssignment& base, const DefectSet& defects) {
  if (base.size() != map.edge_count() || defects.edge_count() != map.edge_count())
    throw Error(ErrorKind::length_mismatch, "couplings or defects cover a different edge count");
}

// Original defect paths expressed on the reduced map.
DefectSet carry_defects(const CombinatorialMap& map, const DefectSet& defects, const ReductionResult& r,
                        const Surgery& s, const std::vector<EdgeId>& extra_gamma_star,
                        const std::vector<PathSpec>& extra_walks) {
  auto edges_of = [&](const PathSpec& p) {
    std::vector<EdgeId> out;
    for (EdgeId e : p.edges) out.push_back(r.edge_image[e]);
    return out;
  };
  std::vector<FaceId> face_image(map.face_count(), -1);
  for (FaceId f = 0; f < map.face_count(); ++f)
    for (DartId x : map.face_darts(f))
      if (r.edge_image[map.edge_of(x)] >= 0) {
        face_image[f] = r.new_map.face_of(s.new_dart(r, x));
        break;
      }
  std::vector<PathSpec> order, disorder;
  for (const PathSpec& p : defects.order_paths())
    order.push_back({{r.vertex_map[p.endpoints[0]], r.vertex_map[p.endpoints[1]]}, edges_of(p)});
  for (const PathSpec& p : defects.disorder_paths()) {
    if (face_image[p.endpoints[0]] < 0 || face_image[p.endpoints[1]] < 0) continue;
    disorder.push_back({{face_image[p.endpoints[0]], face_image[p.endpoints[1]]}, edges_of(p)});
  }
  // Path records survive when they account for every defect edge;
  // otherwise only the edge sets are carried.
  auto union_size = [](const std::vector<PathSpec>& paths) {
    std::set<EdgeId> all;
    for (const auto& p : paths) all.insert(p.edges.begin(), p.edges.end());
    return all.size();
  };
  DefectSet carried;
  if (union_size(defects.order_paths()) == defects.gamma().size() &&
      union_size(defects.disorder_paths()) == defects.gamma_star().size() &&
      disorder.size() == defects.disorder_paths().size()) {
    carried = DefectSet::from_paths(r.new_map.edge_count(), order, disorder);
  } else {
    std::vector<EdgeId> g, gs;
    for (EdgeId e : defects.gamma()) g.push_back(r.edge_image[e]);
    for (EdgeId e : defects.gamma_star()) gs.push_back(r.edge_image[e]);
    carried = DefectSet::from_edge_sets(r.new_map.edge_count(), g, gs);
  }
  if (extra_gamma_star.empty()) return carried;
  return with_extra_disorder(carried, extra_walks, extra_gamma_star);
}

CouplingAssignment carry_couplings(const CouplingAssignment& base, const ReductionResult& r) {
  std::vector<Coupling> out;
  for (EdgeId e : r.edge_map) out.push_back(base[e]);
  return CouplingAssignment(std::move(out));
}

std::vector<DartId> face_walk(const CombinatorialMap& map, FaceId face) {
  if (face < 0 || face >= map.face_count()) throw Error(ErrorKind::input_error, "face id out of range");
  auto d = map.face_darts(face);
  return {d.begin(), d.end()};
}

// Merges the vertices reached by contracting `edges` into one +1 vertex,
// deletes the loops this creates and freezes their weights into the scalar.
ReductionResult merge_plus(const CombinatorialMap& map, const CouplingAssignment& base, const DefectSet& defects,
                           const std::vector<EdgeId>& edges) {
  check_sizes(map, base, defects);
  ReductionResult r;
  if (edges.empty()) {
    Surgery s(map);
    s.finish(r);
    r.new_couplings = base;
    r.new_defects = defects;
    r.scalar = 1.0;
    return r;
  }
  for (EdgeId e : edges) require_defect_free(defects, e, "boundary");
  Surgery s(map);
  double log_scalar = 0.0;
  for (EdgeId e : edges) {
    if (!s.alive(e) || s.is_loop(e)) continue;
    s.contract(e);
    r.removed_edges.push_back(e);
    log_scalar += base[e].real;
  }
  for (EdgeId e = 0; e < map.edge_count(); ++e) {
    if (!s.alive(e) || !s.is_loop(e)) continue;
    require_defect_free(defects, e, "chord");
    s.remove(e);
    r.removed_edges.push_back(e);
    log_scalar += base[e].real;
  }
  const VertexId merged_original = s.home(map.dart_of(edges.front(), 0));
  s.finish(r);
  r.merged_vertex = r.vertex_map[merged_original];
  r.scalar = 0.5 * std::exp(log_scalar);
  r.new_couplings = carry_couplings(base, r);
  r.new_defects = carry_defects(map, defects, r, s, {}, {});
  std::sort(r.removed_edges.begin(), r.removed_edges.end());
  return r;
}

}  // namespace

ReductionResult reduce_plus(const CombinatorialMap& map, const CouplingAssignment& base, const DefectSet& defects,
                            FaceId face) {
  std::vector<EdgeId> edges;
  for (DartId x : face_walk(map, face)) edges.push_back(map.edge_of(x));
  return merge_plus(map, base, defects, edges);
}

ReductionResult reduce_plus_free(const CombinatorialMap& map, const CouplingAssignment& base,
                                 const DefectSet& defects, const std::vector<EdgeId>& fixed_edges) {
  if (fixed_edges.empty()) return merge_plus(map, base, defects, {});
  const std::set<EdgeId> fixed(fixed_edges.begin(), fixed_edges.end());
  for (EdgeId e : fixed)
    if (e < 0 || e >= map.edge_count()) throw Error(ErrorKind::input_error, "fixed edge out of range");
  auto [f1, f2] = map.dual_endpoints(*fixed.begin());
  for (FaceId f : {f1, f2}) {
    const auto walk = face_walk(map, f);
    const int k = static_cast<int>(walk.size());
    std::vector<bool> on(k);
    std::set<EdgeId> seen;
    for (int i = 0; i < k; ++i) {
      on[i] = fixed.count(map.edge_of(walk[i])) > 0;
      if (on[i]) seen.insert(map.edge_of(walk[i]));
    }
    if (seen.size() != fixed.size()) continue;
    int starts = 0, first = -1;
    for (int i = 0; i < k; ++i)
      if (on[i] && !on[(i + k - 1) % k]) {
        ++starts;
        first = i;
      }
    if (starts > 1) continue;
    // Contract along the arc in walk order.
    std::vector<EdgeId> ordered;
    const int begin = starts == 0 ? 0 : first;
    for (int i = 0; i < k; ++i)
      if (on[(begin + i) % k]) ordered.push_back(map.edge_of(walk[(begin + i) % k]));
    return merge_plus(map, base, defects, ordered);
  }
  throw Error(ErrorKind::non_contiguous_arc, "fixed edges are not one contiguous arc of a face");
}

ReductionResult reduce_dobrushin(const CombinatorialMap& map, const CouplingAssignment& base,
                                 const DefectSet& defects, FaceId face, const std::vector<VertexId>& plus_vertices) {
  check_sizes(map, base, defects);
  const auto walk = face_walk(map, face);
  const int k = static_cast<int>(walk.size());
  std::vector<VertexId> cycle;
  for (DartId x : walk) cycle.push_back(map.origin(x));
  if (std::set<VertexId>(cycle.begin(), cycle.end()).size() != cycle.size())
    throw Error(ErrorKind::bad_arc_split, "face boundary is not a simple cycle");
  std::vector<int> sign(map.vertex_count(), 0);
  for (VertexId v : cycle) sign[v] = -1;
  for (VertexId v : plus_vertices) {
    if (v < 0 || v >= map.vertex_count() || sign[v] == 0)
      throw Error(ErrorKind::bad_arc_split, "plus vertex " + std::to_string(v) + " is not on the face");
    sign[v] = 1;
  }
  int changes = 0;
  for (int i = 0; i < k; ++i) changes += sign[cycle[i]] != sign[cycle[(i + 1) % k]];
  if (changes != 2) throw Error(ErrorKind::bad_arc_split, "split must give one nonempty plus arc and one minus arc");

  for (DartId x : walk) require_defect_free(defects, map.edge_of(x), "boundary");
  for (EdgeId e = 0; e < map.edge_count(); ++e) {
    auto [u, v] = map.endpoints(e);
    if (sign[u] < 0 || sign[v] < 0) require_defect_free(defects, e, "minus-arc");
  }

  // (i) merge each arc into one vertex; loops freeze at weight e^J.
  Surgery s(map);
  ReductionResult r;
  double log_scalar = 0.0;
  std::vector<EdgeId> transitions;
  for (int i = 0; i < k; ++i) {
    const EdgeId e = map.edge_of(walk[i]);
    const int a = sign[cycle[i]], b = sign[cycle[(i + 1) % k]];
    if (a != b) {
      transitions.push_back(e);
      continue;
    }
    if (s.is_loop(e)) continue;
    s.contract(e);
    r.removed_edges.push_back(e);
    log_scalar += base[e].real;
  }
  for (EdgeId e = 0; e < map.edge_count(); ++e) {
    if (!s.alive(e) || !s.is_loop(e)) continue;
    require_defect_free(defects, e, "chord");
    s.remove(e);
    r.removed_edges.push_back(e);
    log_scalar += base[e].real;
  }
  const VertexId v_plus = s.find(*std::find_if(cycle.begin(), cycle.end(), [&](VertexId v) { return sign[v] > 0; }));
  const VertexId v_minus =
      s.find(*std::find_if(cycle.begin(), cycle.end(), [&](VertexId v) { return sign[v] < 0; }));

  // (ii) gauge the -1 vertex to +1: every edge at it changes sign.
  std::vector<bool> negated(map.edge_count(), false);
  for (EdgeId e = 0; e < map.edge_count(); ++e)
    if (s.alive(e) && (s.home(map.dart_of(e, 0)) == v_minus || s.home(map.dart_of(e, 1)) == v_minus))
      negated[e] = true;

  // (iii) merge the two +1 vertices across the face left between the
  // transition edges; the remaining negated edges form the disorder line.
  s.contract(transitions.front());
  r.removed_edges.push_back(transitions.front());
  log_scalar -= base[transitions.front()].real;
  for (EdgeId e = 0; e < map.edge_count(); ++e) {
    if (!s.alive(e) || !s.is_loop(e)) continue;
    s.remove(e);
    r.removed_edges.push_back(e);
    log_scalar += negated[e] ? -base[e].real : base[e].real;
  }
  (void)v_plus;
  s.finish(r);
  r.merged_vertex = r.vertex_map[cycle.front()];
  r.scalar = 0.5 * std::exp(log_scalar);
  r.new_couplings = carry_couplings(base, r);

  std::vector<EdgeId> line;
  std::vector<bool> in_line(r.new_map.edge_count(), false);
  for (EdgeId e = 0; e < map.edge_count(); ++e)
    if (negated[e] && s.alive(e)) {
      line.push_back(r.edge_image[e]);
      in_line[r.edge_image[e]] = true;
    }
  // Record the line as maximal runs of consecutive darts around the merged
  // vertex; consecutive darts share the face between them.
  const auto rot = r.new_map.rotation(r.merged_vertex);
  const int n = static_cast<int>(rot.size());
  int start = -1;
  for (int i = 0; i < n; ++i)
    if (in_line[r.new_map.edge_of(rot[i])] && !in_line[r.new_map.edge_of(rot[(i + n - 1) % n])]) {
      start = i;
      break;
    }
  if (!line.empty() && start < 0) start = 0;  // every dart is on the line
  for (int i = 0; start >= 0 && i < n;) {
    const int idx = (start + i) % n;
    if (!in_line[r.new_map.edge_of(rot[idx])]) {
      ++i;
      continue;
    }
    PathSpec p;
    const DartId first = rot[idx];
    DartId last = first;
    while (i < n && in_line[r.new_map.edge_of(rot[(start + i) % n])]) {
      last = rot[(start + i) % n];
      p.edges.push_back(r.new_map.edge_of(last));
      ++i;
    }
    p.endpoints = {r.new_map.face_of(first), r.new_map.corner_face(last)};
    r.disorder_route.push_back(std::move(p));
  }
  r.new_defects = carry_defects(map, defects, r, s, line, r.disorder_route);
  std::sort(r.removed_edges.begin(), r.removed_edges.end());
  return r;
}

ReductionResult reduce(const CombinatorialMap& map, const CouplingAssignment& base, const DefectSet& defects,
                       const BoundaryCondition& c) {
  switch (c.kind) {
    case BoundaryKind::plus: return reduce_plus(map, base, defects, c.face);
    case BoundaryKind::plus_free: return reduce_plus_free(map, base, defects, c.fixed_edges);
    default: return reduce_dobrushin(map, base, defects, c.face, c.plus_vertices);
  }
}

std::vector<int> boundary_spins(const CombinatorialMap& map, const BoundaryCondition& c) {
  std::vector<int> spins(map.vertex_count(), 0);
  switch (c.kind) {
    case BoundaryKind::plus:
      for (DartId x : face_walk(map, c.face)) spins[map.origin(x)] = 1;
      break;
    case BoundaryKind::plus_free:
      for (EdgeId e : c.fixed_edges) {
        auto [u, v] = map.endpoints(e);
        spins[u] = spins[v] = 1;
      }
      break;
    case BoundaryKind::dobrushin:
      for (DartId x : face_walk(map, c.face)) spins[map.origin(x)] = -1;
      for (VertexId v : c.plus_vertices) spins[v] = 1;
      break;
  }
  return spins;
}

CouplingAssignment negate_at_vertex(const CombinatorialMap& map, const CouplingAssignment& couplings, VertexId v) {
  CouplingAssignment out = couplings;
  for (DartId x : map.rotation(v)) {
    const EdgeId e = map.edge_of(x);
    if (map.is_loop(e)) continue;
    out[e] = couplings[e].negated();
  }
  return out;
}

IdentityReport check_reduction(const CombinatorialMap& map, const CouplingAssignment& base, const DefectSet& defects,
                               const BoundaryCondition& condition, const Caps& caps, double tolerance) {
  const ReductionResult r = reduce(map, base, defects, condition);
  const Complex lhs =
      spin_sum(map, modify_couplings(base, defects), boundary_spins(map, condition), {}, caps).weight;
  const Complex rhs =
      r.scalar * partition_function(r.new_map, modify_couplings(r.new_couplings, r.new_defects), caps);
  return compare("Z_bc(G, Jbar) = scalar * Z_free(G', Jbar')", lhs, rhs, tolerance);
}

nlohmann::json to_json(const ReductionResult& r) {
  nlohmann::json route = nlohmann::json::array();
  for (const auto& p : r.disorder_route) route.push_back({{"endpoints", p.endpoints}, {"edges", p.edges}});
  return {{"vertices", r.new_map.vertex_count()},
          {"edges", r.new_map.edge_count()},
          {"faces", r.new_map.face_count()},
          {"scalar", r.scalar},
          {"merged_vertex", r.merged_vertex},
          {"vertex_map", r.vertex_map},
          {"edge_map", r.edge_map},
          {"removed_edges", r.removed_edges},
          {"gamma", r.new_defects.gamma()},
          {"gamma_star", r.new_defects.gamma_star()},
          {"disorder_route", route}};
}

}  // namespace bozon
