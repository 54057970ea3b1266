#include "bozon/consequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "bozon/boundary.hpp"
#include "bozon/error.hpp"

namespace bozon {

namespace {

Complex power_of(Complex base, int k) {
  Complex out = 1.0;
  for (int i = 0; i < (k & 3); ++i) out *= base;
  return out;
}
Complex minus_i_power(int k) { return power_of({0.0, -1.0}, k); }
double minus_one_power(int k) { return k % 2 ? -1.0 : 1.0; }

void check_endpoints(std::vector<int> expected, const std::vector<PathSpec>& paths, const char* what) {
  std::vector<int> got;
  for (const auto& p : paths) got.insert(got.end(), p.endpoints.begin(), p.endpoints.end());
  std::sort(expected.begin(), expected.end());
  std::sort(got.begin(), got.end());
  if (expected != got) throw Error(ErrorKind::endpoint_mismatch, std::string(what) + " do not pair up the insertions");
}

std::size_t union_size(const std::vector<PathSpec>& paths) {
  std::set<EdgeId> all;
  for (const auto& p : paths) all.insert(p.edges.begin(), p.edges.end());
  return all.size();
}

}  // namespace

std::vector<PathSpec> pair_paths(const CombinatorialMap& map, const std::vector<VertexId>& vertices) {
  if (vertices.size() % 2) throw Error(ErrorKind::input_error, "spin insertions come in pairs");
  std::vector<bool> blocked(map.vertex_count(), false);
  for (VertexId v : vertices) {
    if (v < 0 || v >= map.vertex_count()) throw Error(ErrorKind::input_error, "vertex out of range");
    blocked[v] = true;
  }
  std::vector<PathSpec> out;
  for (std::size_t i = 0; i < vertices.size(); i += 2) {
    const VertexId a = vertices[i], b = vertices[i + 1];
    blocked[a] = blocked[b] = false;
    auto path = find_path(map, a, b, blocked);
    if (!path) throw Error(ErrorKind::paths_intersect, "no disjoint path for a vertex pair");
    for (VertexId v : path_vertices(map, {{a, b}, *path})) blocked[v] = true;
    out.push_back({{a, b}, *path});
  }
  return out;
}

SpinCorrelation spin_correlation(const CombinatorialMap& map, const CouplingAssignment& base,
                                 const std::vector<VertexId>& vertices, const std::vector<PathSpec>& paths,
                                 const Caps& caps, double tolerance) {
  check_endpoints(vertices, paths, "order paths");
  const DefectSet d = validate_defects(map, paths, {});
  const Complex ratio =
      partition_function(map, modify_couplings(base, d), caps) / partition_function(map, base, caps);
  const Complex value = minus_i_power(static_cast<int>(d.gamma().size())) * ratio;
  SpinCorrelation out;
  out.value = value.real();
  out.imaginary_residue = std::abs(value.imag());
  out.direct = spin_expectation(map, base, vertices, {}, caps);
  out.gamma_size = static_cast<int>(d.gamma().size());
  out.report = compare("(-i)^|Gamma| Z(Jbar)/Z(J) = E[sigma...]", value, out.direct, tolerance);
  return out;
}

CorrelationReport spin_correlation_squared_dimer(const CombinatorialMap& map, const CouplingAssignment& base,
                                                 const std::vector<VertexId>& vertices,
                                                 const std::vector<PathSpec>& paths, const Caps& caps,
                                                 double tolerance) {
  check_endpoints(vertices, paths, "order paths");
  const DefectSet d = validate_defects(map, paths, {});
  const double direct = spin_expectation(map, base, vertices, {}, caps);
  const QuadDimerGraph gq = build_gq(map);
  const DimerPair z = dimer_partition_pair(gq, nu(gq, base), nu_modified(gq, base, d), caps);
  CorrelationReport r;
  r.squared_value = direct * direct;
  r.dimer_ratio = z.modified / z.base;
  r.sign = r.squared_value * r.dimer_ratio < 0.0 ? -1 : 1;
  r.gamma_size = static_cast<int>(d.gamma().size());
  r.method = z.method;
  r.report = compare("E[sigma...]^2 = Z_dimer(nu(Jbar)) / Z_dimer(nu(J))", r.squared_value, r.dimer_ratio, tolerance);
  r.pass = r.report.pass;
  return r;
}

SpinorReport spinor_correlation_squared(const CombinatorialMap& map, const CouplingAssignment& base,
                                        const SpinorSpec& spec, const Caps& caps, double tolerance) {
  std::vector<int> us, fs;
  for (auto [u, f] : spec.pairs) {
    if (f < 0 || f >= map.face_count() || u < 0 || u >= map.vertex_count())
      throw Error(ErrorKind::input_error, "spinor insertion out of range");
    const auto around = map.face_vertices(f);
    if (std::find(around.begin(), around.end(), u) == around.end())
      throw Error(ErrorKind::input_error, "vertex " + std::to_string(u) + " is not on face " + std::to_string(f));
    us.push_back(u);
    fs.push_back(f);
  }
  check_endpoints(us, spec.order_paths, "order paths");
  check_endpoints(fs, spec.disorder_paths, "disorder paths");
  const DefectSet d = validate_defects(map, spec.order_paths, spec.disorder_paths);
  SpinorReport out;
  out.correlator = partition_function(map, modify_couplings(base, d), caps) / partition_function(map, base, caps);
  const QuadDimerGraph gq = build_gq(map);
  const DimerPair z = dimer_partition_pair(gq, nu(gq, base), nu_modified(gq, base, d), caps);
  CorrelationReport& r = out.squared;
  r.squared_value = (out.correlator * out.correlator).real();
  r.gamma_size = static_cast<int>(d.gamma().size());
  r.dimer_ratio = minus_one_power(r.gamma_size) * z.modified / z.base;
  r.sign = r.squared_value * r.dimer_ratio < 0.0 ? -1 : 1;
  r.method = z.method;
  r.report = compare("<sigma mu>^2 = sign * (-1)^|Gamma| Z_dimer(nu(Jbar)) / Z_dimer(nu(J))",
                     out.correlator * out.correlator, r.sign * r.dimer_ratio, tolerance);
  r.pass = r.report.pass;
  return out;
}

std::optional<PathSpec> magnetization_path(const CombinatorialMap& map, FaceId face, VertexId u) {
  if (face < 0 || face >= map.face_count()) throw Error(ErrorKind::input_error, "face id out of range");
  const auto boundary = map.face_vertices(face);
  if (std::find(boundary.begin(), boundary.end(), u) != boundary.end()) return PathSpec{{u, u}, {}};
  std::vector<bool> blocked_edges(map.edge_count(), false);
  for (EdgeId e : map.face_edges(face)) blocked_edges[e] = true;
  std::optional<PathSpec> best;
  for (VertexId b : std::set<VertexId>(boundary.begin(), boundary.end())) {
    std::vector<bool> blocked(map.vertex_count(), false);
    for (VertexId w : boundary) blocked[w] = w != b;
    auto p = find_path(map, b, u, blocked, blocked_edges);
    if (p && (!best || p->size() < best->edges.size())) best = PathSpec{{b, u}, *p};
  }
  return best;
}

MagnetizationReport magnetization(const CombinatorialMap& map, const CouplingAssignment& base, FaceId face, VertexId u,
                                  const std::optional<PathSpec>& gamma_in, const Caps& caps, double tolerance) {
  if (u < 0 || u >= map.vertex_count()) throw Error(ErrorKind::input_error, "vertex out of range");
  BoundaryCondition plus;
  plus.face = face;
  plus.kind = BoundaryKind::plus;
  const auto spins = boundary_spins(map, plus);
  MagnetizationReport out;
  out.direct = spin_expectation(map, base, {u}, spins, caps);
  if (spins[u] != 0) {
    out.order_ratio = out.reduced_pair = out.reduced_direct = 1.0;
    out.gamma = {{u, u}, {}};
    out.report = compare("E+[sigma_u] = 1 on the boundary", out.direct, 1.0, tolerance);
    out.pass = out.report.pass;
    return out;
  }
  const auto gamma = gamma_in ? gamma_in : magnetization_path(map, face, u);
  if (!gamma) throw Error(ErrorKind::input_error, "no path from the face to the vertex avoids the boundary");
  out.gamma = *gamma;
  const auto boundary_edges = map.face_edges(face);
  for (EdgeId e : gamma->edges)
    if (std::find(boundary_edges.begin(), boundary_edges.end(), e) != boundary_edges.end())
      throw Error(ErrorKind::defect_on_boundary, "gamma uses boundary edge " + std::to_string(e));
  const DefectSet d = validate_defects(map, {*gamma}, {});
  const int len = static_cast<int>(d.gamma().size());

  const Complex ratio = spin_sum(map, modify_couplings(base, d), spins, {}, caps).weight /
                        spin_sum(map, base, spins, {}, caps).weight;
  out.order_ratio = (minus_i_power(len) * ratio).real();

  const ReductionResult r = reduce_plus(map, base, d, face);
  out.merged_vertex = r.merged_vertex;
  const VertexId u2 = r.vertex_map[u];
  const Complex reduced = partition_function(r.new_map, modify_couplings(r.new_couplings, r.new_defects), caps) /
                          partition_function(r.new_map, r.new_couplings, caps);
  out.reduced_pair = (minus_i_power(len) * reduced).real();
  out.reduced_direct = spin_expectation(r.new_map, r.new_couplings, {u2, r.merged_vertex}, {}, caps);
  out.report = compare("E+[sigma_u] on G = E[sigma_u sigma_v] on G'", out.direct, out.reduced_pair, tolerance);
  out.pass = out.report.pass && compare("", out.direct, out.order_ratio, tolerance).pass &&
             compare("", out.direct, out.reduced_direct, tolerance).pass;
  if (!r.new_map.has_bridge()) {
    out.squared = spin_correlation_squared_dimer(r.new_map, r.new_couplings, {u2, r.merged_vertex},
                                                 r.new_defects.order_paths(), caps, tolerance);
    out.pass = out.pass && out.squared->pass;
  }
  return out;
}

DefectSet dual_defects(const CombinatorialMap& map, const DualMap& dual, const DefectSet& defects) {
  const int n = dual.map.edge_count();
  if (union_size(defects.order_paths()) != defects.gamma().size() ||
      union_size(defects.disorder_paths()) != defects.gamma_star().size()) {
    std::vector<EdgeId> g, gs;
    for (EdgeId e : defects.gamma_star()) g.push_back(dual.edge_bijection[e]);
    for (EdgeId e : defects.gamma()) gs.push_back(dual.edge_bijection[e]);
    return DefectSet::from_edge_sets(n, g, gs);
  }
  std::vector<FaceId> face_of_vertex(map.vertex_count(), -1);
  for (FaceId g = 0; g < dual.map.face_count(); ++g) face_of_vertex[dual.primal_vertex_of_face[g]] = g;
  auto edges = [&](const PathSpec& p) {
    std::vector<EdgeId> out;
    for (EdgeId e : p.edges) out.push_back(dual.edge_bijection[e]);
    return out;
  };
  std::vector<PathSpec> order, disorder;
  for (const auto& p : defects.disorder_paths()) order.push_back({p.endpoints, edges(p)});
  for (const auto& p : defects.order_paths())
    disorder.push_back({{face_of_vertex[p.endpoints[0]], face_of_vertex[p.endpoints[1]]}, edges(p)});
  return DefectSet::from_paths(n, order, disorder);
}

DualityReport kw_duality_check(const CombinatorialMap& map, const CouplingAssignment& base, const DefectSet& defects,
                               const Caps& caps, double tolerance) {
  const DualMap dm = dual(map);
  const CouplingAssignment star_by_primal = dual_couplings(base);
  std::vector<Coupling> star(map.edge_count());
  for (EdgeId e = 0; e < map.edge_count(); ++e) star[dm.edge_bijection[e]] = star_by_primal[e];
  const CouplingAssignment star_base(star);
  const DefectSet dd = dual_defects(map, dm, defects);

  const CouplingAssignment modified = modify_couplings(base, defects);
  const CouplingAssignment star_modified = modify_couplings(star_base, dd);
  const Complex primal = partition_function(map, modified, caps) / partition_function(map, base, caps);
  const Complex dual_side =
      partition_function(dm.map, star_modified, caps) / partition_function(dm.map, star_base, caps);
  const int g = static_cast<int>(defects.gamma().size());
  const int gs = static_cast<int>(defects.gamma_star().size());

  DualityReport r;
  r.correlator = compare("(-i)^|Gamma| <>_(G,J) = (-i)^|Gamma*| <>_(G*,J*)", minus_i_power(g) * primal,
                         minus_i_power(gs) * dual_side, tolerance);
  r.correlator_literal = compare("(-1)^|Gamma| <>_(G,J) = (-1)^|Gamma*| <>_(G*,J*)", minus_one_power(g) * primal,
                                 minus_one_power(gs) * dual_side, tolerance);
  for (EdgeId e = 0; e < map.edge_count(); ++e) {
    const Coupling mapped = dual_coupling(modified[e]);
    const Coupling& want = star_modified[dm.edge_bijection[e]];
    const double err = (mapped.quarter_turns & 3) == (want.quarter_turns & 3)
                           ? std::abs(mapped.real - want.real)
                           : std::numeric_limits<double>::infinity();
    r.coupling_error = std::max(r.coupling_error, err);
    r.weight_error = std::max(r.weight_error, std::abs(1.0 / std::cosh(2.0 * star_by_primal[e].real) -
                                                       std::tanh(2.0 * base[e].real)));
  }
  constexpr double per_edge_tolerance = 1e-12;
  r.pass = r.correlator.pass && r.coupling_error <= per_edge_tolerance && r.weight_error <= per_edge_tolerance;
  return r;
}

nlohmann::json to_json(const SpinCorrelation& r) {
  return {{"value", r.value},       {"imaginary_residue", r.imaginary_residue}, {"direct", r.direct},
          {"gamma_size", r.gamma_size}, {"report", to_json(r.report)}};
}

nlohmann::json to_json(const CorrelationReport& r) {
  return {{"squared_value", r.squared_value}, {"dimer_ratio", r.dimer_ratio}, {"sign", r.sign},
          {"gamma_size", r.gamma_size},       {"method", method_name(r.method)}, {"report", to_json(r.report)},
          {"pass", r.pass}};
}

nlohmann::json to_json(const MagnetizationReport& r) {
  nlohmann::json j = {{"direct", r.direct},
                      {"order_ratio", r.order_ratio},
                      {"reduced_pair", r.reduced_pair},
                      {"reduced_direct", r.reduced_direct},
                      {"gamma", {{"endpoints", r.gamma.endpoints}, {"edges", r.gamma.edges}}},
                      {"merged_vertex", r.merged_vertex},
                      {"report", to_json(r.report)},
                      {"pass", r.pass}};
  j["squared"] = r.squared ? to_json(*r.squared) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const DualityReport& r) {
  return {{"correlator", to_json(r.correlator)},
          {"correlator_literal", to_json(r.correlator_literal)},
          {"coupling_error", r.coupling_error},
          {"weight_error", r.weight_error},
          {"pass", r.pass}};
}

}  // namespace bozon
