#include "bozon/graph_io.hpp"

#include <filesystem>
#include <fstream>

#include "bozon/builtin_graphs.hpp"
#include "bozon/error.hpp"

namespace bozon {

namespace {

using nlohmann::json;

[[noreturn]] void bad_input(const std::string& what) { throw Error(ErrorKind::input_error, what); }

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) bad_input(std::string("missing field '") + name + "'");
  return j.at(name);
}

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) bad_input(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<int> int_list(const json& j, const char* what) {
  if (!j.is_array()) bad_input(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(as_int(x, what));
  return out;
}

const char* kind_name(GqEdgeKind k) {
  switch (k) {
    case GqEdgeKind::leg:
      return "leg";
    case GqEdgeKind::primal_parallel:
      return "primal_parallel";
    case GqEdgeKind::dual_parallel:
      return "dual_parallel";
  }
  return "leg";
}

}  // namespace

CombinatorialMap graph_from_json(const json& j) {
  const json& vertices = field(j, "vertices");
  const json& edges = field(j, "edges");
  if (!vertices.is_array() || !edges.is_array()) bad_input("vertices and edges must be arrays");
  RotationSystem rs;
  rs.rotations.resize(vertices.size());
  std::vector<bool> seen_vertex(vertices.size(), false);
  for (const auto& v : vertices) {
    const int id = as_int(field(v, "id"), "vertex id");
    if (id < 0 || id >= static_cast<int>(vertices.size()) || seen_vertex[id])
      throw Error(ErrorKind::malformed_rotation, "vertex ids must be 0.." + std::to_string(vertices.size() - 1));
    seen_vertex[id] = true;
    rs.rotations[id] = int_list(field(v, "darts"), "darts");
  }
  rs.edges.resize(edges.size());
  std::vector<bool> seen_edge(edges.size(), false);
  for (const auto& e : edges) {
    const int id = as_int(field(e, "id"), "edge id");
    if (id < 0 || id >= static_cast<int>(edges.size()) || seen_edge[id])
      throw Error(ErrorKind::malformed_rotation, "edge ids must be 0.." + std::to_string(edges.size() - 1));
    seen_edge[id] = true;
    const auto darts = int_list(field(e, "darts"), "darts");
    if (darts.size() != 2) throw Error(ErrorKind::malformed_rotation, "edge " + std::to_string(id) + " needs two darts");
    rs.edges[id] = {darts[0], darts[1]};
  }
  return CombinatorialMap::build(rs);
}

json graph_to_json(const CombinatorialMap& map) {
  const RotationSystem rs = map.rotation_system();
  json vertices = json::array(), edges = json::array();
  for (std::size_t v = 0; v < rs.rotations.size(); ++v) vertices.push_back({{"id", v}, {"darts", rs.rotations[v]}});
  for (std::size_t e = 0; e < rs.edges.size(); ++e)
    edges.push_back({{"id", e}, {"darts", {rs.edges[e][0], rs.edges[e][1]}}});
  return {{"vertices", vertices}, {"edges", edges}};
}

std::vector<double> couplings_from_json(const json& j, int edge_count) {
  const json& edges = field(j, "edges");
  if (!edges.is_array()) bad_input("couplings edges must be an array");
  std::vector<double> out(edge_count, 0.0);
  std::vector<bool> seen(edge_count, false);
  for (const auto& e : edges) {
    const int id = as_int(field(e, "id"), "edge id");
    if (id < 0 || id >= edge_count || seen[id]) bad_input("coupling for unknown or repeated edge " + std::to_string(id));
    const json& value = field(e, "J");
    if (!value.is_number()) bad_input("J must be a number");
    out[id] = value.get<double>();
    seen[id] = true;
  }
  for (int e = 0; e < edge_count; ++e) {
    if (!seen[e]) throw Error(ErrorKind::length_mismatch, "no coupling for edge " + std::to_string(e));
    if (!(out[e] > 0.0)) throw Error(ErrorKind::non_positive_coupling, "J on edge " + std::to_string(e) + " is not positive");
  }
  return out;
}

json couplings_to_json(const std::vector<double>& couplings) {
  json edges = json::array();
  for (std::size_t e = 0; e < couplings.size(); ++e) edges.push_back({{"id", e}, {"J", couplings[e]}});
  return {{"edges", edges}};
}

PathSpec path_from_json(const json& j) {
  const auto ends = int_list(field(j, "endpoints"), "endpoints");
  if (ends.size() != 2) bad_input("a path has two endpoints");
  return {{ends[0], ends[1]}, int_list(field(j, "edges"), "edges")};
}

json path_to_json(const PathSpec& path) { return {{"endpoints", path.endpoints}, {"edges", path.edges}}; }

DefectSet defects_from_json(const json& j, const CombinatorialMap& map) {
  if (!j.is_object()) bad_input("defects must be an object");
  std::vector<PathSpec> order, disorder;
  if (j.contains("order_paths"))
    for (const auto& p : j.at("order_paths")) order.push_back(path_from_json(p));
  if (j.contains("disorder_paths"))
    for (const auto& p : j.at("disorder_paths")) disorder.push_back(path_from_json(p));
  return validate_defects(map, order, disorder);
}

json defects_to_json(const DefectSet& defects) {
  json order = json::array(), disorder = json::array();
  for (const auto& p : defects.order_paths()) order.push_back(path_to_json(p));
  for (const auto& p : defects.disorder_paths()) disorder.push_back(path_to_json(p));
  return {{"order_paths", order}, {"disorder_paths", disorder}};
}

json gq_to_json(const QuadDimerGraph& gq, const DimerWeights& weights) {
  json vertices = json::array(), edges = json::array();
  for (VertexId v = 0; v < gq.vertex_count(); ++v)
    vertices.push_back({{"id", v},
                        {"class", gq.vertex_class[v] == VertexClass::black ? "black" : "white"},
                        {"quadrangle", v / 4}});
  for (int g = 0; g < gq.edge_count(); ++g) {
    const GqEdge& e = gq.edges[g];
    edges.push_back({{"id", g},
                     {"black", e.black},
                     {"white", e.white},
                     {"kind", kind_name(e.kind)},
                     {"edge", e.edge},
                     {"weight", weights.values[g]}});
  }
  return {{"vertices", vertices}, {"edges", edges}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad_input("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad_input("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad_input("cannot write '" + path + "'");
  out << text;
  if (!out) bad_input("failed writing '" + path + "'");
}

CombinatorialMap load_graph(const std::string& spec) {
  if (std::filesystem::exists(spec)) return graph_from_json(read_json_file(spec));
  return builtin_graph(spec);
}

}  // namespace bozon
