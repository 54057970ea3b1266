#pragma once

#include <string>
#include <vector>

#include "bozon/dimer.hpp"
#include "bozon/planar_map.hpp"
#include "json.hpp"

namespace bozon {

// Graph:     {"vertices": [{"id", "darts": [ccw rotation]}], "edges": [{"id", "darts": [d0, d1]}]}
// Couplings: {"edges": [{"id", "J"}]}
// Defects:   {"order_paths": [{"endpoints": [u, v], "edges": [...]}], "disorder_paths": [...]}
CombinatorialMap graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const CombinatorialMap& map);

std::vector<double> couplings_from_json(const nlohmann::json& j, int edge_count);
nlohmann::json couplings_to_json(const std::vector<double>& couplings);

DefectSet defects_from_json(const nlohmann::json& j, const CombinatorialMap& map);
nlohmann::json defects_to_json(const DefectSet& defects);
nlohmann::json path_to_json(const PathSpec& path);
PathSpec path_from_json(const nlohmann::json& j);

// G_Q vertices with their class and edges with kind and weight.
nlohmann::json gq_to_json(const QuadDimerGraph& gq, const DimerWeights& weights);

// File helpers; failures carry the path.
nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// A builtin graph name or a path to a graph file.
CombinatorialMap load_graph(const std::string& spec);

}  // namespace bozon
