#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bozon/boundary.hpp"
#include "bozon/caps.hpp"
#include "bozon/instances.hpp"
#include "json.hpp"

namespace bozon {

enum class OutputFormat { json, csv };

struct RunConfig {
  std::string command;
  std::string graph;  // builtin name or graph file
  std::string couplings;
  std::string defects;
  std::vector<std::string> suites;
  int random = 0;
  std::uint64_t seed = 0;
  Caps caps;
  double tolerance = default_tolerance;
  OutputFormat format = OutputFormat::json;
  std::string out;
  std::string svg;
  std::optional<BoundaryCondition> boundary;
  int threads = 1;
};

// Known suite names in run order; "all" expands to every one of them.
const std::vector<std::string>& suite_names();

// "V=..,E=..,D=.." for spin vertices, cycle rank and G_Q vertices.
Caps parse_caps(const std::string& text);

// One per-instance record: provenance, one entry per suite and the verdict.
// Error kinds other than identity violations mark the record with "error".
nlohmann::json verify_instance(const Instance& instance, const RunConfig& config);

// Rows of every identity report nested in a record, re/im split.
std::string records_to_csv(const nlohmann::json& records);

// Worker count from BOZON_THREADS, at least one.
int threads_from_env();

// Exit code 0 when every check passes, 1 on an identity violation and 2 on
// bad input.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bozon
