#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bozon/planar_map.hpp"

namespace bozon {

// One randomized test case. Couplings are i.i.d. Uniform(0.1, 2.0) per edge
// and defects are disjoint shortest paths drawn by rejection sampling.
struct Instance {
  int index = 0;
  std::string graph_name;
  CombinatorialMap map;
  std::vector<double> couplings;
  DefectSet defects;
  std::uint64_t seed = 0;
};

inline constexpr double coupling_low = 0.1;
inline constexpr double coupling_high = 2.0;
inline constexpr int default_defect_budget = 4;

std::vector<double> random_couplings(int edge_count, std::mt19937_64& rng);

// Up to two order and two disorder paths with |Gamma| + |Gamma*| <= budget.
// Falls back to no defects when every draw is rejected.
DefectSet random_defects(const CombinatorialMap& map, std::mt19937_64& rng, int budget = default_defect_budget);

// Seed of instance `index` in a run seeded with `seed`.
std::uint64_t instance_seed(std::uint64_t seed, int index);

Instance random_instance(const std::vector<std::string>& family, std::uint64_t seed, int index);
std::vector<Instance> random_instances(int count, std::uint64_t seed, const std::vector<std::string>& family);

}  // namespace bozon
