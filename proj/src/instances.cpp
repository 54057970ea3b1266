#include "bozon/instances.hpp"

#include "bozon/builtin_graphs.hpp"
#include "bozon/error.hpp"

namespace bozon {

namespace {

constexpr int max_attempts = 64;

int pick(std::mt19937_64& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

}  // namespace

std::vector<double> random_couplings(int edge_count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> draw(coupling_low, coupling_high);
  std::vector<double> out(edge_count);
  for (auto& j : out) j = draw(rng);
  return out;
}

DefectSet random_defects(const CombinatorialMap& map, std::mt19937_64& rng, int budget) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const int n_order = pick(rng, 3), n_disorder = pick(rng, 3);
    std::vector<bool> used_vertices(map.vertex_count(), false), used_faces(map.face_count(), false);
    std::vector<bool> used_edges(map.edge_count(), false);
    std::vector<PathSpec> order, disorder;
    int size = 0;
    bool ok = true;
    for (int k = 0; k < n_order && ok; ++k) {
      const VertexId a = pick(rng, map.vertex_count()), b = pick(rng, map.vertex_count());
      if (a == b || used_vertices[a] || used_vertices[b]) {
        ok = false;
        break;
      }
      auto path = find_path(map, a, b, used_vertices, used_edges);
      if (!path) {
        ok = false;
        break;
      }
      PathSpec p{{a, b}, *path};
      for (VertexId v : path_vertices(map, p)) used_vertices[v] = true;
      for (EdgeId e : p.edges) used_edges[e] = true;
      size += static_cast<int>(p.edges.size());
      order.push_back(std::move(p));
    }
    for (int k = 0; k < n_disorder && ok; ++k) {
      const FaceId f = pick(rng, map.face_count()), g = pick(rng, map.face_count());
      if (f == g || used_faces[f] || used_faces[g]) {
        ok = false;
        break;
      }
      auto path = find_dual_path(map, f, g, used_faces, used_edges);
      if (!path) {
        ok = false;
        break;
      }
      PathSpec p{{f, g}, *path};
      for (FaceId h : dual_path_faces(map, p)) used_faces[h] = true;
      for (EdgeId e : p.edges) used_edges[e] = true;
      size += static_cast<int>(p.edges.size());
      disorder.push_back(std::move(p));
    }
    if (!ok || size > budget) continue;
    try {
      return validate_defects(map, order, disorder);
    } catch (const Error&) {
    }
  }
  return DefectSet::empty(map.edge_count());
}

std::uint64_t instance_seed(std::uint64_t seed, int index) {
  // splitmix64 finalizer over the pair.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Instance random_instance(const std::vector<std::string>& family, std::uint64_t seed, int index) {
  if (family.empty()) throw Error(ErrorKind::input_error, "empty graph family");
  Instance inst;
  inst.index = index;
  inst.seed = instance_seed(seed, index);
  std::mt19937_64 rng(inst.seed);
  inst.graph_name = family[pick(rng, static_cast<int>(family.size()))];
  inst.map = builtin_graph(inst.graph_name);
  inst.couplings = random_couplings(inst.map.edge_count(), rng);
  inst.defects = random_defects(inst.map, rng);
  return inst;
}

std::vector<Instance> random_instances(int count, std::uint64_t seed, const std::vector<std::string>& family) {
  std::vector<Instance> out;
  for (int i = 0; i < count; ++i) out.push_back(random_instance(family, seed, i));
  return out;
}

}  // namespace bozon
