#include "bozon/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "bozon/builtin_graphs.hpp"
#include "bozon/consequences.hpp"
#include "bozon/dimer.hpp"
#include "bozon/error.hpp"
#include "bozon/graph_io.hpp"
#include "bozon/polygon.hpp"
#include "bozon/svg.hpp"

namespace bozon {

namespace {

using nlohmann::json;

constexpr double imaginary_tolerance = 1e-12;
constexpr std::uint64_t magnetization_salt = 0x6d61676e6574ULL;

[[noreturn]] void bad_input(const std::string& what) { throw Error(ErrorKind::input_error, what); }

std::vector<int> int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      bad_input("'" + item + "' is not an integer");
    }
  }
  return out;
}

FaceId largest_face(const CombinatorialMap& map) {
  FaceId best = 0;
  for (FaceId f = 1; f < map.face_count(); ++f)
    if (map.face_darts(f).size() > map.face_darts(best).size()) best = f;
  return best;
}

// Result of one suite: its JSON body and whether it passed.
struct SuiteResult {
  json body;
  bool pass = false;
};

SuiteResult suite_theorem(const Instance& in, const CouplingAssignment& base, const RunConfig& cfg) {
  const auto r = check_theorem_main(in.map, dual(in.map), base, in.defects, cfg.caps, cfg.tolerance);
  return {to_json(r), r.pass};
}

SuiteResult suite_pair_polygon(const Instance& in, const CouplingAssignment& base, const RunConfig& cfg) {
  const auto r = check_squared_partition(in.map, dual(in.map), base, in.defects, cfg.caps, cfg.tolerance);
  return {to_json(r), r.pass};
}

SuiteResult suite_bipartite_dimer(const Instance& in, const CouplingAssignment& base, const RunConfig& cfg) {
  const auto r = check_bipartite_dimer_identity(in.map, dual(in.map), base, in.defects, cfg.caps, cfg.tolerance);
  return {to_json(r), r.pass};
}

SuiteResult suite_corollary(const Instance& in, const CouplingAssignment& base, const RunConfig& cfg) {
  const auto& paths = in.defects.order_paths();
  std::vector<VertexId> vertices;
  for (const auto& p : paths) vertices.insert(vertices.end(), p.endpoints.begin(), p.endpoints.end());
  const auto sc = spin_correlation(in.map, base, vertices, paths, cfg.caps, cfg.tolerance);
  const auto sq = spin_correlation_squared_dimer(in.map, base, vertices, paths, cfg.caps, cfg.tolerance);
  json body = {{"vertices", vertices}, {"correlation", to_json(sc)}, {"squared", to_json(sq)}};
  return {body, sc.report.pass && sc.imaginary_residue <= imaginary_tolerance && sq.pass};
}

SuiteResult suite_magnetization(const Instance& in, const CouplingAssignment& base, const RunConfig& cfg) {
  const FaceId face = largest_face(in.map);
  const auto rim = in.map.face_vertices(face);
  std::vector<VertexId> interior;
  for (VertexId v = 0; v < in.map.vertex_count(); ++v)
    if (std::find(rim.begin(), rim.end(), v) == rim.end()) interior.push_back(v);
  VertexId u = rim.front();
  if (!interior.empty()) {
    std::mt19937_64 rng(in.seed ^ magnetization_salt);
    u = interior[std::uniform_int_distribution<std::size_t>(0, interior.size() - 1)(rng)];
  }
  const auto r = magnetization(in.map, base, face, u, std::nullopt, cfg.caps, cfg.tolerance);
  json body = to_json(r);
  body["face"] = face;
  body["vertex"] = u;
  return {body, r.pass};
}

SuiteResult suite_duality(const Instance& in, const CouplingAssignment& base, const RunConfig& cfg) {
  const auto r = kw_duality_check(in.map, base, in.defects, cfg.caps, cfg.tolerance);
  return {to_json(r), r.pass};
}

const char* boundary_name(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::plus:
      return "plus";
    case BoundaryKind::plus_free:
      return "plus-free";
    case BoundaryKind::dobrushin:
      return "dobrushin";
  }
  return "plus";
}

std::vector<BoundaryCondition> default_conditions(const CombinatorialMap& map) {
  const FaceId face = largest_face(map);
  const auto edges = map.face_edges(face);
  const auto verts = map.face_vertices(face);
  BoundaryCondition plus{face, BoundaryKind::plus, {}, {}};
  BoundaryCondition free{face, BoundaryKind::plus_free, {}, {}};
  free.fixed_edges.assign(edges.begin(), edges.begin() + static_cast<long>((edges.size() + 1) / 2));
  BoundaryCondition dob{face, BoundaryKind::dobrushin, {}, {}};
  dob.plus_vertices.assign(verts.begin(), verts.begin() + static_cast<long>((verts.size() + 1) / 2));
  return {plus, free, dob};
}

SuiteResult suite_boundary(const Instance& in, const CouplingAssignment& base, const RunConfig& cfg) {
  const bool explicit_condition = cfg.boundary.has_value();
  const auto conditions = explicit_condition ? std::vector<BoundaryCondition>{*cfg.boundary} : default_conditions(in.map);
  json list = json::array();
  bool pass = true;
  for (const auto& bc : conditions) {
    // Defects the reduction cannot carry are dropped and the record says so.
    DefectSet d = in.defects;
    bool kept = true;
    IdentityReport r;
    try {
      r = check_reduction(in.map, base, d, bc, cfg.caps, cfg.tolerance);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::defect_on_boundary) throw;
      d = DefectSet::empty(in.map.edge_count());
      kept = false;
      r = check_reduction(in.map, base, d, bc, cfg.caps, cfg.tolerance);
    }
    json item = {{"kind", boundary_name(bc.kind)}, {"face", bc.face}, {"defects_kept", kept}, {"report", to_json(r)}};
    if (bc.kind == BoundaryKind::plus_free) item["fixed_edges"] = bc.fixed_edges;
    if (bc.kind == BoundaryKind::dobrushin) item["plus_vertices"] = bc.plus_vertices;
    if (explicit_condition) item["trace"] = to_json(reduce(in.map, base, d, bc));
    pass = pass && r.pass;
    list.push_back(item);
  }
  return {list, pass};
}

using SuiteFn = SuiteResult (*)(const Instance&, const CouplingAssignment&, const RunConfig&);

SuiteFn suite_function(const std::string& name) {
  if (name == "theorem1") return suite_theorem;
  if (name == "pairpolygon") return suite_pair_polygon;
  if (name == "bipartitedimer") return suite_bipartite_dimer;
  if (name == "corollary") return suite_corollary;
  if (name == "magnetization") return suite_magnetization;
  if (name == "duality") return suite_duality;
  if (name == "boundary") return suite_boundary;
  bad_input("unknown suite '" + name + "'");
}

std::vector<std::string> expand_suites(const std::vector<std::string>& requested) {
  if (requested.empty()) return {"theorem1"};
  std::vector<std::string> out;
  for (const auto& s : requested) {
    if (s == "all") return suite_names();
    suite_function(s);
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void collect_rows(const json& j, const std::string& where, const json& record, std::string& out) {
  if (j.is_object() && j.contains("identity") && j.contains("lhs")) {
    out += std::to_string(record.value("index", 0)) + "," + csv_field(record.value("graph", "")) + "," +
           csv_field(where) + "," + csv_field(j["identity"].get<std::string>()) + "," + j["lhs"]["re"].dump() + "," +
           j["lhs"]["im"].dump() + "," + j["rhs"]["re"].dump() + "," + j["rhs"]["im"].dump() + "," +
           j["abs_err"].dump() + "," + j["rel_err"].dump() + "," + (j["pass"].get<bool>() ? "true" : "false") + "\n";
    return;
  }
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) collect_rows(v, where.empty() ? k : where + "/" + k, record, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) collect_rows(j[i], where + "/" + std::to_string(i), record, out);
  }
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty())
    out << text;
  else
    write_text_file(cfg.out, text);
}

std::string render(const json& doc) { return doc.dump(2) + "\n"; }

std::vector<double> couplings_for(const RunConfig& cfg, const CombinatorialMap& map, std::mt19937_64& rng) {
  if (!cfg.couplings.empty()) return couplings_from_json(read_json_file(cfg.couplings), map.edge_count());
  return random_couplings(map.edge_count(), rng);
}

DefectSet defects_for(const RunConfig& cfg, const CombinatorialMap& map) {
  if (!cfg.defects.empty()) return defects_from_json(read_json_file(cfg.defects), map);
  return DefectSet::empty(map.edge_count());
}

json provenance(const RunConfig& cfg, const CombinatorialMap& map, const std::vector<double>& couplings,
                const DefectSet& defects) {
  json j = {{"graph", cfg.graph},
            {"seed", cfg.seed},
            {"couplings", couplings_to_json(couplings)},
            {"defects", defects_to_json(defects)}};
  if (std::filesystem::exists(cfg.graph)) j["rotation_system"] = graph_to_json(map);
  return j;
}

std::vector<Instance> make_instances(const RunConfig& cfg) {
  if (cfg.graph.empty()) {
    if (cfg.random <= 0) bad_input("verify needs --graph or --random N");
    return random_instances(cfg.random, cfg.seed, default_graph_family());
  }
  const CombinatorialMap map = load_graph(cfg.graph);
  std::vector<Instance> out;
  const int count = std::max(1, cfg.random);
  for (int i = 0; i < count; ++i) {
    Instance in;
    in.index = i;
    in.graph_name = cfg.graph;
    in.map = map;
    in.seed = instance_seed(cfg.seed, i);
    std::mt19937_64 rng(in.seed);
    in.couplings = couplings_for(cfg, map, rng);
    in.defects = cfg.defects.empty() ? random_defects(map, rng) : defects_for(cfg, map);
    out.push_back(std::move(in));
  }
  return out;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  RunConfig run = cfg;
  run.suites = expand_suites(cfg.suites);
  const auto instances = make_instances(run);
  std::vector<json> records(instances.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < instances.size();) records[i] = verify_instance(instances[i], run);
  };
  const int workers = std::max(1, std::min<int>(run.threads, static_cast<int>(instances.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  int passed = 0, failed = 0, errors = 0;
  for (const auto& r : records) {
    if (r.contains("error"))
      ++errors;
    else if (r["pass"].get<bool>())
      ++passed;
    else
      ++failed;
  }
  const json all = records;
  if (run.format == OutputFormat::csv) {
    emit(run, out, records_to_csv(all));
  } else {
    json doc = {{"command", "verify"},
                {"seed", run.seed},
                {"suites", run.suites},
                {"records", all},
                {"summary", {{"instances", records.size()}, {"passed", passed}, {"failed", failed}, {"errors", errors}}}};
    emit(run, out, render(doc));
  }
  if (errors) return 2;
  return failed ? 1 : 0;
}

PolygonConfig polygon_from(const std::string& text, GraphSide side, const CombinatorialMap& carrier, int edge_count) {
  const auto edges = int_list(text);
  for (int e : edges)
    if (e < 0 || e >= edge_count) bad_input("polygon edge " + std::to_string(e) + " out of range");
  PolygonConfig p{side, edges_mask(edges)};
  if (!is_even_subgraph(carrier, p.edges)) bad_input("polygon edges do not form an even subgraph");
  return p;
}

struct ExportOptions {
  std::optional<std::string> primal;
  std::optional<std::string> dual;
  bool matching = false;
};

int cmd_export(const RunConfig& cfg, const ExportOptions& opt, std::ostream& out) {
  const CombinatorialMap map = load_graph(cfg.graph);
  std::mt19937_64 rng(instance_seed(cfg.seed, 0));
  const auto couplings = couplings_for(cfg, map, rng);
  const DefectSet defects = defects_for(cfg, map);
  const auto base = CouplingAssignment::from_reals(couplings);
  const QuadDimerGraph gq = build_gq(map);
  const DimerWeights weights = defects.is_empty() ? nu(gq, base) : nu_modified(gq, base, defects);
  json doc = provenance(cfg, map, couplings, defects);
  doc["vertex_count"] = gq.vertex_count();
  doc["edge_count"] = gq.edge_count();
  doc["gq"] = gq_to_json(gq, weights);
  const Determinant det = dimer_Z_det(gq, weights, kasteleyn_orientation(gq));
  doc["determinant"] = {{"value", det.value},
                        {"dimension", det.dimension},
                        {"condition", std::isfinite(det.condition) ? json(det.condition) : json("inf")},
                        {"singular", det.singular}};
  std::vector<int> first;
  if (opt.matching) {
    bool found = false;
    for_each_matching(
        gq,
        [&](const std::vector<int>& m) {
          if (!found) first = m;
          found = true;
        },
        cfg.caps);
    doc["matching"] = first;
  }
  std::optional<PolygonPair> pair;
  if (opt.primal || opt.dual) {
    const DualMap dm = dual(map);
    PolygonPair p;
    p.primal = polygon_from(opt.primal.value_or(""), GraphSide::primal, map, map.edge_count());
    p.dual = polygon_from(opt.dual.value_or(""), GraphSide::dual, dm.map, map.edge_count());
    if (!p.non_intersecting()) bad_input("the polygon pair intersects");
    doc["pair"] = {{"primal", mask_edges(p.primal.edges)}, {"dual", mask_edges(p.dual.edges)}};
    pair = p;
  }
  if (!cfg.svg.empty()) {
    std::string svg;
    if (pair)
      svg = svg_polygon_pair(map, *pair);
    else if (opt.matching)
      svg = svg_matching(map, gq, first);
    else
      svg = svg_overview(map);
    write_text_file(cfg.svg, svg);
  }
  emit(cfg, out, render(doc));
  return 0;
}

int cmd_builtin(const RunConfig& cfg, const std::string& name, std::ostream& out) {
  emit(cfg, out, render(graph_to_json(builtin_graph(name))));
  return 0;
}

struct Loaded {
  CombinatorialMap map;
  std::vector<double> couplings;
  CouplingAssignment base;
};

Loaded load_model(const RunConfig& cfg) {
  if (cfg.graph.empty()) bad_input("--graph is required");
  Loaded m{load_graph(cfg.graph), {}, {}};
  std::mt19937_64 rng(instance_seed(cfg.seed, 0));
  m.couplings = couplings_for(cfg, m.map, rng);
  m.base = CouplingAssignment::from_reals(m.couplings);
  return m;
}

int finish(const RunConfig& cfg, std::ostream& out, json doc, bool pass) {
  doc["pass"] = pass;
  emit(cfg, out, render(doc));
  return pass ? 0 : 1;
}

int cmd_correlate(const RunConfig& cfg, const std::string& vertices_text, std::ostream& out) {
  const Loaded m = load_model(cfg);
  const auto vertices = int_list(vertices_text);
  const auto paths = cfg.defects.empty() ? pair_paths(m.map, vertices) : defects_for(cfg, m.map).order_paths();
  const auto sc = spin_correlation(m.map, m.base, vertices, paths, cfg.caps, cfg.tolerance);
  json doc = provenance(cfg, m.map, m.couplings, DefectSet::from_paths(m.map.edge_count(), paths, {}));
  doc["vertices"] = vertices;
  doc["correlation"] = to_json(sc);
  bool pass = sc.report.pass && sc.imaginary_residue <= imaginary_tolerance;
  if (!m.map.has_bridge()) {
    const auto sq = spin_correlation_squared_dimer(m.map, m.base, vertices, paths, cfg.caps, cfg.tolerance);
    doc["squared"] = to_json(sq);
    pass = pass && sq.pass;
  }
  return finish(cfg, out, doc, pass);
}

int cmd_spinor(const RunConfig& cfg, const std::string& pairs_text, std::ostream& out) {
  const Loaded m = load_model(cfg);
  const DefectSet d = defects_for(cfg, m.map);
  SpinorSpec spec;
  std::stringstream in(pairs_text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) bad_input("spinor pairs are written vertex:face");
    const auto u = int_list(item.substr(0, colon)), f = int_list(item.substr(colon + 1));
    if (u.size() != 1 || f.size() != 1) bad_input("bad spinor pair '" + item + "'");
    spec.pairs.push_back({u[0], f[0]});
  }
  spec.order_paths = d.order_paths();
  spec.disorder_paths = d.disorder_paths();
  const auto r = spinor_correlation_squared(m.map, m.base, spec, cfg.caps, cfg.tolerance);
  json doc = provenance(cfg, m.map, m.couplings, d);
  doc["correlator"] = complex_json(r.correlator);
  doc["squared"] = to_json(r.squared);
  return finish(cfg, out, doc, r.squared.pass);
}

int cmd_magnetize(const RunConfig& cfg, int face, int vertex, std::ostream& out) {
  const Loaded m = load_model(cfg);
  const FaceId f = face >= 0 ? face : largest_face(m.map);
  if (vertex < 0) bad_input("--vertex is required");
  const auto r = magnetization(m.map, m.base, f, vertex, std::nullopt, cfg.caps, cfg.tolerance);
  json doc = provenance(cfg, m.map, m.couplings, DefectSet::empty(m.map.edge_count()));
  doc["face"] = f;
  doc["vertex"] = vertex;
  doc["magnetization"] = to_json(r);
  return finish(cfg, out, doc, r.pass);
}

int cmd_duality(const RunConfig& cfg, std::ostream& out) {
  const Loaded m = load_model(cfg);
  const DefectSet d = defects_for(cfg, m.map);
  const auto r = kw_duality_check(m.map, m.base, d, cfg.caps, cfg.tolerance);
  json doc = provenance(cfg, m.map, m.couplings, d);
  doc["duality"] = to_json(r);
  return finish(cfg, out, doc, r.pass);
}

std::optional<BoundaryCondition> boundary_from(const std::string& kind, int face, const std::string& arc) {
  if (kind.empty()) return std::nullopt;
  BoundaryCondition bc;
  bc.face = std::max(face, 0);
  if (kind == "plus") {
    bc.kind = BoundaryKind::plus;
  } else if (kind == "plus-free") {
    bc.kind = BoundaryKind::plus_free;
    bc.fixed_edges = int_list(arc);
  } else if (kind == "dobrushin") {
    bc.kind = BoundaryKind::dobrushin;
    bc.plus_vertices = int_list(arc);
  } else {
    bad_input("unknown boundary '" + kind + "'");
  }
  return bc;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"theorem1",      "pairpolygon", "bipartitedimer", "corollary",
                                              "magnetization", "duality",     "boundary"};
  return names;
}

Caps parse_caps(const std::string& text) {
  Caps caps;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) bad_input("caps are written KEY=VALUE");
    const std::string key = item.substr(0, eq);
    const auto value = int_list(item.substr(eq + 1));
    if (value.size() != 1 || value[0] <= 0) bad_input("cap '" + key + "' must be a positive integer");
    if (key == "V")
      caps.spin_vertices = value[0];
    else if (key == "E")
      caps.cycle_rank = value[0];
    else if (key == "D")
      caps.dimer_vertices = value[0];
    else
      bad_input("unknown cap '" + key + "'");
  }
  return caps;
}

json verify_instance(const Instance& in, const RunConfig& cfg) {
  json record = {{"index", in.index},
                 {"graph", in.graph_name},
                 {"seed", in.seed},
                 {"couplings", couplings_to_json(in.couplings)},
                 {"defects", defects_to_json(in.defects)}};
  if (std::filesystem::exists(in.graph_name)) record["rotation_system"] = graph_to_json(in.map);
  const auto base = CouplingAssignment::from_reals(in.couplings);
  json checks = json::object();
  bool pass = true;
  for (const auto& name : cfg.suites) {
    try {
      SuiteResult r = suite_function(name)(in, base, cfg);
      checks[name] = {{"result", r.body}, {"pass", r.pass}};
      pass = pass && r.pass;
    } catch (const Error& e) {
      checks[name] = {{"error", std::string(error_kind_name(e.kind()))}, {"message", e.what()}, {"pass", false}};
      pass = false;
      if (e.kind() != ErrorKind::identity_violation) record["error"] = std::string(error_kind_name(e.kind()));
    } catch (const std::exception& e) {
      checks[name] = {{"error", "internal"}, {"message", e.what()}, {"pass", false}};
      pass = false;
      record["error"] = "internal";
    }
  }
  record["checks"] = checks;
  record["pass"] = pass;
  return record;
}

std::string records_to_csv(const json& records) {
  std::string out = "instance,graph,check,identity,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,pass\n";
  for (const auto& r : records) collect_rows(r.value("checks", json::object()), "", r, out);
  return out;
}

int threads_from_env() {
  const char* env = std::getenv("BOZON_THREADS");
  if (env) {
    const int n = std::atoi(env);
    return n > 0 ? n : 1;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks of squared Ising correlations against dimers on planar maps", "bozon"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string caps_text, format_text = "json", boundary_kind, arc_text, vertices_text, pairs_text, builtin_name;
  int face = -1, vertex = -1;
  ExportOptions export_opt;
  std::string primal_text, dual_text;

  auto common = [&](CLI::App* s) {
    s->add_option("--graph", cfg.graph, "builtin graph name or rotation-system JSON file");
    s->add_option("--couplings", cfg.couplings, "couplings JSON file (random J from the seed if absent)");
    s->add_option("--defects", cfg.defects, "defect paths JSON file");
    s->add_option("--seed", cfg.seed, "seed for every random draw");
    s->add_option("--caps", caps_text, "enumeration caps, e.g. V=24,E=24,D=36");
    s->add_option("--tol", cfg.tolerance, "relative tolerance")->check(CLI::PositiveNumber);
    s->add_option("--out", cfg.out, "write the report here instead of stdout");
    s->add_option("--format", format_text, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* verify = app.add_subcommand("verify", "run identity suites on explicit or random instances");
  common(verify);
  verify->add_option("--suite", cfg.suites, "theorem1|pairpolygon|bipartitedimer|corollary|magnetization|duality|"
                                            "boundary|all");
  verify->add_option("--random", cfg.random, "number of instances")->check(CLI::NonNegativeNumber);
  verify->add_option("--boundary", boundary_kind, "plus|plus-free|dobrushin")
      ->check(CLI::IsMember({"plus", "plus-free", "dobrushin"}));
  verify->add_option("--face", face, "boundary face id");
  verify->add_option("--arc", arc_text, "fixed edges (plus-free) or plus vertices (dobrushin), comma separated");

  auto* exp = app.add_subcommand("export", "write G_Q as JSON and optional SVG drawings");
  common(exp);
  exp->add_option("--svg", cfg.svg, "SVG output path");
  auto* primal_opt = exp->add_option("--pair-primal", primal_text, "primal polygon edges to overlay");
  auto* dual_opt = exp->add_option("--pair-dual", dual_text, "dual polygon edges to overlay");
  exp->add_flag("--matching", export_opt.matching, "overlay the first perfect matching of G_Q");

  auto* builtin = app.add_subcommand("builtin", "print the rotation system of a builtin graph");
  builtin->add_option("name", builtin_name, "k3, c4, grid_M_N or wheel_K")->required();
  builtin->add_option("--out", cfg.out, "output path");

  auto* correlate = app.add_subcommand("correlate", "spin correlation through order paths");
  common(correlate);
  correlate->add_option("--vertices", vertices_text, "comma separated vertex ids, an even number")->required();

  auto* spinor = app.add_subcommand("spinor", "squared spinor correlator");
  common(spinor);
  spinor->add_option("--pairs", pairs_text, "vertex:face insertions, comma separated");

  auto* magnetize = app.add_subcommand("magnetize", "plus-boundary magnetization");
  common(magnetize);
  magnetize->add_option("--face", face, "boundary face (largest face if absent)");
  magnetize->add_option("--vertex", vertex, "vertex u")->required();

  auto* duality_cmd = app.add_subcommand("duality", "Kramers-Wannier duality check");
  common(duality_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!caps_text.empty()) cfg.caps = parse_caps(caps_text);
    cfg.format = format_text == "csv" ? OutputFormat::csv : OutputFormat::json;
    cfg.threads = threads_from_env();
    cfg.boundary = boundary_from(boundary_kind, face, arc_text);
    if (*primal_opt) export_opt.primal = primal_text;
    if (*dual_opt) export_opt.dual = dual_text;
    if (*verify) return cmd_verify(cfg, out);
    if (*exp) {
      cfg.command = "export";
      if (cfg.graph.empty()) bad_input("--graph is required");
      return cmd_export(cfg, export_opt, out);
    }
    if (*builtin) return cmd_builtin(cfg, builtin_name, out);
    if (*correlate) return cmd_correlate(cfg, vertices_text, out);
    if (*spinor) return cmd_spinor(cfg, pairs_text, out);
    if (*magnetize) return cmd_magnetize(cfg, face, vertex, out);
    if (*duality_cmd) return cmd_duality(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::identity_violation ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace bozon
