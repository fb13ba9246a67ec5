#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zmcover/boxspace.hpp"
#include "zmcover/cover.hpp"
#include "zmcover/embed.hpp"
#include "zmcover/errors.hpp"
#include "zmcover/graph_io.hpp"
#include "zmcover/harness.hpp"
#include "zmcover/metrics.hpp"
#include "zmcover/trees.hpp"

namespace fs = std::filesystem;
using namespace zmcover;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;
constexpr const char* kOutputDirEnv = "ZMCOVER_OUTPUT_DIR";

struct Globals {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t size_cap = kDefaultSizeCap;
  std::uint64_t tree_cap = kDefaultTreeCap;
  std::string format = "json";
  std::string out;
};

// Relative output paths are placed under $ZMCOVER_OUTPUT_DIR when it is set.
fs::path output_path(const std::string& path) {
  fs::path p(path);
  const char* dir = std::getenv(kOutputDirEnv);
  if (p.is_relative() && dir != nullptr && *dir != '\0') p = fs::path(dir) / p;
  return p;
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  const fs::path p = output_path(g.out);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw IoError("cannot write " + p.string());
  f << text;
  if (!f) throw IoError("write failed for " + p.string());
}

std::string dump(const nlohmann::ordered_json& doc) { return doc.dump(2) + "\n"; }

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::shared_ptr<const CoverGraph> load_cover_file(const std::string& path, const Globals& g) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return std::make_shared<const CoverGraph>(cover_from_json(doc, g.size_cap));
}

std::shared_ptr<const CoverGraph> load_cover(const std::string& graph, std::uint32_t m,
                                             const std::vector<EdgeId>& tree, const Globals& g,
                                             const std::string& cover_file = {}) {
  if (!cover_file.empty()) return load_cover_file(cover_file, g);
  auto base = std::make_shared<const MultiGraph>(named_graph(graph));
  std::optional<SpanningTree> t;
  if (!tree.empty()) t = SpanningTree::from_edges(*base, tree);
  return std::make_shared<const CoverGraph>(build_zm_cover(base, m, std::move(t), g.size_cap));
}

std::vector<EdgeId> parse_tree(const std::string& text) {
  std::vector<EdgeId> out;
  if (text == "auto") return out;
  for (const std::string& item : split_list(text)) {
    std::size_t used = 0;
    unsigned long id = 0;
    try {
      id = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || id > std::numeric_limits<EdgeId>::max()) throw ParseError("bad edge id '" + item + "'");
    out.push_back(static_cast<EdgeId>(id));
  }
  if (out.empty()) throw ParseError("empty --tree");
  return out;
}

int cover_build(const Globals& g, const std::string& graph, std::uint32_t m, const std::vector<EdgeId>& tree) {
  const auto c = load_cover(graph, m, tree, g);
  if (g.format == "csv") {
    std::ostringstream out;
    out << "edge,tail,head,base_edge\n";
    for (EdgeId e = 0; e < c->graph().edge_count(); ++e) {
      const Edge& edge = c->graph().edge(e);
      out << e << ',' << edge.tail << ',' << edge.head << ',' << c->project_edge(e) << '\n';
    }
    emit(g, out.str());
  } else {
    emit(g, dump(cover_to_json(*c)));
  }
  return kExitPass;
}

int trees_count(const Globals& g, const std::string& graph, bool per_edge) {
  const MultiGraph base = named_graph(graph);
  const TreeCounts counts = tree_counts(base, g.threads);
  if (g.format == "csv") {
    std::ostringstream out;
    out << "edge,trees_avoiding\n";
    if (per_edge) {
      for (EdgeId e = 0; e < base.edge_count(); ++e) out << e << ',' << counts.avoiding[e] << '\n';
    }
    out << "total," << counts.total << '\n';
    emit(g, out.str());
    return kExitPass;
  }
  nlohmann::ordered_json doc;
  doc["total"] = counts.total.str();
  if (per_edge) {
    doc["avoiding"] = nlohmann::ordered_json::array();
    for (const BigInt& n : counts.avoiding) doc["avoiding"].push_back(n.str());
  }
  doc["constant"] = counts.constant_over_all_edges();
  if (counts.constant_over_all_edges()) {
    doc["N"] = counts.avoiding.empty() ? counts.total.str() : counts.avoiding.front().str();
  } else {
    doc["N"] = nullptr;
  }
  emit(g, dump(doc));
  return kExitPass;
}

int metrics_profile(const Globals& g, const std::string& graph, const std::string& cover_file, std::uint32_t m,
                    const std::string& mode, std::size_t sources, bool all_pairs) {
  const auto c = load_cover(graph, m, {}, g, cover_file);
  PairSource pairs{all_pairs ? PairSource::Kind::kAllPairs : PairSource::Kind::kAuto, sources, g.seed};
  const ProfileMode pm = mode == "l2" ? ProfileMode::kL2VsD : ProfileMode::kDqVsD;
  const CompressionProfile profile = compression_profile(*c, pairs, pm, g.threads);
  if (g.format == "csv") {
    emit(g, profile_to_csv(profile));
    return kExitPass;
  }
  nlohmann::ordered_json doc;
  doc["mode"] = mode;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const ProfileRow& row : profile.rows) {
    nlohmann::ordered_json j;
    j["t"] = row.t;
    j["pairs"] = row.pairs;
    j["min"] = to_fraction_string(row.min_val);
    j["max"] = to_fraction_string(row.max_val);
    doc["rows"].push_back(std::move(j));
  }
  emit(g, dump(doc));
  return kExitPass;
}

int embed_export(const Globals& g, const std::string& graph, const std::string& cover_file, std::uint32_t m,
                 std::vector<VertexId> vertices) {
  const auto c = load_cover(graph, m, {}, g, cover_file);
  const CoverEmbedding embedding(*c);
  if (vertices.empty()) {
    vertices.resize(c->graph().vertex_count());
    for (VertexId x = 0; x < vertices.size(); ++x) vertices[x] = x;
  }
  for (VertexId x : vertices) {
    if (x >= c->graph().vertex_count()) throw IndexError("vertex " + std::to_string(x) + " out of range");
  }
  const auto& layout = *embedding.layout();
  if (g.format == "csv") {
    std::ostringstream out;
    out << "# m=" << m << " dimension=" << layout.dimension << " blocks=" << layout.blocks.size()
        << " block_width=" << m << " values are doubled coordinates\n";
    out << "vertex,coordinates\n";
    for (VertexId x : vertices) {
      out << x << ',';
      bool first = true;
      const HalfIntVector point = embedding.point(x);
      for (const auto& [coord, doubled] : point.entries()) {
        out << (first ? "" : " ") << coord << ':' << doubled;
        first = false;
      }
      out << '\n';
    }
    emit(g, out.str());
    return kExitPass;
  }
  nlohmann::ordered_json doc;
  doc["m"] = m;
  doc["dimension"] = layout.dimension;
  doc["block_width"] = m;
  doc["points"] = nlohmann::ordered_json::array();
  for (VertexId x : vertices) {
    nlohmann::ordered_json p;
    p["vertex"] = x;
    p["half_coordinates"] = nlohmann::ordered_json::array();
    const HalfIntVector point = embedding.point(x);
    for (const auto& entry : point.entries()) p["half_coordinates"].push_back(entry.first);
    doc["points"].push_back(std::move(p));
  }
  emit(g, dump(doc));
  return kExitPass;
}

int tower_build(const Globals& g, std::uint32_t rank, std::uint32_t m, std::uint32_t levels, std::string out_dir) {
  const Tower tower = build_tower(rank, m, levels, g.size_cap);
  const nlohmann::ordered_json manifest = tower_manifest(tower);
  if (!out_dir.empty()) {
    const fs::path dir = output_path(out_dir);
    fs::create_directories(dir);
    for (const TowerLevel& level : tower.levels) {
      save_json_file(dir / ("level_" + std::to_string(level.level) + ".json"), graph_to_json(*level.graph));
    }
    save_json_file(dir / "manifest.json", manifest);
  }
  emit(g, dump(manifest));
  if (tower.truncated) std::cerr << tower.notice << '\n';
  return kExitPass;
}

int suite_run(const Globals& g, SuiteConfig cfg, const std::string& checks, const std::string& fault,
              const std::string& graphs, bool quiet) {
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  cfg.size_cap = g.size_cap;
  cfg.tree_cap = g.tree_cap;
  if (!graphs.empty()) cfg.graphs = split_list(graphs);
  if (checks == "none") {
    cfg.checks.clear();
  } else if (checks != "all") {
    cfg.checks.clear();
    for (const std::string& name : split_list(checks)) {
      const auto c = parse_check(name);
      if (!c) throw ParseError("unknown check '" + name + "'");
      cfg.checks.push_back(*c);
    }
  }
  const auto f = parse_fault(fault);
  if (!f) throw ParseError("unknown fault '" + fault + "'");
  cfg.fault = *f;
  const VerificationReport report = run_suite(cfg);
  emit(g, dump(report_to_json(report)));
  if (!quiet) std::cerr << report_summary(report);
  return report.pass ? kExitPass : kExitViolations;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Z_m-homology covers: construction, metrics, embeddings and verification suites"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for all sampling")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
  app.add_option("--size-cap", g.size_cap, "Largest cover vertex count")->capture_default_str();
  app.add_option("--tree-cap", g.tree_cap, "Largest spanning-tree count to enumerate")->capture_default_str();
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--out", g.out, "Output file (stdout when empty); relative paths go under $" +
                                     std::string(kOutputDirEnv));

  std::string graph = "k4";
  std::string cover_file;
  std::uint32_t m = 3;

  auto* cover = app.add_subcommand("cover", "Cover construction")->require_subcommand(1)->fallthrough();
  auto* cover_build_cmd = cover->add_subcommand("build", "Build the Z_m-homology cover of a graph")->fallthrough();
  std::string tree = "auto";
  cover_build_cmd->add_option("--graph", graph, "Named graph or graph document path")->required();
  cover_build_cmd->add_option("--m", m, "Modulus")->capture_default_str();
  cover_build_cmd->add_option("--tree", tree, "Spanning tree edge ids, comma-separated, or auto")
      ->capture_default_str();

  auto* trees = app.add_subcommand("trees", "Spanning trees")->require_subcommand(1)->fallthrough();
  auto* trees_count_cmd = trees->add_subcommand("count", "Matrix-Tree counts")->fallthrough();
  bool per_edge = false;
  trees_count_cmd->add_option("--graph", graph, "Named graph or graph document path")->required();
  trees_count_cmd->add_flag("--per-edge", per_edge, "Also report N_e for every edge");

  auto* metrics = app.add_subcommand("metrics", "Cover metrics")->require_subcommand(1)->fallthrough();
  auto* profile_cmd = metrics->add_subcommand("profile", "Compression profile against graph distance")->fallthrough();
  std::string mode = "dq";
  std::size_t sources = kDefaultSampleSources;
  bool all_pairs = false;
  auto* profile_graph = profile_cmd->add_option("--graph", graph, "Named graph or graph document path");
  profile_cmd->add_option("--cover", cover_file, "Cover document written by cover build")->excludes(profile_graph);
  profile_cmd->add_option("--m", m, "Modulus")->capture_default_str();
  profile_cmd->add_option("--mode", mode, "dq or l2")->check(CLI::IsMember({"dq", "l2"}))->capture_default_str();
  profile_cmd->add_option("--sources,--samples", sources, "BFS sources for large covers")->capture_default_str();
  profile_cmd->add_flag("--all-pairs", all_pairs, "Visit every ordered pair");

  auto* embed = app.add_subcommand("embed", "Embeddings")->require_subcommand(1)->fallthrough();
  auto* export_cmd = embed->add_subcommand("export", "Write Psi images of cover vertices")->fallthrough();
  std::vector<VertexId> vertices;
  auto* export_graph = export_cmd->add_option("--graph", graph, "Named graph or graph document path");
  export_cmd->add_option("--cover", cover_file, "Cover document written by cover build")->excludes(export_graph);
  export_cmd->add_option("--m", m, "Modulus")->capture_default_str();
  export_cmd->add_option("--vertices", vertices, "Cover vertices (default: all)")->delimiter(',');

  auto* tower = app.add_subcommand("tower", "Box-space towers")->require_subcommand(1)->fallthrough();
  auto* tower_cmd = tower->add_subcommand("build", "Iterated covers of the Cayley graph of Z_m^n")->fallthrough();
  std::uint32_t rank = 2;
  std::uint32_t levels = 2;
  std::string out_dir;
  tower_cmd->add_option("--rank", rank, "Free group rank")->capture_default_str();
  tower_cmd->add_option("--m", m, "Modulus")->capture_default_str();
  tower_cmd->add_option("--levels", levels, "Levels to build")->capture_default_str();
  tower_cmd->add_option("--cap", g.size_cap, "Alias of --size-cap");
  tower_cmd->add_option("--out-dir", out_dir, "Directory for level graphs and manifest.json");

  auto* suite = app.add_subcommand("suite", "Verification suites")->require_subcommand(1)->fallthrough();
  auto* suite_cmd = suite->add_subcommand("run", "Run the selected checks")->fallthrough();
  SuiteConfig cfg;
  std::string checks = "all";
  std::string fault = "none";
  std::string graphs;
  bool quiet = false;
  suite_cmd->add_option("--graphs", graphs, "Comma-separated inputs (default doubled_edge,k4,c5,petersen)");
  suite_cmd->add_option("--m", cfg.m, "Modulus")->capture_default_str();
  suite_cmd->add_option("--samples", cfg.samples, "BFS sources for large covers")->capture_default_str();
  suite_cmd->add_option("--checks", checks, "Comma-separated checks, 'all' or 'none'")->capture_default_str();
  suite_cmd->add_option("--fault", fault, "Inject a fault (self-test)")->capture_default_str();
  suite_cmd->add_flag("--quiet", quiet, "No summary on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (cover_build_cmd->parsed()) return cover_build(g, graph, m, parse_tree(tree));
    if (trees_count_cmd->parsed()) return trees_count(g, graph, per_edge);
    if ((profile_cmd->parsed() || export_cmd->parsed()) && cover_file.empty() &&
        (profile_graph->count() + export_graph->count()) == 0) {
      std::cerr << "error: one of --graph or --cover is required\n";
      return kExitUsage;
    }
    if (profile_cmd->parsed()) return metrics_profile(g, graph, cover_file, m, mode, sources, all_pairs);
    if (export_cmd->parsed()) return embed_export(g, graph, cover_file, m, vertices);
    if (tower_cmd->parsed()) return tower_build(g, rank, m, levels, out_dir);
    if (suite_cmd->parsed()) return suite_run(g, cfg, checks, fault, graphs, quiet);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
