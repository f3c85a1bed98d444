// tunenet: generate community-structured growing networks and analyze graphs.
//
// Exit codes: 0 success, 1 runtime failure, 2 invalid flags, 3 unreadable or
// malformed input, 4 disconnected input where connectivity is required.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tunenet/analysis.hpp"
#include "tunenet/community.hpp"
#include "tunenet/experiment.hpp"
#include "tunenet/generator.hpp"
#include "tunenet/io.hpp"
#include "tunenet/metrics.hpp"

namespace fs = std::filesystem;
using namespace tunenet;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitDisconnected = 4;

constexpr const char* kSeedEnv = "TUNENET_SEED";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SeedChoice {
  std::uint64_t value;
  std::string source;  // "flag", "env" or "entropy"
};

SeedChoice resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return {*flag, "flag"};
  if (const char* env = std::getenv(kSeedEnv); env && *env) {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      return {value, "env"};
    } catch (const std::exception&) {
      throw UsageError(std::string(kSeedEnv) + " is not an unsigned integer");
    }
  }
  return {entropy_seed(), "entropy"};
}

template <typename Fn>
void write_file(const fs::path& path, Fn&& fn) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  fn(out);
  out.flush();
  if (!out) throw std::runtime_error("error while writing " + path.string());
}

fs::path with_suffix(const fs::path& prefix, const std::string& suffix) {
  return fs::path(prefix.string() + suffix);
}

EdgeListDocument load_graph(const fs::path& path) {
  try {
    auto doc = read_edge_list_file(path);
    for (const auto& w : doc.warnings) std::cerr << "warning: " << w << '\n';
    return doc;
  } catch (const ParseError& e) {
    throw InputError(path.string() + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
}

// ---------------------------------------------------------------- generate

struct GenerateFlags {
  std::size_t n = 1000, m = 2, c = 10;
  double pt = 1.0, pc = 0.01;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> formats;
};

void validate(const GenerateFlags& f) {
  if (f.c < 1) throw UsageError("--c must be at least 1");
  if (f.m < 1) throw UsageError("--m must be at least 1");
  if (f.n < 3 * f.c) {
    throw UsageError("--n must be at least 3 * --c (got n=" + std::to_string(f.n) +
                     ", c=" + std::to_string(f.c) + ")");
  }
  if (!(f.pt >= 0 && f.pt <= 1)) throw UsageError("--pt must lie in [0, 1]");
  if (!(f.pc >= 0 && f.pc <= 1)) throw UsageError("--pc must lie in [0, 1]");
}

int cmd_generate(const GenerateFlags& f) {
  validate(f);
  const auto seed = resolve_seed(f.seed);
  const GenParams params{.n = f.n, .m = f.m, .c = f.c, .p_t = f.pt, .p_c = f.pc,
                         .seed = seed.value};
  const auto result = generate(params);
  const Graph& g = result.graph;
  const Partition truth = Partition::from_labels(g);

  const fs::path prefix(f.out);
  if (prefix.has_parent_path()) fs::create_directories(prefix.parent_path());
  std::vector<std::string> written;
  auto emit = [&](const std::string& suffix, auto&& fn) {
    const auto path = with_suffix(prefix, suffix);
    write_file(path, fn);
    written.push_back(path.filename().string());
  };
  emit(".edges", [&](std::ostream& o) { write_edge_list(o, g, params); });
  emit(".communities.tsv", [&](std::ostream& o) { write_partition(o, truth); });
  for (const auto& fmt : f.formats) {
    if (fmt == "graphml") {
      emit(".graphml", [&](std::ostream& o) { write_graphml(o, g, &truth); });
    } else if (fmt == "dot") {
      emit(".dot", [&](std::ostream& o) { write_dot(o, g, &truth); });
    }
  }

  nlohmann::json manifest;
  manifest["tool"] = "tunenet";
  manifest["version"] = TUNENET_VERSION;
  manifest["params"] = {{"n", params.n},     {"m", params.m},     {"c", params.c},
                        {"p_t", params.p_t}, {"p_c", params.p_c}, {"seed", params.seed}};
  manifest["seed_source"] = seed.source;
  manifest["node_count"] = g.node_count();
  manifest["edge_count"] = g.edge_count();
  manifest["inter_edges_added"] = result.trace.inter_edges_added();
  manifest["inter_edges_skipped"] = result.trace.inter_edges_skipped();
  manifest["edge_shortfall"] = result.trace.total_shortfall();
  manifest["files"] = written;
  write_file(with_suffix(prefix, ".manifest.json"),
             [&](std::ostream& o) { o << manifest.dump(2) << '\n'; });

  std::cerr << "generated " << g.node_count() << " nodes, " << g.edge_count()
            << " edges (seed " << params.seed << ", " << seed.source << ")\n";
  return 0;
}

// ----------------------------------------------------------------- analyze

struct AnalyzeFlags {
  std::string in;
  std::string labels;
  std::string apl_mode = "auto";
  std::size_t apl_sources = 1000;
  std::optional<std::size_t> xmin;
  std::size_t top_k = 10;
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_analyze(const AnalyzeFlags& f) {
  const auto doc = load_graph(f.in);
  std::optional<Partition> truth;
  if (!f.labels.empty()) {
    try {
      truth = read_partition_file(f.labels);
    } catch (const std::exception& e) {
      throw InputError(f.labels + ": " + e.what());
    }
    if (truth->node_count() != doc.graph.node_count()) {
      throw InputError(f.labels + ": partition does not match the graph's node count");
    }
  }
  if (!doc.graph.is_connected()) throw DisconnectedGraphError(f.in + " is disconnected");

  AnalyzeOptions options;
  if (f.apl_mode == "exact") {
    options.apl_mode = AplMode::exact();
  } else if (f.apl_mode == "sampled") {
    options.apl_mode = AplMode::sampled(f.apl_sources);
  }
  options.x_min = f.xmin ? *f.xmin
                         : default_x_min(doc.params ? doc.params->m : std::size_t{1});
  options.top_k = f.top_k;
  options.threads = f.threads;
  options.seed = resolve_seed(f.seed).value;

  const auto report = analyze(doc.graph, truth ? &*truth : nullptr, options);
  const std::string text = to_json(report).dump(2) + "\n";
  if (f.out.empty()) {
    std::cout << text;
  } else {
    write_file(f.out, [&](std::ostream& o) { o << text; });
  }
  return 0;
}

// ------------------------------------------------------------------ detect

struct DetectFlags {
  std::string in;
  std::string out;
  std::size_t subcluster_top_k = 0;
};

int cmd_detect(const DetectFlags& f) {
  const auto doc = load_graph(f.in);
  if (doc.graph.edge_count() == 0) throw InputError(f.in + " has no edges");
  const auto detection = detect_communities(doc.graph);
  nlohmann::json summary;
  summary["groups"] = detection.partition.group_count();
  summary["modularity"] = detection.modularity;
  summary["relative_density"] = relative_density(doc.graph, detection.partition);
  summary["merges"] = detection.dendrogram.cut;
  if (f.subcluster_top_k > 0) {
    summary["subclusters"] = nlohmann::json::array();
    for (const auto& s : subcluster(doc.graph, detection.partition, f.subcluster_top_k)) {
      summary["subclusters"].push_back({{"group", s.group},
                                        {"size", s.partition.node_count()},
                                        {"subgroups", s.partition.group_count()},
                                        {"modularity", s.modularity}});
    }
  }
  if (!f.out.empty()) {
    write_file(f.out, [&](std::ostream& o) { write_partition(o, detection.partition); });
  }
  std::cout << summary.dump(2) << '\n';
  return 0;
}

// -------------------------------------------------------------- experiment

struct ExperimentFlags {
  std::string table;
  std::size_t replicates = 5;
  unsigned jobs = 1;
  std::optional<std::uint64_t> seed;
  std::string out_csv;
  bool quiet = false;
};

int cmd_experiment(const ExperimentFlags& f) {
  std::vector<ExperimentConfig> table = reference_table();
  if (!f.table.empty()) {
    std::ifstream in(f.table);
    if (!in) throw InputError("cannot open " + f.table);
    try {
      table = read_table(in);
    } catch (const std::invalid_argument& e) {
      throw InputError(f.table + ": " + e.what());
    }
  }
  ExperimentOptions options;
  options.replicates = f.replicates;
  options.jobs = f.jobs;
  // Unlike generate, the sweep defaults to base seed 0 so reruns match.
  options.base_seed = f.seed ? *f.seed
                             : (std::getenv(kSeedEnv) ? resolve_seed(f.seed).value : 0);
  if (!f.quiet) {
    options.log = [](const std::string& line) { std::cerr << line + "\n"; };
  }
  const auto rows = run_experiment(table, options);
  for (const auto& r : rows) {
    for (const auto& e : r.errors) std::cerr << "key " << r.key << ": " << e << '\n';
  }
  if (f.out_csv.empty()) {
    write_experiment_csv(std::cout, rows);
  } else {
    write_file(f.out_csv, [&](std::ostream& o) { write_experiment_csv(o, rows); });
  }
  return 0;
}

// ------------------------------------------------------------------- bench

struct BenchFlags {
  std::vector<std::size_t> sizes{1000, 10000, 100000};
  std::size_t m = 2, c = 10, repeats = 1;
  double pt = 1.0, pc = 0.01;
  std::optional<std::uint64_t> seed;
  std::string out_csv;
};

int cmd_bench(const BenchFlags& f) {
  GenerateFlags check;
  check.n = 3 * f.c;
  check.m = f.m;
  check.c = f.c;
  check.pt = f.pt;
  check.pc = f.pc;
  validate(check);
  for (auto n : f.sizes) {
    if (n < 3 * f.c) throw UsageError("--sizes entries must be at least 3 * --c");
  }
  const GenParams base{.n = 0, .m = f.m, .c = f.c, .p_t = f.pt, .p_c = f.pc,
                       .seed = resolve_seed(f.seed).value};
  const auto rows = run_bench(f.sizes, base, f.repeats);
  if (f.out_csv.empty()) {
    write_bench_csv(std::cout, rows);
  } else {
    write_file(f.out_csv, [&](std::ostream& o) { write_bench_csv(o, rows); });
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tunable growing networks with community structure: generation and analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", TUNENET_VERSION);

  GenerateFlags gen;
  auto* generate_cmd = app.add_subcommand("generate", "Generate a network");
  generate_cmd->add_option("--n", gen.n, "Number of nodes (>= 3c)")->capture_default_str();
  generate_cmd->add_option("--m", gen.m, "Edges per new node")->capture_default_str();
  generate_cmd->add_option("--c", gen.c, "Number of seed triads / communities")
      ->capture_default_str();
  generate_cmd->add_option("--pt", gen.pt, "Probability of triad formation")
      ->capture_default_str();
  generate_cmd->add_option("--pc", gen.pc, "Probability of an inter-cluster edge")
      ->capture_default_str();
  generate_cmd->add_option("--seed", gen.seed,
                           "RNG seed (default: $TUNENET_SEED, else entropy)");
  generate_cmd->add_option("--out", gen.out,
                           "Output prefix; writes PREFIX.edges, PREFIX.communities.tsv, "
                           "PREFIX.manifest.json")
      ->required();
  generate_cmd->add_option("--format", gen.formats, "Extra exports: graphml, dot")
      ->check(CLI::IsMember({"graphml", "dot", "edgelist"}));

  AnalyzeFlags ana;
  auto* analyze_cmd = app.add_subcommand("analyze", "Compute the metric report of a graph");
  analyze_cmd->add_option("--in", ana.in, "Edge list file")->required();
  analyze_cmd->add_option("--labels", ana.labels, "Ground-truth partition TSV");
  analyze_cmd->add_option("--apl-mode", ana.apl_mode, "auto, exact or sampled")
      ->check(CLI::IsMember({"auto", "exact", "sampled"}))
      ->capture_default_str();
  analyze_cmd->add_option("--apl-sources", ana.apl_sources, "Sources for sampled APL")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  analyze_cmd->add_option("--xmin", ana.xmin,
                          "Power-law x_min (default max(m, 2), m from the file header)")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--top-k", ana.top_k, "Communities in the per-community table")
      ->capture_default_str();
  analyze_cmd->add_option("--threads", ana.threads, "BFS threads (0 = all cores)")
      ->capture_default_str();
  analyze_cmd->add_option("--seed", ana.seed, "Seed for sampled APL sources");
  analyze_cmd->add_option("--out", ana.out, "Write the JSON report here instead of stdout");

  DetectFlags det;
  auto* detect_cmd = app.add_subcommand("detect", "Greedy modularity community detection");
  detect_cmd->add_option("--in", det.in, "Edge list file")->required();
  detect_cmd->add_option("--out", det.out, "Write the partition TSV here");
  detect_cmd->add_option("--subcluster", det.subcluster_top_k,
                         "Re-cluster the K largest detected communities");

  ExperimentFlags exp;
  auto* experiment_cmd = app.add_subcommand(
      "experiment",
      "Run the 32-configuration sweep.\nCSV columns: " + std::string(kExperimentCsvHeader) +
          "\n(metric columns are means over successful replicates; q and rd refer to "
          "the detected partition)");
  experiment_cmd->add_option("--table", exp.table, "Custom table CSV: key,n,m,c,p_t,p_c");
  experiment_cmd->add_option("--replicates", exp.replicates, "Networks per configuration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  experiment_cmd->add_option("--jobs", exp.jobs, "Parallel jobs")->capture_default_str();
  experiment_cmd->add_option("--seed", exp.seed, "Base seed (default: $TUNENET_SEED, else 0)");
  experiment_cmd->add_option("--out-csv", exp.out_csv, "Write CSV here instead of stdout");
  experiment_cmd->add_flag("--quiet", exp.quiet, "No per-job log lines");

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand(
      "bench", "Time generation per size.\nCSV columns: " + std::string(kBenchCsvHeader));
  bench_cmd->add_option("--sizes", bench.sizes, "Node counts")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--m", bench.m)->capture_default_str();
  bench_cmd->add_option("--c", bench.c)->capture_default_str();
  bench_cmd->add_option("--pt", bench.pt)->capture_default_str();
  bench_cmd->add_option("--pc", bench.pc)->capture_default_str();
  bench_cmd->add_option("--repeats", bench.repeats, "Runs per size (median reported)")
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--out-csv", bench.out_csv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*generate_cmd) return cmd_generate(gen);
    if (*analyze_cmd) return cmd_analyze(ana);
    if (*detect_cmd) return cmd_detect(det);
    if (*experiment_cmd) return cmd_experiment(exp);
    if (*bench_cmd) return cmd_bench(bench);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DisconnectedGraphError& e) {
    std::cerr << "disconnected graph: " << e.what() << '\n';
    return kExitDisconnected;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
