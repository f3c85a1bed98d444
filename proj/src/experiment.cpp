#include "tunenet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "tunenet/analysis.hpp"

namespace tunenet {
namespace {

struct ReplicateResult {
  bool ok = false;
  std::string error;
  MetricsReport report;
};

std::string format_fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

std::string format_prob(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    const auto a = field.find_first_not_of(" \t\r");
    const auto b = field.find_last_not_of(" \t\r");
    out.push_back(a == std::string::npos ? "" : field.substr(a, b - a + 1));
  }
  return out;
}

}  // namespace

const std::vector<ExperimentConfig>& reference_table() {
  static const std::vector<ExperimentConfig> table = [] {
    std::vector<ExperimentConfig> rows;
    int key = 1;
    for (std::size_t n : {1000, 10000}) {
      for (std::size_t c : {10, 20}) {
        for (double p_t : {0.5, 1.0}) {
          for (double p_c : {0.01, 0.10, 0.5, 1.0}) {
            rows.push_back({key++, GenParams{.n = n, .m = 2, .c = c, .p_t = p_t,
                                             .p_c = p_c, .seed = 0}});
          }
        }
      }
    }
    return rows;
  }();
  return table;
}

std::vector<ExperimentConfig> read_table(std::istream& in) {
  std::vector<ExperimentConfig> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_csv(line);
    if (fields.empty() || fields[0].empty() || fields[0][0] == '#') continue;
    if (fields[0] == "key") continue;
    if (fields.size() != 6) {
      throw std::invalid_argument("table line " + std::to_string(line_no) +
                                  ": expected key,n,m,c,p_t,p_c");
    }
    try {
      ExperimentConfig row;
      row.key = std::stoi(fields[0]);
      row.params.n = std::stoul(fields[1]);
      row.params.m = std::stoul(fields[2]);
      row.params.c = std::stoul(fields[3]);
      row.params.p_t = std::stod(fields[4]);
      row.params.p_c = std::stod(fields[5]);
      row.params.validate();
      rows.push_back(row);
    } catch (const std::exception& e) {
      throw std::invalid_argument("table line " + std::to_string(line_no) + ": " +
                                  e.what());
    }
  }
  return rows;
}

std::uint64_t replicate_seed(std::uint64_t base_seed, int key, std::size_t replicate) {
  const std::uint64_t id =
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(key)) << 32) |
      static_cast<std::uint32_t>(replicate);
  return splitmix64(base_seed ^ splitmix64(id));
}

std::vector<ExperimentRow> run_experiment(const std::vector<ExperimentConfig>& table,
                                          const ExperimentOptions& options) {
  if (options.replicates == 0) throw std::invalid_argument("replicates must be >= 1");
  const std::size_t reps = options.replicates;
  const std::size_t total = table.size() * reps;
  std::vector<ReplicateResult> results(total);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      const auto& config = table[job / reps];
      const std::size_t rep = job % reps;
      auto& out = results[job];
      try {
        GenParams params = config.params;
        params.seed = replicate_seed(options.base_seed, config.key, rep);
        const Graph g = generate(params, {.record_trace = false}).graph;
        AnalyzeOptions analyze_options;
        analyze_options.apl_mode = options.apl_mode;
        analyze_options.x_min = default_x_min(params.m);
        analyze_options.seed = splitmix64(params.seed);
        analyze_options.top_k = 0;
        out.report = analyze(g, nullptr, analyze_options);
        out.ok = true;
      } catch (const std::exception& e) {
        out.error = e.what();
      }
      if (options.log) {
        options.log("key " + std::to_string(config.key) + " replicate " +
                    std::to_string(rep) + (out.ok ? " done" : " failed: " + out.error));
      }
    }
  };
  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  std::vector<ExperimentRow> rows;
  for (std::size_t i = 0; i < table.size(); ++i) {
    ExperimentRow row;
    row.key = table[i].key;
    row.params = table[i].params;
    row.replicates = reps;
    std::size_t ok = 0;
    for (std::size_t r = 0; r < reps; ++r) {
      const auto& res = results[i * reps + r];
      if (!res.ok) {
        ++row.failures;
        row.errors.push_back(res.error);
        continue;
      }
      ++ok;
      const auto& m = res.report;
      row.nodes += static_cast<double>(m.node_count);
      row.edges += static_cast<double>(m.edge_count);
      row.apl += m.avg_path_length.value_or(0.0);
      row.cc += m.avg_clustering;
      row.alpha += m.alpha.value_or(0.0);
      row.q += m.modularity.value_or(0.0);
      row.rd += m.relative_density.value_or(0.0);
    }
    if (ok > 0) {
      for (double* f : {&row.nodes, &row.edges, &row.apl, &row.cc, &row.alpha, &row.q,
                        &row.rd}) {
        *f /= static_cast<double>(ok);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << kExperimentCsvHeader << '\n';
  for (const auto& r : rows) {
    const bool any = r.failures < r.replicates;
    out << r.key << ',' << r.params.n << ',' << r.params.m << ',' << r.params.c << ','
        << format_prob(r.params.p_t) << ',' << format_prob(r.params.p_c) << ','
        << r.replicates << ',' << r.failures;
    for (double v : {r.nodes, r.edges, r.apl, r.cc, r.alpha, r.q, r.rd}) {
      out << ',' << (any ? format_fixed(v) : "");
    }
    out << '\n';
  }
}

std::vector<BenchRow> run_bench(const std::vector<std::size_t>& sizes,
                                const GenParams& base, std::size_t repeats) {
  if (sizes.empty()) throw std::invalid_argument("bench needs at least one size");
  repeats = std::max<std::size_t>(repeats, 1);
  std::vector<BenchRow> rows;
  for (std::size_t n : sizes) {
    GenParams params = base;
    params.n = n;
    params.validate();
    std::vector<double> times;
    std::size_t edges = 0;
    for (std::size_t r = 0; r < repeats; ++r) {
      params.seed = splitmix64(base.seed + r);
      const auto start = std::chrono::steady_clock::now();
      const auto result = generate(params, {.record_trace = false});
      const auto stop = std::chrono::steady_clock::now();
      times.push_back(std::chrono::duration<double>(stop - start).count());
      edges = result.graph.edge_count();
    }
    std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
    rows.push_back({n, edges, times[times.size() / 2]});
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kBenchCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << r.edges << ',' << format_fixed(r.seconds) << '\n';
  }
}

}  // namespace tunenet
