// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "support.hpp"
#include "tunenet/community.hpp"
#include "tunenet/experiment.hpp"
#include "tunenet/generator.hpp"
#include "tunenet/io.hpp"
#include "tunenet/metrics.hpp"

using namespace tunenet;
using namespace tunenet::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records a failed check; the first few messages end up in the summary.
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass || failures < 5) detail << " [" << what << "]";
    pass = false;
    ++failures;
  }
  int failures = 0;
};

std::string fmt(double x, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

std::size_t inter_community_edges(const Graph& g) {
  std::size_t count = 0;
  for (const auto& [u, v] : g.edges()) count += g.label(u) != g.label(v);
  return count;
}

// ------------------------------------------------------------------------

void construction_invariants(Outcome& out) {
  RngStream rng(20240601);
  const auto start = std::chrono::steady_clock::now();
  for (int draw = 0; draw < 200; ++draw) {
    GenParams p;
    p.c = 1 + rng.uniform_below(40);
    p.n = 3 * p.c + rng.uniform_below(2001 - 3 * p.c);
    p.m = 1 + rng.uniform_below(5);
    p.p_t = rng.uniform01();
    p.p_c = rng.uniform01();
    p.seed = rng.next_u64();
    const std::string tag = "draw " + std::to_string(draw);

    const auto result = generate(p);
    const Graph& g = result.graph;
    out.require(g.node_count() == p.n, tag + " node count");
    out.require(g.is_connected(), tag + " connected");
    try {
      g.check_invariants();
    } catch (const std::exception& e) {
      out.require(false, tag + " " + e.what());
    }
    const auto truth = Partition::from_labels(g);
    out.require(truth.group_count() == p.c, tag + " community count");
    const auto& steps = result.trace.steps;
    for (std::size_t i = 1; p.c > 1 && i < steps.size(); ++i) {
      if (steps[i].community == steps[i - 1].community) {
        out.require(false, tag + " consecutive nodes share a community");
        break;
      }
    }

    GenParams closed = p;
    closed.p_c = 0;
    const Graph h = generate(closed).graph;
    out.require(inter_community_edges(h) == p.c * (p.c - 1) / 2,
                tag + " inter edges with p_c=0");
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(seconds < 60, "runtime");
  out.detail << " 200 draws in " << fmt(seconds, 1) << " s";
}

// Means over 5 replicates of the 16 n=1000 reference rows.
const std::vector<ExperimentRow>& small_rows() {
  static const std::vector<ExperimentRow> rows = [] {
    std::vector<ExperimentConfig> table;
    for (const auto& cfg : reference_table()) {
      if (cfg.params.n == 1000) table.push_back(cfg);
    }
    ExperimentOptions options;
    options.replicates = 5;
    options.jobs = worker_count();
    return run_experiment(table, options);
  }();
  return rows;
}

void apl_band(Outcome& out) {
  // (c, p_t) -> p_c -> mean APL
  std::map<std::pair<std::size_t, double>, std::map<double, double>> groups;
  double lo = 1e9, hi = 0;
  for (const auto& row : small_rows()) {
    out.require(row.failures == 0, "key " + std::to_string(row.key) + " failed");
    out.require(row.apl >= 2.5 && row.apl <= 8,
                "key " + std::to_string(row.key) + " APL " + fmt(row.apl));
    lo = std::min(lo, row.apl);
    hi = std::max(hi, row.apl);
    groups[{row.params.c, row.params.p_t}][row.params.p_c] = row.apl;
  }
  for (const auto& [key, by_pc] : groups) {
    const double at_low = by_pc.at(0.01);
    for (const auto& [pc, apl] : by_pc) {
      out.require(pc == 0.01 || apl < at_low,
                  "c=" + std::to_string(key.first) + " p_t=" + fmt(key.second, 1) +
                      " APL at p_c=" + fmt(pc, 2) + " exceeds p_c=0.01");
    }
  }
  out.detail << " APL range " << fmt(lo) << ".." << fmt(hi);
}

void cc_bands(Outcome& out) {
  double lo_half = 1, hi_half = 0, lo_one = 1, hi_one = 0;
  for (const auto& row : small_rows()) {
    const bool triad = row.params.p_t == 1.0;
    const double low = triad ? 0.55 : 0.25, high = triad ? 0.80 : 0.55;
    out.require(row.cc >= low && row.cc <= high,
                "key " + std::to_string(row.key) + " CC " + fmt(row.cc));
    (triad ? lo_one : lo_half) = std::min(triad ? lo_one : lo_half, row.cc);
    (triad ? hi_one : hi_half) = std::max(triad ? hi_one : hi_half, row.cc);
  }
  out.detail << " p_t=0.5 CC " << fmt(lo_half) << ".." << fmt(hi_half) << ", p_t=1.0 CC "
             << fmt(lo_one) << ".." << fmt(hi_one);
}

void alpha_band(Outcome& out) {
  double lo = 1e9, hi = 0;
  for (const auto& cfg : reference_table()) {
    if (cfg.params.n != 10000) continue;
    double mean = 0;
    for (std::size_t r = 0; r < 5; ++r) {
      GenParams p = cfg.params;
      p.seed = replicate_seed(0, cfg.key, r);
      const Graph g = generate(p, {.record_trace = false}).graph;
      mean += fit_alpha(degrees(g), default_x_min(p.m)) / 5;
    }
    out.require(mean >= 1.8 && mean <= 3.3,
                "key " + std::to_string(cfg.key) + " alpha " + fmt(mean));
    lo = std::min(lo, mean);
    hi = std::max(hi, mean);
  }
  out.detail << " alpha range " << fmt(lo) << ".." << fmt(hi);
}

void community_trend(Outcome& out) {
  const std::vector<double> pcs{0.01, 0.1, 0.5, 1.0};
  const int seeds = 20;
  std::vector<double> q(pcs.size()), rd(pcs.size());
  std::vector<std::function<void()>> jobs;
  std::vector<std::vector<std::pair<double, double>>> samples(
      pcs.size(), std::vector<std::pair<double, double>>(seeds));
  for (std::size_t i = 0; i < pcs.size(); ++i) {
    for (int s = 0; s < seeds; ++s) {
      jobs.push_back([&, i, s] {
        const Graph g = generate({.n = 1000, .m = 2, .c = 10, .p_t = 1.0, .p_c = pcs[i],
                                  .seed = static_cast<std::uint64_t>(1000 + s)})
                            .graph;
        const auto d = detect_communities(g);
        samples[i][s] = {d.modularity, relative_density(g, d.partition)};
      });
    }
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (unsigned w = 0; w < worker_count(); ++w) {
    pool.emplace_back([&] {
      for (std::size_t j; (j = next++) < jobs.size();) jobs[j]();
    });
  }
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < pcs.size(); ++i) {
    for (const auto& [qs, rds] : samples[i]) {
      q[i] += qs / seeds;
      rd[i] += rds / seeds;
    }
  }
  out.require(q[0] >= 0.6, "Q at p_c=0.01 " + fmt(q[0]));
  for (std::size_t i = 1; i < pcs.size(); ++i) {
    out.require(q[i] < q[i - 1], "Q not decreasing at p_c=" + fmt(pcs[i], 2));
    out.require(rd[i] < rd[i - 1], "RD not decreasing at p_c=" + fmt(pcs[i], 2));
  }
  out.detail << " Q";
  for (double v : q) out.detail << ' ' << fmt(v);
  out.detail << ", RD";
  for (double v : rd) out.detail << ' ' << fmt(v);
}

Graph network_five(std::uint64_t seed) {
  return generate({.n = 1000, .m = 2, .c = 10, .p_t = 1.0, .p_c = 0.01, .seed = seed}).graph;
}

void per_community_structure(Outcome& out) {
  std::vector<int> counts;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = network_five(seed);
    int passing = 0, eligible = 0;
    for (const auto& s : per_community_stats(g, Partition::from_labels(g), 10, 2)) {
      if (s.size < 30) continue;
      ++eligible;
      passing += s.alpha && *s.alpha >= 1.8 && *s.alpha <= 3.3 && s.clustering >= 0.45;
    }
    out.require(eligible >= 8, "seed " + std::to_string(seed) + " has " +
                                   std::to_string(eligible) + " communities of >= 30 nodes");
    counts.push_back(passing);
  }
  std::sort(counts.begin(), counts.end());
  out.require(counts[2] >= 8, "median passing count " + std::to_string(counts[2]));
  out.detail << " passing communities per seed (sorted):";
  for (int c : counts) out.detail << ' ' << c;
}

void hierarchy(Outcome& out) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = network_five(seed);
    double best = -1;
    for (const auto& s : subcluster(g, Partition::from_labels(g), 10)) {
      if (s.partition.group_count() >= 2) best = std::max(best, s.modularity);
    }
    out.require(best > 0.2, "seed " + std::to_string(seed) + " best sub-Q " + fmt(best));
    out.detail << " seed " << seed << " sub-Q " << fmt(best) << ';';
  }
}

void metric_oracles(Outcome& out) {
  const Graph tt = two_triangles();
  const auto halves = Partition::from_assignment({0, 0, 0, 1, 1, 1});
  out.require(std::abs(modularity(tt, halves) - 5.0 / 14) < 1e-12, "Q two triangles");
  out.require(std::abs(relative_density(tt, halves) - 0.75) < 1e-12, "RD two triangles");
  // Hand count: local values 2/3, 1, 2/3, 1, so the mean is 5/6.
  const Graph kite = cycle4_with_diagonal();
  out.require(std::abs(avg_clustering(kite) - 5.0 / 6) < 1e-12 &&
                  std::abs(avg_clustering(kite) - reference_avg_clustering(kite)) < 1e-12,
              "CC 4-cycle plus diagonal " + fmt(avg_clustering(kite), 6));
  out.require(std::abs(avg_path_length(star(5)) - 1.6) < 1e-12, "APL star");
  const std::vector<std::size_t> sample{2, 2, 4, 8};
  const double hand = 1 + 4 / (std::log(1.0) + std::log(1.0) + std::log(2.0) + std::log(4.0));
  out.require(std::abs(fit_alpha(sample, 2, 0.0) - hand) < 1e-9, "alpha hand formula");

  RngStream rng(1);
  int optimal = 0;
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + rng.uniform_below(5);
    const Graph g = random_connected_graph(n, 0.5, rng);
    const double best = exhaustive_best_modularity(g);
    const double found = detect_communities(g).modularity;
    if (found >= best - 1e-12) {
      ++optimal;
    } else {
      worst = std::max(worst, best - found);
    }
  }
  out.require(optimal == 50, "detection below optimum on " + std::to_string(50 - optimal) +
                                 " graphs, worst gap " + fmt(worst, 4));
  out.detail << " detection optimal on " << optimal << "/50 small graphs";
}

void determinism(Outcome& out) {
  std::istringstream table_text("1,300,2,4,0.5,0.1\n2,300,3,5,1.0,0.5\n");
  const auto table = read_table(table_text);
  for (int trial = 0; trial < 10; ++trial) {
    const GenParams p{.n = 2000, .m = 1 + static_cast<std::size_t>(trial % 3), .c = 8,
                      .p_t = 0.7, .p_c = 0.2, .seed = 77 + static_cast<std::uint64_t>(trial)};
    out.require(edge_list_string(generate(p).graph, p) == edge_list_string(generate(p).graph, p),
                "edge list trial " + std::to_string(trial));
    ExperimentOptions options;
    options.replicates = 2;
    options.base_seed = static_cast<std::uint64_t>(trial);
    std::ostringstream a, b;
    write_experiment_csv(a, run_experiment(table, options));
    options.jobs = 2;
    write_experiment_csv(b, run_experiment(table, options));
    out.require(a.str() == b.str(), "experiment CSV trial " + std::to_string(trial));
  }
  out.detail << " 10 trials";
}

void scaling(Outcome& out) {
  const std::vector<std::pair<std::size_t, double>> limits{
      {10000, 2.0}, {100000, 60.0}, {1000000, 1800.0}};
  for (const auto& [n, limit] : limits) {
    const auto start = std::chrono::steady_clock::now();
    const Graph g = generate({.n = n, .m = 2, .c = 10, .p_t = 1.0, .p_c = 0.01, .seed = 1},
                             {.record_trace = false})
                        .graph;
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(g.node_count() == n, "n=" + std::to_string(n) + " node count");
    out.require(seconds <= limit, "n=" + std::to_string(n) + " took " + fmt(seconds) + " s");
    out.detail << " n=" << n << ' ' << fmt(seconds) << " s;";
  }
}

void degenerate_reductions(Outcome& out) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = generate({.n = 10000, .m = 1, .c = 1, .p_t = 0, .p_c = 0, .seed = seed},
                             {.record_trace = false})
                        .graph;
    const double alpha = fit_alpha(degrees(g), default_x_min(1));
    const double cc = avg_clustering(g);
    out.require(alpha >= 2.3 && alpha <= 3.5, "PA alpha " + fmt(alpha));
    out.require(cc < 0.05, "PA CC " + fmt(cc));
    out.detail << " PA seed " << seed << " alpha " << fmt(alpha) << " CC " << fmt(cc) << ';';
  }
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const double cc = avg_clustering(generate_holme_kim(10000, 2, 1.0, seed));
    out.require(cc >= 0.55, "triad CC " + fmt(cc));
    out.detail << " triad seed " << seed << " CC " << fmt(cc) << ';';
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"construction invariants", construction_invariants},
      {"APL band", apl_band},
      {"CC bands", cc_bands},
      {"alpha band", alpha_band},
      {"community quality and p_c trend", community_trend},
      {"per-community structure", per_community_structure},
      {"hierarchy", hierarchy},
      {"metric oracles", metric_oracles},
      {"determinism", determinism},
      {"scaling", scaling},
      {"degenerate reductions", degenerate_reductions},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !out.pass;
    std::printf("criterion %2zu %s: %s (%.1f s)%s\n", i + 1, out.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), seconds, out.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
