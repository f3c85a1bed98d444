#ifndef TUNENET_EXPERIMENT_HPP
#define TUNENET_EXPERIMENT_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tunenet/generator.hpp"
#include "tunenet/metrics.hpp"

namespace tunenet {

struct ExperimentConfig {
  int key = 0;
  GenParams params;  // seed is ignored; replicates derive their own
};

// The 32 reference configurations: n in {1000, 10000} x c in {10, 20} x
// p_t in {0.5, 1.0} x p_c in {0.01, 0.1, 0.5, 1.0}, m = 2, keyed 1..32.
const std::vector<ExperimentConfig>& reference_table();

// CSV rows "key,n,m,c,p_t,p_c"; '#' lines and a leading header are skipped.
std::vector<ExperimentConfig> read_table(std::istream& in);

// splitmix64(base ^ splitmix64((key << 32) | replicate))
std::uint64_t replicate_seed(std::uint64_t base_seed, int key,
                             std::size_t replicate);

struct ExperimentOptions {
  std::size_t replicates = 5;
  unsigned jobs = 1;
  std::uint64_t base_seed = 0;
  std::optional<AplMode> apl_mode;  // per-graph automatic when unset
  // Called once per finished replicate, possibly from worker threads.
  std::function<void(const std::string&)> log;
};

/// Mean metrics over the successful replicates of one configuration.
struct ExperimentRow {
  int key = 0;
  GenParams params;
  std::size_t replicates = 0;
  std::size_t failures = 0;
  std::vector<std::string> errors;
  double nodes = 0, edges = 0;
  double apl = 0, cc = 0, alpha = 0, q = 0, rd = 0;
};

// Rows come back in table order regardless of scheduling.
std::vector<ExperimentRow> run_experiment(const std::vector<ExperimentConfig>& table,
                                          const ExperimentOptions& options);

inline constexpr std::string_view kExperimentCsvHeader =
    "key,n,m,c,p_t,p_c,replicates,failures,nodes,edges,apl,cc,alpha,q,rd";
void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

struct BenchRow {
  std::size_t n = 0;
  std::size_t edges = 0;
  double seconds = 0.0;  // median over repeats
};

inline constexpr std::string_view kBenchCsvHeader = "n,edges,seconds";

// Times generate() (without trace) once per size and repeat.
std::vector<BenchRow> run_bench(const std::vector<std::size_t>& sizes,
                                const GenParams& base, std::size_t repeats = 1);
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace tunenet

#endif  // TUNENET_EXPERIMENT_HPP
