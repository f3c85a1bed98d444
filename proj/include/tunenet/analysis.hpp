#ifndef TUNENET_ANALYSIS_HPP
#define TUNENET_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tunenet/graph.hpp"
#include "tunenet/metrics.hpp"

namespace tunenet {

struct GroundTruthSummary {
  std::size_t groups = 0;
  double modularity = 0.0;
  double relative_density = 0.0;
  // Agreement between the detected and the ground-truth partition.
  double nmi = 0.0;
  double ari = 0.0;
};

/// Everything the analysis pipeline measures on one graph. Modularity and
/// relative density refer to the detected partition; the ground-truth values
/// sit in `ground_truth` when labels were available.
struct MetricsReport {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::optional<double> avg_path_length;
  std::string apl_method = "skipped";
  double avg_clustering = 0.0;
  double transitivity = 0.0;
  std::optional<double> alpha;
  std::size_t x_min = 2;
  std::optional<double> modularity;
  std::optional<double> relative_density;
  std::size_t detected_groups = 0;
  std::optional<GroundTruthSummary> ground_truth;
  // "ground_truth" or "detected": the partition per_community was taken from.
  std::string per_community_source;
  std::vector<CommunityStats> per_community;
};

struct AnalyzeOptions {
  std::optional<AplMode> apl_mode;  // AplMode::automatic() when unset
  std::optional<std::size_t> x_min;  // default_x_min(1) when unset
  std::size_t top_k = 10;
  unsigned threads = 1;
  std::uint64_t seed = 0;  // sampled path-length sources
  bool path_length = true;
  bool communities = true;
};

// Throws DisconnectedGraphError when path lengths are requested on a
// disconnected graph.
MetricsReport analyze(const Graph& g, const Partition* ground_truth,
                      const AnalyzeOptions& options = {});

nlohmann::json to_json(const MetricsReport& report);
nlohmann::json to_json(const CommunityStats& stats);

}  // namespace tunenet

#endif  // TUNENET_ANALYSIS_HPP
