#include "tunenet/analysis.hpp"

#include <stdexcept>

#include "tunenet/community.hpp"

namespace tunenet {
namespace {

template <typename T>
nlohmann::json optional_json(const std::optional<T>& value) {
  return value ? nlohmann::json(*value) : nlohmann::json(nullptr);
}

}  // namespace

MetricsReport analyze(const Graph& g, const Partition* ground_truth,
                      const AnalyzeOptions& options) {
  if (g.empty()) throw std::invalid_argument("cannot analyze an empty graph");
  if (ground_truth && ground_truth->node_count() != g.node_count()) {
    throw std::invalid_argument("ground-truth partition does not cover the graph");
  }
  MetricsReport report;
  report.node_count = g.node_count();
  report.edge_count = g.edge_count();

  if (options.path_length) {
    const AplMode mode = options.apl_mode.value_or(AplMode::automatic(g.node_count()));
    RngStream rng(options.seed);
    report.avg_path_length = avg_path_length(g, mode, &rng, options.threads);
    report.apl_method = mode.describe();
  }

  report.avg_clustering = avg_clustering(g);
  report.transitivity = transitivity(g);
  report.x_min = options.x_min.value_or(default_x_min(1));
  try {
    report.alpha = fit_alpha(degrees(g), report.x_min);
  } catch (const std::domain_error&) {
    report.alpha.reset();
  }

  std::optional<Partition> detected;
  if (options.communities && g.edge_count() > 0) {
    detected = detect_communities(g).partition;
    report.detected_groups = detected->group_count();
    report.modularity = modularity(g, *detected);
    report.relative_density = relative_density(g, *detected);
  }
  if (ground_truth && g.edge_count() > 0) {
    GroundTruthSummary truth;
    truth.groups = ground_truth->group_count();
    truth.modularity = modularity(g, *ground_truth);
    truth.relative_density = relative_density(g, *ground_truth);
    if (detected) {
      const auto agreement = compare_partitions(*detected, *ground_truth);
      truth.nmi = agreement.nmi;
      truth.ari = agreement.ari;
    }
    report.ground_truth = truth;
  }

  const Partition* source = ground_truth ? ground_truth : (detected ? &*detected : nullptr);
  if (source && options.top_k > 0) {
    report.per_community_source = ground_truth ? "ground_truth" : "detected";
    report.per_community = per_community_stats(g, *source, options.top_k, report.x_min);
  }
  return report;
}

nlohmann::json to_json(const CommunityStats& stats) {
  return {{"group", stats.group},
          {"size", stats.size},
          {"alpha", optional_json(stats.alpha)},
          {"clustering", stats.clustering}};
}

nlohmann::json to_json(const MetricsReport& r) {
  nlohmann::json j;
  j["node_count"] = r.node_count;
  j["edge_count"] = r.edge_count;
  j["avg_path_length"] = optional_json(r.avg_path_length);
  j["apl_method"] = r.apl_method;
  j["avg_clustering"] = r.avg_clustering;
  j["transitivity"] = r.transitivity;
  j["alpha"] = optional_json(r.alpha);
  j["x_min"] = r.x_min;
  j["modularity"] = optional_json(r.modularity);
  j["relative_density"] = optional_json(r.relative_density);
  j["detected_groups"] = r.detected_groups;
  if (r.ground_truth) {
    j["ground_truth"] = {{"groups", r.ground_truth->groups},
                         {"modularity", r.ground_truth->modularity},
                         {"relative_density", r.ground_truth->relative_density},
                         {"nmi", r.ground_truth->nmi},
                         {"ari", r.ground_truth->ari}};
  } else {
    j["ground_truth"] = nullptr;
  }
  j["per_community_source"] = r.per_community_source;
  j["per_community"] = nlohmann::json::array();
  for (const auto& s : r.per_community) j["per_community"].push_back(to_json(s));
  return j;
}

}  // namespace tunenet
