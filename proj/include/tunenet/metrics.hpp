#ifndef TUNENET_METRICS_HPP
#define TUNENET_METRICS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tunenet/graph.hpp"
#include "tunenet/rng.hpp"

namespace tunenet {

class DisconnectedGraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mean over all nodes of the local clustering coefficient; nodes of degree
// < 2 count as 0. Throws std::invalid_argument on an empty graph.
double avg_clustering(const Graph& g);

// Local clustering coefficient of every node (degree < 2 gives 0).
std::vector<double> local_clustering(const Graph& g);

// Global transitivity: 3 * triangles / connected triples (0 if no triples).
double transitivity(const Graph& g);

std::size_t triangle_count(const Graph& g);

struct AplMode {
  enum class Kind { kExact, kSampled };
  Kind kind = Kind::kExact;
  std::size_t sources = 0;  // only for kSampled

  static AplMode exact() { return {}; }
  static AplMode sampled(std::size_t k) { return {Kind::kSampled, k}; }
  // Exact up to 20,000 nodes, otherwise 1,000 sampled sources.
  static AplMode automatic(std::size_t node_count);

  // "exact" or "sampled(k)".
  std::string describe() const;
};

/// Mean shortest-path hop count by per-source BFS.
///
/// Exact mode averages over all node pairs. Sampled mode picks `sources`
/// distinct sources uniformly (without replacement) and averages their
/// distances to every other node, so sampling every node reproduces the
/// exact value. Per-source sums are integers, so the result does not depend
/// on `threads` (0 = hardware concurrency).
///
/// Throws DisconnectedGraphError if some pair is unreachable, and
/// std::invalid_argument for fewer than two nodes or a sampled mode without
/// an RngStream.
double avg_path_length(const Graph& g, AplMode mode = AplMode::exact(),
                       RngStream* rng = nullptr, unsigned threads = 1);

/// Power-law exponent by the approximate discrete maximum-likelihood
/// estimator  alpha = 1 + n / sum ln(x_i / (x_min - offset))  over the tail
/// x_i >= x_min. The default offset 0.5 is the usual discrete correction;
/// offset 0 gives the continuous estimator.
///
/// Throws std::domain_error if fewer than two values reach x_min or every
/// tail value equals x_min.
double fit_alpha(std::span<const std::size_t> values, std::size_t x_min,
                 double offset = 0.5);

// Degree sequence of g.
std::vector<std::size_t> degrees(const Graph& g);

// Smallest x_min used by default for a given m. The half-offset estimator
// collapses at x_min = 1, so the floor is 2.
std::size_t default_x_min(std::size_t m);

// Newman modularity of a partition. Throws on an edgeless graph or a
// partition that does not cover the graph.
double modularity(const Graph& g, const Partition& p);

// Mean over groups of internal / (internal + boundary) edges. Throws if a
// group has no incident edge.
double relative_density(const Graph& g, const Partition& p);

struct CommunityStats {
  std::size_t group = 0;
  std::size_t size = 0;
  std::optional<double> alpha;  // absent when the tail is degenerate
  double clustering = 0.0;
};

// Induced-subgraph clustering and within-group degree exponent for the
// top_k largest groups, largest first.
std::vector<CommunityStats> per_community_stats(const Graph& g,
                                                const Partition& p,
                                                std::size_t top_k,
                                                std::size_t x_min = 2);

}  // namespace tunenet

#endif  // TUNENET_METRICS_HPP
