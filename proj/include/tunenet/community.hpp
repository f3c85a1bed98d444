#ifndef TUNENET_COMMUNITY_HPP
#define TUNENET_COMMUNITY_HPP

#include <cstdint>
#include <vector>

#include "tunenet/graph.hpp"

namespace tunenet {

struct GroupMerge {
  std::uint32_t kept = 0;      // surviving group (the smaller index)
  std::uint32_t absorbed = 0;
  double modularity = 0.0;     // after this merge
};

/// Every merge of the greedy agglomeration, from singletons until no two
/// groups share an edge.
struct MergeDendrogram {
  double initial_modularity = 0.0;
  std::vector<GroupMerge> merges;
  std::size_t cut = 0;  // merges applied in the returned partition
  double best_modularity = 0.0;

  double modularity_at(std::size_t level) const {
    return level == 0 ? initial_modularity : merges.at(level - 1).modularity;
  }
};

struct Detection {
  Partition partition;
  double modularity = 0.0;  // of `partition`
  MergeDendrogram dendrogram;
  std::size_t refinement_steps = 0;  // node moves and merges after the cut
};

/// Greedy agglomerative modularity maximization (Clauset-Newman-Moore).
///
/// Starts from singletons and repeatedly merges the adjacent pair with the
/// largest modularity gain; gains are compared as exact integers and ties go
/// to the lexicographically smallest (group, group) pair. The dendrogram is
/// cut at the first level of maximum modularity, then refined by single-node
/// moves and positive-gain merges until no step raises modularity. Groups are
/// numbered by their smallest node id. Throws std::invalid_argument on an
/// edgeless graph.
Detection detect_communities(const Graph& g);

struct Subclustering {
  std::size_t group = 0;  // index in the parent partition
  // Sub-partition over the group's members, in Partition::members() order.
  Partition partition;
  double modularity = 0.0;  // of the sub-partition on the induced subgraph
};

// Re-runs detection inside each of the top_k largest groups of p.
std::vector<Subclustering> subcluster(const Graph& g, const Partition& p,
                                      std::size_t top_k);

struct PartitionAgreement {
  double nmi = 0.0;  // 2 I(a;b) / (H(a) + H(b))
  double ari = 0.0;
};

// Throws std::invalid_argument if the partitions cover different node counts.
PartitionAgreement compare_partitions(const Partition& a, const Partition& b);

}  // namespace tunenet

#endif  // TUNENET_COMMUNITY_HPP
