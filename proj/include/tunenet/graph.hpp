#ifndef TUNENET_GRAPH_HPP
#define TUNENET_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace tunenet {

// Dense node index, assigned in insertion order and never reused.
using NodeId = std::uint32_t;
// Ground-truth community label in [0, c).
using CommunityId = std::int32_t;

using Edge = std::pair<NodeId, NodeId>;

/// Undirected simple graph with optional per-node community labels.
///
/// Adjacency lists are kept sorted, so membership tests are O(log d) and
/// neighbor iteration order is ascending id (a pure function of content).
/// Once populated the graph is safe to read from several threads.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t node_count);

  NodeId add_node(std::optional<CommunityId> label = std::nullopt);

  // Returns false (and leaves the graph untouched) if the edge exists.
  // Throws std::invalid_argument on self-loops, std::out_of_range on
  // unknown ids.
  bool add_edge(NodeId u, NodeId v);

  bool has_edge(NodeId u, NodeId v) const;
  std::size_t degree(NodeId u) const;
  std::span<const NodeId> neighbors(NodeId u) const;

  std::optional<CommunityId> label(NodeId u) const;
  // Labels are write-once: relabeling a labeled node throws std::logic_error.
  void set_label(NodeId u, CommunityId label);
  // True when every node carries a label (and the graph is non-empty).
  bool fully_labeled() const;

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  bool empty() const { return adjacency_.empty(); }

  // Canonical edge list: u < v, sorted by (u, v).
  std::vector<Edge> edges() const;

  bool is_connected() const;

  // Subgraph induced by `nodes`; node i of the result is nodes[i].
  // Labels are carried over.
  Graph induced_subgraph(std::span<const NodeId> nodes) const;

  // Full audit of the structural invariants; throws std::logic_error
  // describing the first violation.
  void check_invariants() const;

  friend bool operator==(const Graph& a, const Graph& b) = default;

 private:
  void check_node(NodeId u) const;

  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<CommunityId> labels_;  // kUnlabeled when absent
  std::size_t edge_count_ = 0;

  static constexpr CommunityId kUnlabeled = -1;
};

enum class PartitionKind { kGroundTruth, kDetected };

/// Assignment of nodes to non-empty groups, with group-indexed member lists.
class Partition {
 public:
  Partition() = default;

  // Group ids are compacted to 0..k-1 preserving the order of the
  // original ids, so an already-dense assignment keeps its numbering.
  static Partition from_assignment(std::vector<std::uint32_t> assignment,
                                   PartitionKind kind = PartitionKind::kDetected);

  // Ground-truth partition from node labels; throws if any node is unlabeled.
  static Partition from_labels(const Graph& g);

  static Partition singletons(std::size_t node_count,
                              PartitionKind kind = PartitionKind::kDetected);
  static Partition single_group(std::size_t node_count,
                                PartitionKind kind = PartitionKind::kDetected);

  std::size_t node_count() const { return assignment_.size(); }
  std::size_t group_count() const { return groups_.size(); }
  PartitionKind kind() const { return kind_; }

  std::uint32_t group_of(NodeId u) const { return assignment_.at(u); }
  std::span<const NodeId> members(std::size_t group) const {
    return groups_.at(group);
  }
  const std::vector<std::uint32_t>& assignment() const { return assignment_; }

  // Group indices ordered by size, largest first; ties by ascending index.
  std::vector<std::size_t> groups_by_size() const;

  friend bool operator==(const Partition& a, const Partition& b) = default;

 private:
  std::vector<std::uint32_t> assignment_;
  std::vector<std::vector<NodeId>> groups_;
  PartitionKind kind_ = PartitionKind::kDetected;
};

}  // namespace tunenet

#endif  // TUNENET_GRAPH_HPP
