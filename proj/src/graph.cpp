#include "tunenet/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tunenet {

Graph::Graph(std::size_t node_count)
    : adjacency_(node_count), labels_(node_count, kUnlabeled) {}

NodeId Graph::add_node(std::optional<CommunityId> label) {
  if (label && *label < 0) {
    throw std::invalid_argument("community label must be non-negative");
  }
  const auto id = static_cast<NodeId>(adjacency_.size());
  adjacency_.emplace_back();
  labels_.push_back(label.value_or(kUnlabeled));
  return id;
}

void Graph::check_node(NodeId u) const {
  if (u >= adjacency_.size()) {
    throw std::out_of_range("unknown node id " + std::to_string(u));
  }
}

bool Graph::add_edge(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  if (u == v) {
    throw std::invalid_argument("self-loop on node " + std::to_string(u));
  }
  auto& au = adjacency_[u];
  auto pos_u = std::lower_bound(au.begin(), au.end(), v);
  if (pos_u != au.end() && *pos_u == v) return false;
  au.insert(pos_u, v);
  auto& av = adjacency_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++edge_count_;
  return true;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  // Search the shorter list.
  if (adjacency_[u].size() > adjacency_[v].size()) std::swap(u, v);
  const auto& a = adjacency_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

std::size_t Graph::degree(NodeId u) const {
  check_node(u);
  return adjacency_[u].size();
}

std::span<const NodeId> Graph::neighbors(NodeId u) const {
  check_node(u);
  return adjacency_[u];
}

std::optional<CommunityId> Graph::label(NodeId u) const {
  check_node(u);
  if (labels_[u] == kUnlabeled) return std::nullopt;
  return labels_[u];
}

void Graph::set_label(NodeId u, CommunityId label) {
  check_node(u);
  if (label < 0) {
    throw std::invalid_argument("community label must be non-negative");
  }
  if (labels_[u] != kUnlabeled && labels_[u] != label) {
    throw std::logic_error("node " + std::to_string(u) + " is already labeled");
  }
  labels_[u] = label;
}

bool Graph::fully_labeled() const {
  return !labels_.empty() &&
         std::none_of(labels_.begin(), labels_.end(),
                      [](CommunityId l) { return l == kUnlabeled; });
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (NodeId v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

bool Graph::is_connected() const {
  const std::size_t n = adjacency_.size();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t visited = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : adjacency_[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++visited;
        stack.push_back(v);
      }
    }
  }
  return visited == n;
}

Graph Graph::induced_subgraph(std::span<const NodeId> nodes) const {
  constexpr NodeId kAbsent = static_cast<NodeId>(-1);
  std::vector<NodeId> local(adjacency_.size(), kAbsent);
  Graph sub;
  for (NodeId u : nodes) {
    check_node(u);
    if (local[u] != kAbsent) {
      throw std::invalid_argument("duplicate node in induced_subgraph");
    }
    local[u] = sub.add_node(label(u));
  }
  for (NodeId u : nodes) {
    for (NodeId v : adjacency_[u]) {
      if (local[v] != kAbsent && u < v) sub.add_edge(local[u], local[v]);
    }
  }
  return sub;
}

void Graph::check_invariants() const {
  std::size_t degree_sum = 0;
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    const auto& a = adjacency_[u];
    degree_sum += a.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] >= adjacency_.size()) {
        throw std::logic_error("dangling neighbor of " + std::to_string(u));
      }
      if (a[i] == u) throw std::logic_error("self-loop at " + std::to_string(u));
      if (i > 0 && a[i - 1] >= a[i]) {
        throw std::logic_error("unsorted or duplicate adjacency at " +
                               std::to_string(u));
      }
      const auto& b = adjacency_[a[i]];
      if (!std::binary_search(b.begin(), b.end(), u)) {
        throw std::logic_error("asymmetric edge " + std::to_string(u) + "-" +
                               std::to_string(a[i]));
      }
    }
  }
  if (degree_sum != 2 * edge_count_) {
    throw std::logic_error("degree sum does not match edge count");
  }
}

Partition Partition::from_assignment(std::vector<std::uint32_t> assignment,
                                     PartitionKind kind) {
  Partition p;
  p.kind_ = kind;
  std::vector<std::uint32_t> ids(assignment);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const bool dense = ids.empty() || ids.back() + 1 == ids.size();
  if (!dense) {
    for (auto& a : assignment) {
      a = static_cast<std::uint32_t>(
          std::lower_bound(ids.begin(), ids.end(), a) - ids.begin());
    }
  }
  p.groups_.resize(ids.size());
  for (NodeId u = 0; u < assignment.size(); ++u) {
    p.groups_[assignment[u]].push_back(u);
  }
  p.assignment_ = std::move(assignment);
  return p;
}

Partition Partition::from_labels(const Graph& g) {
  std::vector<std::uint32_t> assignment(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto l = g.label(u);
    if (!l) {
      throw std::invalid_argument("node " + std::to_string(u) +
                                  " has no community label");
    }
    assignment[u] = static_cast<std::uint32_t>(*l);
  }
  return from_assignment(std::move(assignment), PartitionKind::kGroundTruth);
}

Partition Partition::singletons(std::size_t node_count, PartitionKind kind) {
  std::vector<std::uint32_t> assignment(node_count);
  std::iota(assignment.begin(), assignment.end(), 0u);
  return from_assignment(std::move(assignment), kind);
}

Partition Partition::single_group(std::size_t node_count, PartitionKind kind) {
  return from_assignment(std::vector<std::uint32_t>(node_count, 0), kind);
}

std::vector<std::size_t> Partition::groups_by_size() const {
  std::vector<std::size_t> order(groups_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return groups_[a].size() > groups_[b].size();
  });
  return order;
}

}  // namespace tunenet
