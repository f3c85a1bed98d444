#include "tunenet/sampling.hpp"

#include <algorithm>
#include <string>

namespace tunenet {
namespace {

bool contains(std::span<const NodeId> set, NodeId u) {
  return std::find(set.begin(), set.end(), u) != set.end();
}

// Degree-weighted pick over an explicit candidate list.
NodeId weighted_pick(const Graph& g, std::span<const NodeId> candidates,
                     RngStream& rng) {
  std::uint64_t total = 0;
  for (NodeId v : candidates) total += g.degree(v);
  if (total == 0) throw NoEligibleCandidate("all candidates have degree zero");
  std::uint64_t r = rng.uniform_below(total);
  for (NodeId v : candidates) {
    const std::uint64_t d = g.degree(v);
    if (r < d) return v;
    r -= d;
  }
  return candidates.back();  // unreachable
}

}  // namespace

DegreeIndex DegreeIndex::from_graph(const Graph& g) {
  DegreeIndex index;
  for (NodeId u = 0; u < g.node_count(); ++u) index.record_node(u, g.label(u));
  for (const auto& [u, v] : g.edges()) {
    index.record_edge(u, g.label(u), v, g.label(v));
  }
  return index;
}

void DegreeIndex::ensure_community(CommunityId c) {
  if (c < 0) throw std::invalid_argument("negative community id");
  const auto needed = static_cast<std::size_t>(c) + 1;
  if (community_tokens_.size() < needed) {
    community_tokens_.resize(needed);
    community_members_.resize(needed);
  }
}

void DegreeIndex::record_node(NodeId u, std::optional<CommunityId> community) {
  if (!community) return;
  ensure_community(*community);
  community_members_[*community].push_back(u);
}

void DegreeIndex::record_edge(NodeId u, std::optional<CommunityId> cu, NodeId v,
                              std::optional<CommunityId> cv) {
  tokens_.push_back(u);
  tokens_.push_back(v);
  if (cu) {
    ensure_community(*cu);
    community_tokens_[*cu].push_back(u);
  }
  if (cv) {
    ensure_community(*cv);
    community_tokens_[*cv].push_back(v);
  }
}

std::span<const NodeId> DegreeIndex::community_tokens(CommunityId c) const {
  if (c < 0 || static_cast<std::size_t>(c) >= community_tokens_.size()) return {};
  return community_tokens_[c];
}

std::span<const NodeId> DegreeIndex::community_members(CommunityId c) const {
  if (c < 0 || static_cast<std::size_t>(c) >= community_members_.size()) return {};
  return community_members_[c];
}

bool bernoulli(double p, RngStream& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("probability " + std::to_string(p) +
                                " outside [0, 1]");
  }
  return rng.uniform01() < p;
}

NodeId pa_select_global(const DegreeIndex& index, RngStream& rng) {
  const auto tokens = index.tokens();
  if (tokens.empty()) throw NoEligibleCandidate("degree index is empty");
  return tokens[rng.uniform_below(tokens.size())];
}

NodeId pa_select_in_community(const Graph& g, const DegreeIndex& index,
                              CommunityId community,
                              std::span<const NodeId> exclude, RngStream& rng) {
  const auto tokens = index.community_tokens(community);
  if (tokens.empty()) {
    throw NoEligibleCandidate("community " + std::to_string(community) +
                              " has no incident edges");
  }
  const auto members = index.community_members(community);
  const std::size_t cap = 50 * std::max<std::size_t>(members.size(), 1);
  for (std::size_t attempt = 0; attempt < cap; ++attempt) {
    const NodeId u = tokens[rng.uniform_below(tokens.size())];
    if (!contains(exclude, u)) return u;
  }
  std::vector<NodeId> eligible;
  for (NodeId u : members) {
    if (g.degree(u) > 0 && !contains(exclude, u)) eligible.push_back(u);
  }
  if (eligible.empty()) {
    throw NoEligibleCandidate("no eligible node in community " +
                              std::to_string(community));
  }
  return weighted_pick(g, eligible, rng);
}

NodeId pa_select_neighbor(const Graph& g, const DegreeIndex& index, NodeId u,
                          CommunityId community, std::span<const NodeId> exclude,
                          RngStream& rng) {
  // Anchors are drawn by degree, and hub degree grows linearly with the
  // graph, so enumerating a hub's neighbors on every draw is quadratic.
  constexpr std::size_t kEnumerateBelow = 32;
  const std::size_t degree = g.degree(u);
  const auto tokens = index.community_tokens(community);
  if (degree >= kEnumerateBelow && !tokens.empty()) {
    for (std::size_t attempt = 0; attempt < degree; ++attempt) {
      const NodeId v = tokens[rng.uniform_below(tokens.size())];
      if (v != u && !contains(exclude, v) && g.has_edge(u, v)) return v;
    }
  }
  std::vector<NodeId> eligible;
  for (NodeId v : g.neighbors(u)) {
    if (g.label(v) == community && !contains(exclude, v)) eligible.push_back(v);
  }
  if (eligible.empty()) {
    throw NoEligibleCandidate("node " + std::to_string(u) +
                              " has no eligible neighbor");
  }
  return weighted_pick(g, eligible, rng);
}

}  // namespace tunenet
