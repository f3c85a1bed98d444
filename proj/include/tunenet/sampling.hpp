#ifndef TUNENET_SAMPLING_HPP
#define TUNENET_SAMPLING_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tunenet/graph.hpp"
#include "tunenet/rng.hpp"

namespace tunenet {

/// Raised when a constrained preferential-attachment draw has no candidate.
class NoEligibleCandidate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degree-token multiset: node u appears degree(u) times, globally and in the
/// token list of its community. A uniform draw over tokens is a
/// degree-proportional draw over nodes.
///
/// The index does not observe the graph; the owner calls record_edge() after
/// every successful Graph::add_edge().
class DegreeIndex {
 public:
  DegreeIndex() = default;

  static DegreeIndex from_graph(const Graph& g);

  // Registers a node as a member of its community (for exact enumeration).
  void record_node(NodeId u, std::optional<CommunityId> community);
  void record_edge(NodeId u, std::optional<CommunityId> cu, NodeId v,
                   std::optional<CommunityId> cv);

  std::span<const NodeId> tokens() const { return tokens_; }
  std::span<const NodeId> community_tokens(CommunityId c) const;
  std::span<const NodeId> community_members(CommunityId c) const;
  std::size_t community_count() const { return community_tokens_.size(); }

 private:
  void ensure_community(CommunityId c);

  std::vector<NodeId> tokens_;
  std::vector<std::vector<NodeId>> community_tokens_;
  std::vector<std::vector<NodeId>> community_members_;
};

// True with probability p. Throws std::invalid_argument for p outside [0,1].
bool bernoulli(double p, RngStream& rng);

// Node u with probability degree(u) / sum of degrees.
NodeId pa_select_global(const DegreeIndex& index, RngStream& rng);

// Degree-proportional draw among members of `community` not in `exclude`.
// Rejection-samples the community token list (up to 50 tries per member),
// then falls back to exact enumeration.
NodeId pa_select_in_community(const Graph& g, const DegreeIndex& index,
                              CommunityId community,
                              std::span<const NodeId> exclude, RngStream& rng);

// Degree-proportional draw among neighbors of u labeled `community` and not
// in `exclude`. Low-degree nodes enumerate their neighbors; for hubs the
// community token list is rejection-sampled (up to degree(u) tries) before
// falling back to enumeration. Both paths sample the same distribution.
NodeId pa_select_neighbor(const Graph& g, const DegreeIndex& index, NodeId u,
                          CommunityId community, std::span<const NodeId> exclude,
                          RngStream& rng);

}  // namespace tunenet

#endif  // TUNENET_SAMPLING_HPP
