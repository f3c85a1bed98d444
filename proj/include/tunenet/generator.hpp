#ifndef TUNENET_GENERATOR_HPP
#define TUNENET_GENERATOR_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tunenet/graph.hpp"
#include "tunenet/rng.hpp"
#include "tunenet/sampling.hpp"

namespace tunenet {

/// The five model parameters plus the RNG seed.
struct GenParams {
  std::size_t n = 1000;  // target node count, >= 3c
  std::size_t m = 2;     // edges per new node
  std::size_t c = 10;    // seed triads (minimum community count)
  double p_t = 1.0;      // probability of triad formation
  double p_c = 0.01;     // probability of an inter-cluster edge per iteration
  std::uint64_t seed = 0;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;

  friend bool operator==(const GenParams&, const GenParams&) = default;
};

// Which rule picked the new node's m-1 extra targets.
enum class AttachBranch {
  kNone,       // m == 1
  kTriad,      // neighbors of the anchor
  kCommunity,  // any node of the anchor's community
};

/// One node-addition iteration.
struct GenStep {
  NodeId node = 0;
  NodeId anchor = 0;
  CommunityId community = 0;
  AttachBranch branch = AttachBranch::kNone;
  std::vector<NodeId> extra_targets;
  // Extra edges from the triad branch that fell back to the community rule.
  std::uint32_t triad_fallbacks = 0;
  // Extra edges that could not be placed (too few distinct candidates).
  std::uint32_t shortfall = 0;
  bool inter_attempted = false;  // the P_c coin came up heads
  std::optional<Edge> inter_edge;
};

/// Full record of a generation run; replay() rebuilds the graph from it.
struct GenTrace {
  std::size_t community_count = 0;
  std::vector<Edge> seed_edges;  // seed phase, after the 3c labeled nodes
  std::vector<GenStep> steps;

  std::size_t total_shortfall() const;
  std::size_t inter_edges_added() const;
  // Iterations where the coin came up heads but no new pair was found.
  std::size_t inter_edges_skipped() const;

  Graph replay() const;
};

struct GenResult {
  Graph graph;
  GenTrace trace;
};

/// Mutable state of one generation job: the growing graph, its degree index
/// and the random stream. Each public member is one stage of the growth
/// process; generate() strings them together.
class GrowthProcess {
 public:
  explicit GrowthProcess(const GenParams& params, bool record_trace = true);

  // c triangles labeled 0..c-1, plus one edge between uniformly chosen
  // members of every pair of triangles. Requires an empty graph.
  void seed_phase();

  // Adds one node attached to a degree-proportional anchor whose community
  // differs from `forbidden`, then up to m-1 further edges inside the
  // anchor's community. Returns (new node, its community).
  std::pair<NodeId, CommunityId> attach_new_node(
      std::optional<CommunityId> forbidden);

  // With probability p_c, joins degree-proportional members of two distinct
  // communities. Returns whether an edge was added.
  bool inter_cluster_step(CommunityId a, CommunityId b);

  const Graph& graph() const { return graph_; }
  const DegreeIndex& index() const { return index_; }
  const GenTrace& trace() const { return trace_; }
  RngStream& rng() { return rng_; }

  GenResult finish() &&;

 private:
  NodeId select_anchor(std::optional<CommunityId> forbidden);
  void connect(NodeId u, NodeId v);

  GenParams params_;
  bool record_trace_;
  Graph graph_;
  DegreeIndex index_;
  RngStream rng_;
  GenTrace trace_;
};

struct GenOptions {
  // Traces cost O(n) extra memory; benchmarks switch them off.
  bool record_trace = true;
};

// Runs the full growth process. Throws std::invalid_argument on bad params.
GenResult generate(const GenParams& params, const GenOptions& options = {});

// Single-community variant (c = 1): triad-formation growth without
// community structure.
Graph generate_holme_kim(std::size_t n, std::size_t m, double p_t,
                         std::uint64_t seed);

}  // namespace tunenet

#endif  // TUNENET_GENERATOR_HPP
