#include "tunenet/generator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tunenet {
namespace {

constexpr std::size_t kAnchorRedrawCap = 10'000;
constexpr std::size_t kInterEdgeAttempts = 100;

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " +
                                std::to_string(p));
  }
}

}  // namespace

void GenParams::validate() const {
  if (c < 1) throw std::invalid_argument("c must be at least 1");
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (n < 3 * c) {
    throw std::invalid_argument("n must be at least 3c (n=" + std::to_string(n) +
                                ", c=" + std::to_string(c) + ")");
  }
  if (n > std::numeric_limits<NodeId>::max()) {
    throw std::invalid_argument("n exceeds the node id range");
  }
  check_probability(p_t, "p_t");
  check_probability(p_c, "p_c");
}

std::size_t GenTrace::total_shortfall() const {
  std::size_t total = 0;
  for (const auto& s : steps) total += s.shortfall;
  return total;
}

std::size_t GenTrace::inter_edges_added() const {
  std::size_t total = 0;
  for (const auto& s : steps) total += s.inter_edge.has_value();
  return total;
}

std::size_t GenTrace::inter_edges_skipped() const {
  std::size_t total = 0;
  for (const auto& s : steps) total += s.inter_attempted && !s.inter_edge;
  return total;
}

Graph GenTrace::replay() const {
  Graph g;
  for (std::size_t k = 0; k < community_count; ++k) {
    for (int i = 0; i < 3; ++i) g.add_node(static_cast<CommunityId>(k));
  }
  for (const auto& [u, v] : seed_edges) g.add_edge(u, v);
  for (const auto& step : steps) {
    const NodeId u = g.add_node(step.community);
    if (u != step.node) throw std::logic_error("trace node ids out of order");
    g.add_edge(u, step.anchor);
    for (NodeId v : step.extra_targets) g.add_edge(u, v);
    if (step.inter_edge) g.add_edge(step.inter_edge->first, step.inter_edge->second);
  }
  return g;
}

GrowthProcess::GrowthProcess(const GenParams& params, bool record_trace)
    : params_(params), record_trace_(record_trace), rng_(params.seed) {
  params_.validate();
  trace_.community_count = params_.c;
}

void GrowthProcess::connect(NodeId u, NodeId v) {
  if (!graph_.add_edge(u, v)) {
    throw std::logic_error("generator attempted a duplicate edge");
  }
  index_.record_edge(u, graph_.label(u), v, graph_.label(v));
}

void GrowthProcess::seed_phase() {
  if (!graph_.empty()) throw std::logic_error("seed_phase requires an empty graph");
  const std::size_t c = params_.c;
  for (std::size_t k = 0; k < c; ++k) {
    const auto label = static_cast<CommunityId>(k);
    const NodeId a = graph_.add_node(label);
    const NodeId b = graph_.add_node(label);
    const NodeId d = graph_.add_node(label);
    for (NodeId u : {a, b, d}) index_.record_node(u, label);
    connect(a, b);
    connect(a, d);
    connect(b, d);
    if (record_trace_) {
      trace_.seed_edges.insert(trace_.seed_edges.end(), {{a, b}, {a, d}, {b, d}});
    }
  }
  // Endpoints of the linking edges are uniform over each triad.
  for (std::size_t a = 0; a < c; ++a) {
    for (std::size_t b = a + 1; b < c; ++b) {
      const auto u = static_cast<NodeId>(3 * a + rng_.uniform_below(3));
      const auto v = static_cast<NodeId>(3 * b + rng_.uniform_below(3));
      connect(u, v);
      if (record_trace_) trace_.seed_edges.emplace_back(u, v);
    }
  }
}

NodeId GrowthProcess::select_anchor(std::optional<CommunityId> forbidden) {
  if (!forbidden) return pa_select_global(index_, rng_);
  for (std::size_t i = 0; i < kAnchorRedrawCap; ++i) {
    const NodeId u = pa_select_global(index_, rng_);
    if (graph_.label(u) != forbidden) return u;
  }
  // Exact fallback: pick a community by token mass, then a token inside it.
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < index_.community_count(); ++k) {
    if (static_cast<CommunityId>(k) == *forbidden) continue;
    total += index_.community_tokens(static_cast<CommunityId>(k)).size();
  }
  if (total == 0) {
    throw NoEligibleCandidate("no community other than the forbidden one has edges");
  }
  std::uint64_t r = rng_.uniform_below(total);
  for (std::size_t k = 0; k < index_.community_count(); ++k) {
    const auto id = static_cast<CommunityId>(k);
    if (id == *forbidden) continue;
    const auto tokens = index_.community_tokens(id);
    if (r < tokens.size()) return tokens[r];
    r -= tokens.size();
  }
  throw std::logic_error("anchor fallback ran past the token mass");
}

std::pair<NodeId, CommunityId> GrowthProcess::attach_new_node(
    std::optional<CommunityId> forbidden) {
  if (graph_.empty()) throw std::logic_error("attach_new_node on an empty graph");
  GenStep step;
  step.anchor = select_anchor(forbidden);
  step.community = *graph_.label(step.anchor);
  step.node = graph_.add_node(step.community);
  index_.record_node(step.node, step.community);
  connect(step.node, step.anchor);

  if (params_.m > 1) {
    const bool triad = bernoulli(params_.p_t, rng_);
    step.branch = triad ? AttachBranch::kTriad : AttachBranch::kCommunity;
    // Everything already adjacent to the new node, plus the node itself.
    std::vector<NodeId> exclude{step.node, step.anchor};
    for (std::size_t i = 1; i < params_.m; ++i) {
      std::optional<NodeId> target;
      if (triad) {
        try {
          target = pa_select_neighbor(graph_, index_, step.anchor,
                                      step.community, exclude, rng_);
        } catch (const NoEligibleCandidate&) {
          ++step.triad_fallbacks;
        }
      }
      if (!target) {
        try {
          target = pa_select_in_community(graph_, index_, step.community, exclude,
                                          rng_);
        } catch (const NoEligibleCandidate&) {
          step.shortfall = static_cast<std::uint32_t>(params_.m - i);
          break;
        }
      }
      connect(step.node, *target);
      exclude.push_back(*target);
      step.extra_targets.push_back(*target);
    }
  }

  const auto result = std::make_pair(step.node, step.community);
  if (record_trace_) trace_.steps.push_back(std::move(step));
  return result;
}

bool GrowthProcess::inter_cluster_step(CommunityId a, CommunityId b) {
  if (a == b) throw std::invalid_argument("inter_cluster_step needs two communities");
  if (!bernoulli(params_.p_c, rng_)) return false;
  GenStep* step =
      record_trace_ && !trace_.steps.empty() ? &trace_.steps.back() : nullptr;
  if (step) step->inter_attempted = true;
  for (std::size_t attempt = 0; attempt < kInterEdgeAttempts; ++attempt) {
    const NodeId u = pa_select_in_community(graph_, index_, a, {}, rng_);
    const NodeId v = pa_select_in_community(graph_, index_, b, {}, rng_);
    if (!graph_.has_edge(u, v)) {
      connect(u, v);
      if (step) step->inter_edge = Edge{u, v};
      return true;
    }
  }
  return false;
}

GenResult GrowthProcess::finish() && {
  return GenResult{std::move(graph_), std::move(trace_)};
}

GenResult generate(const GenParams& params, const GenOptions& options) {
  params.validate();
  GrowthProcess process(params, options.record_trace);
  process.seed_phase();
  const bool alternate = params.c > 1;
  std::optional<CommunityId> previous;
  while (process.graph().node_count() < params.n) {
    const auto [node, community] =
        process.attach_new_node(alternate ? previous : std::nullopt);
    if (alternate && previous) process.inter_cluster_step(*previous, community);
    previous = community;
  }
  return std::move(process).finish();
}

Graph generate_holme_kim(std::size_t n, std::size_t m, double p_t,
                         std::uint64_t seed) {
  GenParams params{.n = n, .m = m, .c = 1, .p_t = p_t, .p_c = 0.0, .seed = seed};
  return generate(params, {.record_trace = false}).graph;
}

}  // namespace tunenet
