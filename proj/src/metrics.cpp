#include "tunenet/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

namespace tunenet {
namespace {

// Closed neighbor pairs of every node.
std::vector<std::uint64_t> closed_pairs(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint64_t> links(n, 0);
  std::vector<char> mark(n, 0);
  for (NodeId u = 0; u < n; ++u) {
    const auto nu = g.neighbors(u);
    if (nu.size() < 2) continue;
    for (NodeId v : nu) mark[v] = 1;
    std::uint64_t count = 0;
    for (NodeId v : nu) {
      for (NodeId w : g.neighbors(v)) {
        if (w > v && mark[w]) ++count;
      }
    }
    for (NodeId v : nu) mark[v] = 0;
    links[u] = count;
  }
  return links;
}

void check_cover(const Graph& g, const Partition& p) {
  if (p.node_count() != g.node_count()) {
    throw std::invalid_argument("partition covers " +
                                std::to_string(p.node_count()) +
                                " nodes, graph has " +
                                std::to_string(g.node_count()));
  }
}

struct BfsTotals {
  std::uint64_t distance_sum = 0;
  bool disconnected = false;
};

// Sum of BFS distances from each of `sources` to all reachable nodes.
BfsTotals bfs_sums(const Graph& g, std::span<const NodeId> sources,
                   unsigned threads) {
  const std::size_t n = g.node_count();
  std::atomic<std::size_t> next{0};
  std::atomic<bool> disconnected{false};
  std::vector<std::uint64_t> partial(std::max(threads, 1u), 0);

  auto worker = [&](unsigned slot) {
    constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> dist(n, kUnseen);
    std::vector<NodeId> queue(n);
    std::uint64_t sum = 0;
    for (std::size_t i = next++; i < sources.size(); i = next++) {
      std::fill(dist.begin(), dist.end(), kUnseen);
      std::size_t head = 0, tail = 0;
      queue[tail++] = sources[i];
      dist[sources[i]] = 0;
      while (head < tail) {
        const NodeId u = queue[head++];
        const std::uint32_t du = dist[u] + 1;
        for (NodeId v : g.neighbors(u)) {
          if (dist[v] == kUnseen) {
            dist[v] = du;
            sum += du;
            queue[tail++] = v;
          }
        }
      }
      if (tail != n) {
        disconnected = true;
        return;
      }
    }
    partial[slot] = sum;
  };

  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  }
  return {std::accumulate(partial.begin(), partial.end(), std::uint64_t{0}),
          disconnected.load()};
}

}  // namespace

std::vector<double> local_clustering(const Graph& g) {
  const auto links = closed_pairs(g);
  std::vector<double> cc(g.node_count(), 0.0);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const double d = static_cast<double>(g.degree(u));
    if (d >= 2) cc[u] = static_cast<double>(links[u]) / (d * (d - 1) / 2);
  }
  return cc;
}

double avg_clustering(const Graph& g) {
  if (g.empty()) throw std::invalid_argument("avg_clustering of an empty graph");
  const auto cc = local_clustering(g);
  return std::accumulate(cc.begin(), cc.end(), 0.0) /
         static_cast<double>(cc.size());
}

std::size_t triangle_count(const Graph& g) {
  const auto links = closed_pairs(g);
  return std::accumulate(links.begin(), links.end(), std::uint64_t{0}) / 3;
}

double transitivity(const Graph& g) {
  const auto links = closed_pairs(g);
  std::uint64_t closed = 0, triples = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const std::uint64_t d = g.degree(u);
    closed += links[u];
    triples += d * (d - (d > 0 ? 1 : 0)) / 2;
  }
  return triples == 0 ? 0.0
                      : static_cast<double>(closed) / static_cast<double>(triples);
}

AplMode AplMode::automatic(std::size_t node_count) {
  return node_count <= 20'000 ? exact() : sampled(1'000);
}

std::string AplMode::describe() const {
  return kind == Kind::kExact ? "exact"
                              : "sampled(" + std::to_string(sources) + ")";
}

double avg_path_length(const Graph& g, AplMode mode, RngStream* rng,
                       unsigned threads) {
  const std::size_t n = g.node_count();
  if (n < 2) throw std::invalid_argument("avg_path_length needs two nodes");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  std::vector<NodeId> sources(n);
  std::iota(sources.begin(), sources.end(), NodeId{0});
  if (mode.kind == AplMode::Kind::kSampled) {
    if (rng == nullptr) {
      throw std::invalid_argument("sampled avg_path_length needs an RngStream");
    }
    if (mode.sources == 0) throw std::invalid_argument("zero sampled sources");
    const std::size_t k = std::min(mode.sources, n);
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(sources[i], sources[i + rng->uniform_below(n - i)]);
    }
    sources.resize(k);
  }

  const auto totals = bfs_sums(g, sources, threads);
  if (totals.disconnected) throw DisconnectedGraphError("graph is disconnected");
  const double pairs = static_cast<double>(sources.size()) * static_cast<double>(n - 1);
  return static_cast<double>(totals.distance_sum) / pairs;
}

double fit_alpha(std::span<const std::size_t> values, std::size_t x_min,
                 double offset) {
  if (x_min == 0) throw std::invalid_argument("x_min must be positive");
  const double shift = static_cast<double>(x_min) - offset;
  if (!(shift > 0)) throw std::invalid_argument("offset must be below x_min");
  std::size_t tail = 0;
  bool above = false;
  double log_sum = 0.0;
  for (std::size_t x : values) {
    if (x < x_min) continue;
    ++tail;
    above = above || x > x_min;
    log_sum += std::log(static_cast<double>(x) / shift);
  }
  if (tail < 2) throw std::domain_error("power-law tail has fewer than two values");
  if (!above) throw std::domain_error("every tail value equals x_min");
  if (!(log_sum > 0)) throw std::domain_error("zero log-likelihood denominator");
  return 1.0 + static_cast<double>(tail) / log_sum;
}

std::vector<std::size_t> degrees(const Graph& g) {
  std::vector<std::size_t> out(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) out[u] = g.degree(u);
  return out;
}

std::size_t default_x_min(std::size_t m) { return std::max<std::size_t>(m, 2); }

double modularity(const Graph& g, const Partition& p) {
  check_cover(g, p);
  if (g.edge_count() == 0) throw std::invalid_argument("modularity of an edgeless graph");
  std::vector<std::uint64_t> internal(p.group_count(), 0);
  std::vector<std::uint64_t> degree_sum(p.group_count(), 0);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    degree_sum[p.group_of(u)] += g.degree(u);
    for (NodeId v : g.neighbors(u)) {
      if (u < v && p.group_of(u) == p.group_of(v)) ++internal[p.group_of(u)];
    }
  }
  const double m = static_cast<double>(g.edge_count());
  double q = 0.0;
  for (std::size_t i = 0; i < p.group_count(); ++i) {
    const double a = static_cast<double>(degree_sum[i]) / (2 * m);
    q += static_cast<double>(internal[i]) / m - a * a;
  }
  return q;
}

double relative_density(const Graph& g, const Partition& p) {
  check_cover(g, p);
  if (p.group_count() == 0) throw std::invalid_argument("empty partition");
  std::vector<std::uint64_t> internal(p.group_count(), 0);
  std::vector<std::uint64_t> boundary(p.group_count(), 0);
  for (const auto& [u, v] : g.edges()) {
    const auto gu = p.group_of(u), gv = p.group_of(v);
    if (gu == gv) {
      ++internal[gu];
    } else {
      ++boundary[gu];
      ++boundary[gv];
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < p.group_count(); ++i) {
    const auto incident = internal[i] + boundary[i];
    if (incident == 0) {
      throw std::invalid_argument("group " + std::to_string(i) +
                                  " has no incident edges");
    }
    total += static_cast<double>(internal[i]) / static_cast<double>(incident);
  }
  return total / static_cast<double>(p.group_count());
}

std::vector<CommunityStats> per_community_stats(const Graph& g,
                                                const Partition& p,
                                                std::size_t top_k,
                                                std::size_t x_min) {
  check_cover(g, p);
  if (top_k == 0) throw std::invalid_argument("top_k must be at least 1");
  const auto order = p.groups_by_size();
  std::vector<CommunityStats> out;
  for (std::size_t i = 0; i < std::min(top_k, order.size()); ++i) {
    const std::size_t group = order[i];
    const Graph sub = g.induced_subgraph(p.members(group));
    CommunityStats stats;
    stats.group = group;
    stats.size = sub.node_count();
    stats.clustering = avg_clustering(sub);
    const auto deg = degrees(sub);
    try {
      stats.alpha = fit_alpha(deg, x_min);
    } catch (const std::domain_error&) {
      stats.alpha.reset();
    }
    out.push_back(stats);
  }
  return out;
}

}  // namespace tunenet
