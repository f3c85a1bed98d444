#ifndef TUNENET_TESTS_SUPPORT_HPP
#define TUNENET_TESTS_SUPPORT_HPP

// Small graph builders and independent reference computations for tests.

#include <cmath>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <queue>
#include <utility>
#include <vector>

#include "tunenet/graph.hpp"
#include "tunenet/rng.hpp"

namespace tunenet::testing {

inline Graph make_graph(std::size_t n, std::initializer_list<Edge> edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline Graph triangle() { return make_graph(3, {{0, 1}, {0, 2}, {1, 2}}); }

inline Graph path(std::size_t n) {
  Graph g(n);
  for (NodeId u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
  return g;
}

// Hub 0 joined to leaves 1..n-1.
inline Graph star(std::size_t n) {
  Graph g(n);
  for (NodeId u = 1; u < n; ++u) g.add_edge(0, u);
  return g;
}

inline Graph complete(std::size_t n) {
  Graph g(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

// Triangles {0,1,2} and {3,4,5} joined by 2-3.
inline Graph two_triangles() {
  return make_graph(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}});
}

// 0-1-2-3-0 plus the diagonal 0-2.
inline Graph cycle4_with_diagonal() {
  return make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
}

// Erdos-Renyi G(n, p); may be disconnected.
inline Graph random_graph(std::size_t n, double p, RngStream& rng) {
  Graph g(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (rng.uniform01() < p) g.add_edge(u, v);
    }
  }
  return g;
}

inline Graph random_connected_graph(std::size_t n, double p, RngStream& rng) {
  for (;;) {
    Graph g = random_graph(n, p, rng);
    if (g.is_connected()) return g;
  }
}

// Q = sum over groups of (e_ii - a_i^2), written straight from the
// definition with edge fractions.
inline double reference_modularity(const Graph& g,
                                   const std::vector<std::uint32_t>& group) {
  const double m = static_cast<double>(g.edge_count());
  std::map<std::uint32_t, double> inside, ends;
  for (const auto& [u, v] : g.edges()) {
    if (group[u] == group[v]) inside[group[u]] += 1.0;
    ends[group[u]] += 1.0;
    ends[group[v]] += 1.0;
  }
  double q = 0.0;
  for (const auto& [k, e] : ends) {
    const double a = e / (2 * m);
    q += inside[k] / m - a * a;
  }
  return q;
}

// Best modularity over every set partition (restricted growth strings).
inline double exhaustive_best_modularity(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> group(n, 0);
  double best = -1.0;
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i,
                                                            std::uint32_t used) {
    if (i == n) {
      best = std::max(best, reference_modularity(g, group));
      return;
    }
    for (std::uint32_t k = 0; k <= used; ++k) {
      group[i] = k;
      rec(i + 1, std::max(used, k + 1));
    }
  };
  rec(1, 1);
  return best;
}

// Mean BFS distance over unordered pairs, written independently of the
// library's parallel version.
inline double reference_apl(const Graph& g) {
  const std::size_t n = g.node_count();
  double total = 0.0;
  for (NodeId s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1);
    std::queue<NodeId> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const NodeId u = q.front();
      q.pop();
      for (NodeId v : g.neighbors(u)) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
      }
    }
    for (NodeId t = s + 1; t < n; ++t) total += dist[t];
  }
  return total / (static_cast<double>(n) * (n - 1) / 2);
}

// Mean local clustering by checking every neighbor pair with has_edge;
// nodes of degree < 2 count as 0.
inline double reference_avg_clustering(const Graph& g) {
  double total = 0.0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto nb = g.neighbors(u);
    if (nb.size() < 2) continue;
    std::size_t linked = 0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) linked += g.has_edge(nb[i], nb[j]);
    }
    total += 2.0 * linked / (static_cast<double>(nb.size()) * (nb.size() - 1));
  }
  return g.node_count() == 0 ? 0.0 : total / g.node_count();
}

// Three-sigma half-width for a binomial proportion.
inline double three_sigma(double p, std::size_t trials) {
  return 3.0 * std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

// Same graph with node u renamed perm[u].
inline Graph relabel(const Graph& g, const std::vector<NodeId>& perm) {
  Graph h(g.node_count());
  for (const auto& [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
  return h;
}

}  // namespace tunenet::testing

#endif  // TUNENET_TESTS_SUPPORT_HPP
