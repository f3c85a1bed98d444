#include "tunenet/community.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

#include "tunenet/metrics.hpp"

namespace tunenet {
namespace {

// Modularity values are tracked as integers scaled by 4M^2:
//   Q * 4M^2 = sum_i (4M * internal_i - D_i^2)
// and the gain of merging i and j is 2 * (2M * l_ij - D_i * D_j) in the
// same units, where l_ij counts edges between the groups and D is the
// group degree sum.
class Agglomeration {
 public:
  explicit Agglomeration(const Graph& g)
      : two_m_(2 * static_cast<std::int64_t>(g.edge_count())),
        degree_sum_(g.node_count()),
        links_(g.node_count()) {
    for (NodeId u = 0; u < g.node_count(); ++u) {
      degree_sum_[u] = static_cast<std::int64_t>(g.degree(u));
      scaled_q_ -= degree_sum_[u] * degree_sum_[u];
      for (NodeId v : g.neighbors(u)) links_[u][v] = 1;
    }
    for (NodeId u = 0; u < g.node_count(); ++u) {
      for (const auto& [v, l] : links_[u]) {
        if (u < v) queue_.insert(key(u, v, l));
      }
    }
  }

  double modularity() const {
    return static_cast<double>(scaled_q_) /
           (static_cast<double>(two_m_) * static_cast<double>(two_m_));
  }
  std::int64_t scaled_modularity() const { return scaled_q_; }

  bool done() const { return queue_.empty(); }

  // Applies the best merge; returns (kept, absorbed).
  std::pair<std::uint32_t, std::uint32_t> merge_best() {
    const auto [neg_gain, i, j] = *queue_.begin();
    const std::int64_t l_ij = links_[i].at(j);
    for (const auto& [k, l] : links_[i]) queue_.erase(key(i, k, l));
    for (const auto& [k, l] : links_[j]) {
      if (k != i) queue_.erase(key(j, k, l));
    }
    scaled_q_ += 2 * (two_m_ * l_ij - degree_sum_[i] * degree_sum_[j]);

    links_[i].erase(j);
    links_[j].erase(i);
    for (const auto& [k, l] : links_[j]) {
      links_[i][k] += l;
      links_[k].erase(j);
      links_[k][i] += l;
    }
    links_[j].clear();
    degree_sum_[i] += degree_sum_[j];
    degree_sum_[j] = 0;
    for (const auto& [k, l] : links_[i]) queue_.insert(key(i, k, l));
    return {i, j};
  }

 private:
  using Key = std::tuple<std::int64_t, std::uint32_t, std::uint32_t>;

  Key key(std::uint32_t a, std::uint32_t b, std::int64_t l) const {
    const std::int64_t gain = two_m_ * l - degree_sum_[a] * degree_sum_[b];
    return {-gain, std::min(a, b), std::max(a, b)};
  }

  std::int64_t two_m_;
  std::int64_t scaled_q_ = 0;
  std::vector<std::int64_t> degree_sum_;
  std::vector<std::map<std::uint32_t, std::int64_t>> links_;
  // Ordered by largest gain, then smallest pair.
  std::set<Key> queue_;
};

// Union-find over the first `count` merges; groups numbered by smallest node.
Partition replay_merges(std::size_t node_count,
                        const std::vector<GroupMerge>& merges, std::size_t count) {
  std::vector<std::uint32_t> parent(node_count);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < count; ++i) {
    const auto a = find(merges[i].kept), b = find(merges[i].absorbed);
    parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::uint32_t> assignment(node_count);
  for (std::uint32_t u = 0; u < node_count; ++u) assignment[u] = find(u);
  return Partition::from_assignment(std::move(assignment), PartitionKind::kDetected);
}

// Local improvement of a partition, in the same scaled integer units as
// Agglomeration. Nodes are visited in id order and ties go to the smallest
// node, then the smallest group id, so the result is deterministic.
class Refiner {
 public:
  Refiner(const Graph& g, std::vector<std::uint32_t>& group)
      : g_(g),
        group_(group),
        four_m_(4 * static_cast<std::int64_t>(g.edge_count())),
        degree_sum_(g.node_count(), 0),
        size_(g.node_count(), 0) {
    for (NodeId u = 0; u < g.node_count(); ++u) {
      degree_sum_[group_[u]] += static_cast<std::int64_t>(g.degree(u));
      ++size_[group_[u]];
    }
    for (std::uint32_t k = 0; k < size_.size(); ++k) {
      if (size_[k] == 0) empty_.insert(k);
    }
  }

  // Alternates greedy moves, merges and tentative move sequences until none
  // of them raises modularity. Returns the number of committed steps.
  std::size_t run() {
    for (;;) {
      const bool greedy = greedy_moves() | merges();
      if (!greedy && !tentative_pass()) break;
    }
    return steps_;
  }

 private:
  struct Move {
    std::int64_t gain = 0;
    std::uint32_t to = 0;
  };

  // Best relocation of u, to a neighboring group or a fresh one. Returns
  // to == current group when u has nowhere to go.
  Move best_move(NodeId u) {
    const std::uint32_t from = group_[u];
    const auto d = static_cast<std::int64_t>(g_.degree(u));
    links_.clear();
    for (NodeId v : g_.neighbors(u)) ++links_[group_[v]];
    const auto it = links_.find(from);
    const std::int64_t k_from = it == links_.end() ? 0 : it->second;
    auto gain = [&](std::uint32_t to, std::int64_t k_to) {
      return four_m_ * (k_to - k_from) -
             2 * d * (degree_sum_[to] - degree_sum_[from] + d);
    };
    Move best{std::numeric_limits<std::int64_t>::min(), from};
    for (const auto& [to, k_to] : links_) {
      if (to == from) continue;
      const std::int64_t gv = gain(to, k_to);
      if (gv > best.gain) best = {gv, to};
    }
    if (size_[from] > 1) {
      const std::uint32_t fresh = *empty_.begin();
      const std::int64_t gv = gain(fresh, 0);
      if (gv > best.gain || (gv == best.gain && fresh < best.to)) best = {gv, fresh};
    }
    return best;
  }

  void apply(NodeId u, std::uint32_t to) {
    const std::uint32_t from = group_[u];
    const auto d = static_cast<std::int64_t>(g_.degree(u));
    degree_sum_[from] -= d;
    degree_sum_[to] += d;
    if (--size_[from] == 0) empty_.insert(from);
    if (size_[to]++ == 0) empty_.erase(to);
    group_[u] = to;
  }

  bool greedy_moves() {
    bool any = false;
    for (bool moved = true; moved;) {
      moved = false;
      for (NodeId u = 0; u < g_.node_count(); ++u) {
        const Move m = best_move(u);
        if (m.to == group_[u] || m.gain <= 0) continue;
        apply(u, m.to);
        moved = any = true;
        ++steps_;
      }
    }
    return any;
  }

  bool merges() {
    bool any = false;
    for (;;) {
      std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> between;
      for (const auto& [u, v] : g_.edges()) {
        const auto a = group_[u], b = group_[v];
        if (a != b) ++between[{std::min(a, b), std::max(a, b)}];
      }
      std::int64_t best_gain = 0;
      std::pair<std::uint32_t, std::uint32_t> best{};
      for (const auto& [pair, l] : between) {
        const std::int64_t gv =
            four_m_ * l - 2 * degree_sum_[pair.first] * degree_sum_[pair.second];
        if (gv > best_gain) best_gain = gv, best = pair;
      }
      if (best_gain == 0) return any;
      for (NodeId u = 0; u < g_.node_count(); ++u) {
        if (group_[u] == best.second) apply(u, best.first);
      }
      any = true;
      ++steps_;
    }
  }

  // Kernighan-Lin style pass: move nodes one at a time, each time taking the
  // best available move even if it lowers modularity, then keep the prefix
  // of moves with the highest cumulative gain. A pass gives up after
  // kPatience moves without a new best.
  bool tentative_pass() {
    constexpr std::size_t kPatience = 50;
    const std::size_t n = g_.node_count();
    std::vector<bool> locked(n, false);
    std::vector<std::pair<NodeId, std::uint32_t>> undo;
    std::int64_t total = 0, best_total = 0;
    std::size_t best_len = 0;
    for (std::size_t step = 0; step < n; ++step) {
      NodeId pick = 0;
      Move pick_move{std::numeric_limits<std::int64_t>::min(), 0};
      bool found = false;
      for (NodeId u = 0; u < n; ++u) {
        if (locked[u]) continue;
        const Move m = best_move(u);
        if (m.to == group_[u]) continue;
        if (!found || m.gain > pick_move.gain) {
          pick = u, pick_move = m, found = true;
        }
      }
      if (!found) break;
      undo.emplace_back(pick, group_[pick]);
      apply(pick, pick_move.to);
      locked[pick] = true;
      total += pick_move.gain;
      if (total > best_total) best_total = total, best_len = undo.size();
      if (undo.size() - best_len >= kPatience) break;
    }
    while (undo.size() > best_len) {
      apply(undo.back().first, undo.back().second);
      undo.pop_back();
    }
    steps_ += best_len;
    return best_len > 0;
  }

  const Graph& g_;
  std::vector<std::uint32_t>& group_;
  std::int64_t four_m_;
  std::vector<std::int64_t> degree_sum_;
  std::vector<std::size_t> size_;
  std::set<std::uint32_t> empty_;
  std::map<std::uint32_t, std::int64_t> links_;
  std::size_t steps_ = 0;
};

double entropy(const std::vector<double>& counts, double n) {
  double h = 0.0;
  for (double c : counts) {
    if (c > 0) h -= (c / n) * std::log(c / n);
  }
  return h;
}

double choose2(double x) { return x * (x - 1) / 2; }

}  // namespace

Detection detect_communities(const Graph& g) {
  if (g.edge_count() == 0) {
    throw std::invalid_argument("community detection needs at least one edge");
  }
  Agglomeration agg(g);
  MergeDendrogram dendrogram;
  dendrogram.initial_modularity = agg.modularity();
  std::int64_t best = agg.scaled_modularity();
  while (!agg.done()) {
    const auto [kept, absorbed] = agg.merge_best();
    dendrogram.merges.push_back({kept, absorbed, agg.modularity()});
    if (agg.scaled_modularity() > best) {
      best = agg.scaled_modularity();
      dendrogram.cut = dendrogram.merges.size();
    }
  }
  dendrogram.best_modularity = dendrogram.modularity_at(dendrogram.cut);
  const Partition cut =
      replay_merges(g.node_count(), dendrogram.merges, dendrogram.cut);
  std::vector<std::uint32_t> group = cut.assignment();
  Detection out;
  out.refinement_steps = Refiner(g, group).run();
  out.partition = Partition::from_assignment(std::move(group), PartitionKind::kDetected);
  out.modularity = modularity(g, out.partition);
  out.dendrogram = std::move(dendrogram);
  return out;
}

std::vector<Subclustering> subcluster(const Graph& g, const Partition& p,
                                      std::size_t top_k) {
  if (top_k == 0) throw std::invalid_argument("top_k must be at least 1");
  if (p.node_count() != g.node_count()) {
    throw std::invalid_argument("partition does not cover the graph");
  }
  const auto order = p.groups_by_size();
  std::vector<Subclustering> out;
  for (std::size_t i = 0; i < std::min(top_k, order.size()); ++i) {
    const Graph sub = g.induced_subgraph(p.members(order[i]));
    Subclustering result;
    result.group = order[i];
    if (sub.edge_count() == 0) {
      result.partition = Partition::single_group(sub.node_count());
    } else {
      auto detection = detect_communities(sub);
      result.partition = std::move(detection.partition);
      result.modularity = detection.modularity;
    }
    out.push_back(std::move(result));
  }
  return out;
}

PartitionAgreement compare_partitions(const Partition& a, const Partition& b) {
  if (a.node_count() != b.node_count()) {
    throw std::invalid_argument("partitions cover different node sets");
  }
  const std::size_t n = a.node_count();
  if (n < 2) return {1.0, 1.0};
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> joint;
  std::vector<double> ca(a.group_count(), 0.0), cb(b.group_count(), 0.0);
  for (NodeId u = 0; u < n; ++u) {
    ++joint[{a.group_of(u), b.group_of(u)}];
    ++ca[a.group_of(u)];
    ++cb[b.group_of(u)];
  }
  const double total = static_cast<double>(n);

  PartitionAgreement out;
  const double ha = entropy(ca, total), hb = entropy(cb, total);
  double mutual = 0.0;
  for (const auto& [cell, count] : joint) {
    mutual += (count / total) *
              std::log(total * count / (ca[cell.first] * cb[cell.second]));
  }
  out.nmi = ha + hb == 0.0 ? 1.0 : std::clamp(2 * mutual / (ha + hb), 0.0, 1.0);

  double index = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [cell, count] : joint) index += choose2(count);
  for (double x : ca) sum_a += choose2(x);
  for (double x : cb) sum_b += choose2(x);
  const double expected = sum_a * sum_b / choose2(total);
  const double max_index = (sum_a + sum_b) / 2;
  out.ari = max_index == expected ? 1.0 : (index - expected) / (max_index - expected);
  return out;
}

}  // namespace tunenet
