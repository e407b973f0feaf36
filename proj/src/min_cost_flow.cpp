#include "recourse/min_cost_flow.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

namespace recourse {
namespace {
constexpr FlowNetwork::Cost kInf = std::numeric_limits<FlowNetwork::Cost>::max() / 4;
}

std::pair<std::size_t, std::size_t> FlowNetwork::add_arc(std::size_t from, std::size_t to,
                                                         int capacity, Cost cost) {
  if (capacity < 0) throw std::invalid_argument("arc capacity must be nonnegative");
  const std::size_t fwd = adj_[from].size();
  const std::size_t rev = adj_[to].size() + (from == to ? 1 : 0);
  adj_[from].push_back(Arc{to, rev, capacity, 0, cost});
  adj_[to].push_back(Arc{from, fwd, 0, 0, -cost});
  return {from, fwd};
}

FlowNetwork::Result FlowNetwork::solve(std::size_t source, std::size_t sink, bool stop_at_nonnegative) {
  const std::size_t n = adj_.size();
  std::vector<Cost> potential(n, kInf);

  // Bellman-Ford over arcs with residual capacity.
  potential[source] = 0;
  for (std::size_t round = 0; round < n; ++round) {
    bool changed = false;
    for (std::size_t u = 0; u < n; ++u) {
      if (potential[u] == kInf) continue;
      for (const Arc& a : adj_[u]) {
        if (a.capacity - a.flow > 0 && potential[u] + a.cost < potential[a.to]) {
          potential[a.to] = potential[u] + a.cost;
          changed = true;
        }
      }
    }
    if (!changed) break;
    if (round + 1 == n) throw std::logic_error("negative cycle in flow network");
  }
  for (auto& p : potential) {
    if (p == kInf) p = 0;
  }

  Result result;
  std::vector<Cost> dist(n);
  std::vector<std::pair<std::size_t, std::size_t>> parent(n);
  using Entry = std::pair<Cost, std::size_t>;

  while (true) {
    std::fill(dist.begin(), dist.end(), kInf);
    dist[source] = 0;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    queue.emplace(0, source);
    while (!queue.empty()) {
      auto [d, u] = queue.top();
      queue.pop();
      if (d != dist[u]) continue;
      for (std::size_t e = 0; e < adj_[u].size(); ++e) {
        const Arc& a = adj_[u][e];
        if (a.capacity - a.flow <= 0) continue;
        const Cost reduced = a.cost + potential[u] - potential[a.to];
        if (dist[u] + reduced < dist[a.to]) {
          dist[a.to] = dist[u] + reduced;
          parent[a.to] = {u, e};
          queue.emplace(dist[a.to], a.to);
        }
      }
    }
    if (dist[sink] == kInf) break;

    const Cost path_cost = dist[sink] - potential[source] + potential[sink];
    if (stop_at_nonnegative && path_cost >= 0) break;

    for (std::size_t v = 0; v < n; ++v) {
      if (dist[v] != kInf) potential[v] += dist[v];
    }

    int push = std::numeric_limits<int>::max();
    for (std::size_t v = sink; v != source; v = parent[v].first) {
      const Arc& a = adj_[parent[v].first][parent[v].second];
      push = std::min(push, a.capacity - a.flow);
    }
    for (std::size_t v = sink; v != source; v = parent[v].first) {
      Arc& a = adj_[parent[v].first][parent[v].second];
      a.flow += push;
      adj_[a.to][a.reverse].flow -= push;
    }
    result.flow += push;
    result.cost += static_cast<Cost>(push) * path_cost;
  }
  return result;
}

std::vector<long long> FlowNetwork::imbalance() const {
  std::vector<long long> net(adj_.size(), 0);
  for (std::size_t u = 0; u < adj_.size(); ++u) {
    for (const Arc& a : adj_[u]) {
      if (a.capacity > 0) {
        net[u] -= a.flow;
        net[a.to] += a.flow;
      }
    }
  }
  return net;
}

}  // namespace recourse
