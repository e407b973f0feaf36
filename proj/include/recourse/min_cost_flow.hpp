#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace recourse {

// Successive-shortest-path min-cost flow on integer costs. Potentials are
// initialised with Bellman-Ford so negative arc costs are allowed as long as
// the initial residual graph has no negative cycle.
class FlowNetwork {
 public:
  using Cost = std::int64_t;

  struct Arc {
    std::size_t to;
    std::size_t reverse;
    int capacity;
    int flow;
    Cost cost;
  };

  explicit FlowNetwork(std::size_t nodes) : adj_(nodes) {}

  std::size_t node_count() const { return adj_.size(); }

  /// Returns a handle (node, index) usable with arc().
  std::pair<std::size_t, std::size_t> add_arc(std::size_t from, std::size_t to, int capacity, Cost cost);
  const Arc& arc(std::pair<std::size_t, std::size_t> handle) const {
    return adj_[handle.first][handle.second];
  }

  struct Result {
    int flow = 0;
    Cost cost = 0;
  };

  /// Pushes flow from source to sink along cheapest augmenting paths. Stops at
  /// maximum flow, or earlier once the cheapest path is no longer negative
  /// when stop_at_nonnegative is set.
  Result solve(std::size_t source, std::size_t sink, bool stop_at_nonnegative = false);

  /// Net flow into minus out of each node (zero at non-terminals after solve).
  std::vector<long long> imbalance() const;

 private:
  std::vector<std::vector<Arc>> adj_;
};

}  // namespace recourse
