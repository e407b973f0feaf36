#include "recourse/matching.hpp"

#include <cmath>
#include <vector>

#include "recourse/min_cost_flow.hpp"

namespace recourse {
namespace {

void check_dimensions(const WeightMatrix& w, const CapacityVector& k) {
  if (k.size() != w.n_providers()) {
    throw ValidationError("capacity vector has " + std::to_string(k.size()) + " entries, expected " +
                          std::to_string(w.n_providers()));
  }
}

}  // namespace

std::pair<Matching, WelfareReport> solve_matching(const WeightMatrix& w, const CapacityVector& k) {
  check_dimensions(w, k);
  const std::size_t n = w.n_seekers();
  const std::size_t m = w.n_providers();

  // Layout: 0 source, 1..n seekers, n+1..n+m providers, n+m+1 sink.
  const std::size_t source = 0;
  const std::size_t sink = n + m + 1;
  FlowNetwork net(n + m + 2);
  for (std::size_t i = 0; i < n; ++i) net.add_arc(source, 1 + i, 1, 0);

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> edge(n);
  for (std::size_t i = 0; i < n; ++i) {
    edge[i].reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
      const auto cost = -static_cast<FlowNetwork::Cost>(std::llround(w(i, j) * kWeightScale));
      edge[i].push_back(net.add_arc(1 + i, 1 + n + j, 1, cost));
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    // Capacity beyond n can never be used.
    const int cap = static_cast<int>(std::min<long long>(k[j], static_cast<long long>(n)));
    net.add_arc(1 + n + j, sink, cap, 0);
  }

  net.solve(source, sink, /*stop_at_nonnegative=*/true);

  Matching matching(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (net.arc(edge[i][j]).flow > 0) matching.assign(i, j);
    }
  }
  auto report = evaluate(w, matching, k);
  return {std::move(matching), std::move(report)};
}

std::pair<Matching, double> brute_force_matching(const WeightMatrix& w, const CapacityVector& k) {
  check_dimensions(w, k);
  const std::size_t n = w.n_seekers();
  const std::size_t m = w.n_providers();
  if (n > kBruteForceMaxSeekers || m > kBruteForceMaxProviders) {
    throw SizeLimitError("brute-force matching limited to " + std::to_string(kBruteForceMaxSeekers) +
                         " seekers and " + std::to_string(kBruteForceMaxProviders) +
                         " providers, got " + std::to_string(n) + "x" + std::to_string(m));
  }

  // choice[i] == m means unmatched.
  std::vector<std::size_t> choice(n, m), best_choice(n, m);
  std::vector<int> remaining(k.values());
  double best = 0.0;

  auto recurse = [&](auto&& self, std::size_t i, double acc) -> void {
    if (i == n) {
      if (acc > best) {
        best = acc;
        best_choice = choice;
      }
      return;
    }
    choice[i] = m;
    self(self, i + 1, acc);
    for (std::size_t j = 0; j < m; ++j) {
      if (remaining[j] == 0) continue;
      --remaining[j];
      choice[i] = j;
      self(self, i + 1, acc + w(i, j));
      ++remaining[j];
    }
    choice[i] = m;
  };
  recurse(recurse, 0, 0.0);

  Matching matching(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (best_choice[i] < m) matching.assign(i, best_choice[i]);
  }
  return {std::move(matching), social_welfare(w, matching)};
}

}  // namespace recourse
