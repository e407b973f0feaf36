#include "recourse/capacity.hpp"

#include <algorithm>
#include <numeric>

#include "recourse/matching.hpp"

namespace recourse {

CapacityVector optimal_capacity(const WeightMatrix& w, long long total_capacity) {
  if (total_capacity < 0) throw ValidationError("total capacity must be >= 0");
  const std::size_t n = w.n_seekers();
  const std::size_t m = w.n_providers();

  struct Best {
    std::size_t seeker;
    std::size_t provider;
    double weight;
  };
  std::vector<Best> best;
  best.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = w.row_argmax(i);
    best.push_back({i, j, w(i, j)});
  }
  std::stable_sort(best.begin(), best.end(),
                   [](const Best& a, const Best& b) { return a.weight > b.weight; });

  const auto take = static_cast<std::size_t>(std::min<long long>(total_capacity, static_cast<long long>(n)));
  std::vector<int> caps(m, 0);
  for (std::size_t t = 0; t < take; ++t) ++caps[best[t].provider];
  if (total_capacity > static_cast<long long>(n)) {
    caps[0] += static_cast<int>(total_capacity - static_cast<long long>(n));
  }
  return CapacityVector(std::move(caps));
}

std::vector<CurvePoint> welfare_curve(const WeightMatrix& w, long long max_total) {
  if (max_total < 0) throw ValidationError("sweep limit must be >= 0");
  std::vector<CurvePoint> curve;
  curve.reserve(static_cast<std::size_t>(max_total) + 1);
  for (long long total = 0; total <= max_total; ++total) {
    auto k = optimal_capacity(w, total);
    const double welfare = solve_matching(w, k).second.social_welfare;
    curve.push_back({total, std::move(k), welfare});
  }
  return curve;
}

}  // namespace recourse
