#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "recourse/core.hpp"

namespace recourse {

// Largest composition count the exact solver will enumerate.
inline constexpr std::uint64_t kMaxCompositions = 1'000'000;

/// C(total + m - 1, m - 1), saturating at UINT64_MAX.
std::uint64_t composition_count(std::size_t m, long long total);

/// Calls visit for every nonnegative integer vector of length m summing to
/// total, in lexicographic order. Throws SizeLimitError past kMaxCompositions.
void for_each_composition(std::size_t m, long long total,
                          const std::function<void(const CapacityVector&)>& visit);

std::vector<CapacityVector> enumerate_capacities(std::size_t m, long long total);

struct PenalizedResult {
  CapacityVector capacity;
  Matching matching;
  WelfareReport report;
};

/// Exact optimum of matching welfare minus sum_j beta_j |k_j - k_hat_j| over
/// every capacity vector summing to total_capacity. Ties within
/// kWelfareTolerance go to the smallest total deviation from k_hat, then to
/// the lexicographically smallest vector.
PenalizedResult solve_penalized(const WeightMatrix& w, const PenaltyConfig& penalty,
                                long long total_capacity);

/// Hill climbing over single-unit transfers between providers, starting from
/// start. Stops when no transfer improves the objective by more than
/// kWelfareTolerance.
PenalizedResult local_search_penalized(const WeightMatrix& w, const PenaltyConfig& penalty,
                                       long long total_capacity, const CapacityVector& start);

}  // namespace recourse
