#pragma once

#include <vector>

#include "recourse/core.hpp"

namespace recourse {

/// Capacity distribution for a total budget: rank seekers by their best edge
/// weight (descending, ties by seeker index), keep the first min(budget, n),
/// and give each kept seeker's preferred provider one slot. Any budget beyond
/// n goes to provider 0 so the vector always sums to the budget.
CapacityVector optimal_capacity(const WeightMatrix& w, long long total_capacity);

struct CurvePoint {
  long long total_capacity;
  CapacityVector capacity;
  double welfare;
};

/// One point per budget in 0..max_total; each welfare is an exact
/// capacitated matching solve under optimal_capacity for that budget.
std::vector<CurvePoint> welfare_curve(const WeightMatrix& w, long long max_total);

}  // namespace recourse
