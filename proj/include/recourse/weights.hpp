#pragma once

#include "recourse/core.hpp"

namespace recourse {

/// Maps every cost c to exp(-gamma * c). Entries whose exponential underflows
/// are clamped to the smallest positive normal double and listed in
/// WeightMatrix::warnings().
WeightMatrix to_weights(const CostMatrix& costs, double gamma);

/// Inverse map, -ln(w) / gamma.
CostMatrix to_costs(const WeightMatrix& weights);

}  // namespace recourse
