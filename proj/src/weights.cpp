#include "recourse/weights.hpp"

#include <cmath>
#include <limits>

namespace recourse {

WeightMatrix to_weights(const CostMatrix& costs, double gamma) {
  if (!std::isfinite(gamma) || gamma <= 0.0) throw ValidationError("gamma must be finite and > 0");
  const std::size_t m = costs.n_providers();
  std::vector<double> w(costs.values().size());
  std::vector<std::string> warnings;
  for (std::size_t e = 0; e < w.size(); ++e) {
    w[e] = std::exp(-gamma * costs.values()[e]);
    if (w[e] < std::numeric_limits<double>::min()) {
      w[e] = std::numeric_limits<double>::min();
      warnings.push_back("weight (" + costs.seeker_ids()[e / m] + "," + costs.provider_ids()[e % m] +
                         ") underflowed and was clamped");
    }
  }
  WeightMatrix out(costs.n_seekers(), m, std::move(w), gamma, costs.seeker_ids(),
                   costs.provider_ids());
  out.warnings_ = std::move(warnings);
  return out;
}

CostMatrix to_costs(const WeightMatrix& weights) {
  std::vector<double> c(weights.values().size());
  for (std::size_t e = 0; e < c.size(); ++e) {
    // exp(-0) = 1 exactly, keep zero costs exactly zero.
    c[e] = weights.values()[e] == 1.0 ? 0.0 : -std::log(weights.values()[e]) / weights.gamma();
  }
  return CostMatrix(weights.n_seekers(), weights.n_providers(), std::move(c), weights.seeker_ids(),
                    weights.provider_ids());
}

}  // namespace recourse
