#pragma once

#include <utility>

#include "recourse/core.hpp"

namespace recourse {

// Weights are scaled by 2^40 and rounded before entering the flow network.
// Over n matched edges the rounding moves the objective by at most n * 2^-41,
// so the chosen matching is optimal for the real weights to well within
// kWelfareTolerance for any realistic n.
inline constexpr double kWeightScale = 1099511627776.0;  // 2^40

/// Maximum-weight matching where seeker i takes at most one provider and
/// provider j at most k[j] seekers. The report's welfare is recomputed from
/// the real weights of the selected edges.
std::pair<Matching, WelfareReport> solve_matching(const WeightMatrix& w, const CapacityVector& k);

// Enumeration guard for brute_force_matching.
inline constexpr std::size_t kBruteForceMaxSeekers = 8;
inline constexpr std::size_t kBruteForceMaxProviders = 5;

/// Exhaustive search over every assignment of each seeker to a provider or to
/// nobody. Throws SizeLimitError above 8 seekers or 5 providers.
std::pair<Matching, double> brute_force_matching(const WeightMatrix& w, const CapacityVector& k);

}  // namespace recourse
