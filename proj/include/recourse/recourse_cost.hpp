#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recourse/core.hpp"

namespace recourse {

// Required score margin; turns "score > 0" into the closed set "score >= eps".
inline constexpr double kFlipMargin = 1e-6;

enum class Norm { L1, Linf };

Norm parse_norm(const std::string& name);
std::string to_string(Norm norm);

/// Linear classifier accepting x when weights . x + bias >= 0.
struct LinearProvider {
  LinearProvider(std::vector<double> weights, double bias, std::string id = {});

  double score(const std::vector<double>& x) const;

  std::vector<double> weights;
  double bias;
  std::string id;
};

/// Per-feature bounds and mutability. Empty vectors mean unbounded and fully
/// mutable; bounds may be infinite.
struct ActionConstraints {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> mutable_features;

  static ActionConstraints unconstrained(std::size_t dims);
  /// Fills defaults for dims features and checks lower <= upper.
  ActionConstraints resolved(std::size_t dims) const;
};

struct Action {
  std::vector<double> delta;
  double cost;
};

/// Cheapest action (in the given norm) that moves x to a score of at least
/// kFlipMargin while respecting the constraints. Returns nullopt when no
/// admissible action reaches the margin. x must currently be rejected.
std::optional<Action> min_cost_action(const std::vector<double>& x, const LinearProvider& provider,
                                      const ActionConstraints& constraints, Norm norm);

/// Cost matrix over every (seeker, provider) pair. Throws ValidationError
/// listing any pair where the seeker is already accepted or has no recourse.
CostMatrix build_cost_matrix(const std::vector<std::vector<double>>& seekers,
                             const std::vector<LinearProvider>& providers,
                             const ActionConstraints& constraints, Norm norm,
                             std::vector<std::string> seeker_ids = {});

}  // namespace recourse
