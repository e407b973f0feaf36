#include "recourse/recourse_cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace recourse {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// How far coordinate k may move in the direction that raises the score.
double headroom(const std::vector<double>& x, const LinearProvider& h, const ActionConstraints& a,
                std::size_t k) {
  if (!a.mutable_features[k] || h.weights[k] == 0.0) return 0.0;
  return h.weights[k] > 0.0 ? a.upper[k] - x[k] : x[k] - a.lower[k];
}

double direction(double weight) { return weight > 0.0 ? 1.0 : -1.0; }

// Score reached when every useful coordinate moves min(radius, headroom).
double score_at_radius(const std::vector<double>& x, const LinearProvider& h,
                       const std::vector<double>& room, double radius) {
  double s = h.score(x);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (room[k] > 0.0) s += std::abs(h.weights[k]) * std::min(radius, room[k]);
  }
  return s;
}

std::optional<Action> solve_linf(const std::vector<double>& x, const LinearProvider& h,
                                 const std::vector<double>& room) {
  const double target = kFlipMargin;
  const double max_radius = *std::max_element(room.begin(), room.end());
  if (max_radius <= 0.0 || score_at_radius(x, h, room, max_radius) < target) return std::nullopt;

  double lo = 0.0;
  double hi = std::isfinite(max_radius) ? max_radius : 1.0;
  while (score_at_radius(x, h, room, hi) < target) {
    lo = hi;
    hi *= 2.0;
  }
  for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    if (score_at_radius(x, h, room, mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  Action act{std::vector<double>(x.size(), 0.0), 0.0};
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (room[k] > 0.0) act.delta[k] = direction(h.weights[k]) * std::min(hi, room[k]);
    act.cost = std::max(act.cost, std::abs(act.delta[k]));
  }
  return act;
}

std::optional<Action> solve_l1(const std::vector<double>& x, const LinearProvider& h,
                               const std::vector<double>& room) {
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (room[k] > 0.0) order.push_back(k);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(h.weights[a]) > std::abs(h.weights[b]);
  });

  double needed = kFlipMargin - h.score(x);
  Action act{std::vector<double>(x.size(), 0.0), 0.0};
  for (std::size_t k : order) {
    if (needed <= 0.0) break;
    const double gain = std::abs(h.weights[k]);
    if (room[k] * gain >= needed) {
      const double step = needed / gain;
      act.delta[k] = direction(h.weights[k]) * step;
      act.cost += step;
      needed = 0.0;
      break;
    }
    act.delta[k] = direction(h.weights[k]) * room[k];
    act.cost += room[k];
    needed -= gain * room[k];
  }
  if (needed > 0.0) return std::nullopt;
  return act;
}

}  // namespace

Norm parse_norm(const std::string& name) {
  if (name == "l1" || name == "L1") return Norm::L1;
  if (name == "linf" || name == "Linf" || name == "LINF" || name == "inf") return Norm::Linf;
  throw ValidationError("unknown norm '" + name + "' (expected l1 or linf)");
}

std::string to_string(Norm norm) { return norm == Norm::L1 ? "l1" : "linf"; }

LinearProvider::LinearProvider(std::vector<double> w, double b, std::string name)
    : weights(std::move(w)), bias(b), id(std::move(name)) {
  if (std::none_of(weights.begin(), weights.end(), [](double v) { return v != 0.0; })) {
    throw ValidationError("provider " + id + " has an all-zero weight vector");
  }
  if (!std::isfinite(bias) ||
      !std::all_of(weights.begin(), weights.end(), [](double v) { return std::isfinite(v); })) {
    throw ValidationError("provider " + id + " has non-finite parameters");
  }
}

double LinearProvider::score(const std::vector<double>& x) const {
  return std::inner_product(weights.begin(), weights.end(), x.begin(), bias);
}

ActionConstraints ActionConstraints::unconstrained(std::size_t dims) {
  return {std::vector<double>(dims, -kInf), std::vector<double>(dims, kInf),
          std::vector<bool>(dims, true)};
}

ActionConstraints ActionConstraints::resolved(std::size_t dims) const {
  ActionConstraints out = unconstrained(dims);
  auto fill = [dims](auto& dst, const auto& src, const char* what) {
    if (src.empty()) return;
    if (src.size() != dims) {
      throw ValidationError(std::string(what) + " has " + std::to_string(src.size()) +
                            " entries, expected " + std::to_string(dims));
    }
    dst = src;
  };
  fill(out.lower, lower, "lower bound");
  fill(out.upper, upper, "upper bound");
  fill(out.mutable_features, mutable_features, "mutability mask");
  for (std::size_t k = 0; k < dims; ++k) {
    if (std::isnan(out.lower[k]) || std::isnan(out.upper[k]) || out.lower[k] > out.upper[k]) {
      throw ValidationError("feature " + std::to_string(k) + " has lower bound above upper bound");
    }
  }
  return out;
}

std::optional<Action> min_cost_action(const std::vector<double>& x, const LinearProvider& provider,
                                      const ActionConstraints& constraints, Norm norm) {
  if (x.size() != provider.weights.size()) {
    throw ValidationError("seeker has " + std::to_string(x.size()) + " features, provider " +
                          provider.id + " expects " + std::to_string(provider.weights.size()));
  }
  const auto a = constraints.resolved(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!std::isfinite(x[k])) throw ValidationError("seeker feature " + std::to_string(k) + " is not finite");
    if (a.mutable_features[k] && (x[k] < a.lower[k] || x[k] > a.upper[k])) {
      throw ValidationError("seeker feature " + std::to_string(k) + " lies outside its bounds");
    }
  }
  if (provider.score(x) >= 0.0) {
    throw ValidationError("seeker is already accepted by provider " + provider.id);
  }
  std::vector<double> room(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) room[k] = headroom(x, provider, a, k);
  return norm == Norm::Linf ? solve_linf(x, provider, room) : solve_l1(x, provider, room);
}

CostMatrix build_cost_matrix(const std::vector<std::vector<double>>& seekers,
                             const std::vector<LinearProvider>& providers,
                             const ActionConstraints& constraints, Norm norm,
                             std::vector<std::string> seeker_ids) {
  if (seekers.empty() || providers.empty()) throw ValidationError("need at least one seeker and one provider");
  if (seeker_ids.empty()) {
    for (std::size_t i = 0; i < seekers.size(); ++i) seeker_ids.push_back("s" + std::to_string(i + 1));
  }
  if (seeker_ids.size() != seekers.size()) throw ValidationError("seeker id count does not match seekers");
  std::vector<std::string> provider_ids;
  for (std::size_t j = 0; j < providers.size(); ++j) {
    provider_ids.push_back(providers[j].id.empty() ? "p" + std::to_string(j + 1) : providers[j].id);
  }

  std::string accepted;
  for (std::size_t i = 0; i < seekers.size(); ++i) {
    for (std::size_t j = 0; j < providers.size(); ++j) {
      if (seekers[i].size() == providers[j].weights.size() && providers[j].score(seekers[i]) >= 0.0) {
        accepted += (accepted.empty() ? "" : ", ") + ("(" + seeker_ids[i] + "," + provider_ids[j] + ")");
      }
    }
  }
  if (!accepted.empty()) {
    throw ValidationError("precondition violated: seekers already accepted at " + accepted);
  }

  std::vector<double> costs;
  costs.reserve(seekers.size() * providers.size());
  std::string infeasible;
  for (std::size_t i = 0; i < seekers.size(); ++i) {
    for (std::size_t j = 0; j < providers.size(); ++j) {
      const auto action = min_cost_action(seekers[i], providers[j], constraints, norm);
      if (!action) {
        infeasible += (infeasible.empty() ? "" : ", ") + ("(" + seeker_ids[i] + "," + provider_ids[j] + ")");
        costs.push_back(0.0);
      } else {
        costs.push_back(action->cost);
      }
    }
  }
  if (!infeasible.empty()) throw ValidationError("no recourse exists for " + infeasible);
  return CostMatrix(seekers.size(), providers.size(), std::move(costs), std::move(seeker_ids),
                    std::move(provider_ids));
}

}  // namespace recourse
