#include "recourse/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace recourse {
namespace {

std::vector<std::string> default_ids(char prefix, std::size_t count) {
  std::vector<std::string> ids;
  ids.reserve(count);
  for (std::size_t i = 0; i < count; ++i) ids.push_back(prefix + std::to_string(i + 1));
  return ids;
}

void check_ids(std::vector<std::string>& ids, char prefix, std::size_t count, const char* what) {
  if (ids.empty()) {
    ids = default_ids(prefix, count);
    return;
  }
  if (ids.size() != count) {
    throw ValidationError(std::string(what) + " id count " + std::to_string(ids.size()) +
                          " does not match dimension " + std::to_string(count));
  }
  std::set<std::string> seen(ids.begin(), ids.end());
  if (seen.size() != ids.size()) throw ValidationError(std::string("duplicate ") + what + " id");
}

void check_shape(std::size_t n, std::size_t m, std::size_t entries) {
  if (n == 0 || m == 0) throw ValidationError("matrix must have at least one seeker and one provider");
  if (entries != n * m) {
    throw ValidationError("grid has " + std::to_string(entries) + " entries, expected " +
                          std::to_string(n) + "x" + std::to_string(m));
  }
}

std::vector<double> flatten(const std::vector<std::vector<double>>& rows, std::size_t& m) {
  m = rows.empty() ? 0 : rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * m);
  for (const auto& row : rows) {
    if (row.size() != m) throw ValidationError("ragged matrix rows");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return flat;
}

}  // namespace

CostMatrix::CostMatrix(std::size_t n_seekers, std::size_t n_providers, std::vector<double> costs,
                       std::vector<std::string> seeker_ids, std::vector<std::string> provider_ids)
    : n_(n_seekers),
      m_(n_providers),
      costs_(std::move(costs)),
      seeker_ids_(std::move(seeker_ids)),
      provider_ids_(std::move(provider_ids)) {
  check_shape(n_, m_, costs_.size());
  for (std::size_t e = 0; e < costs_.size(); ++e) {
    if (!std::isfinite(costs_[e]) || costs_[e] < 0.0) {
      throw ValidationError("cost entry (" + std::to_string(e / m_) + "," + std::to_string(e % m_) +
                            ") must be finite and >= 0");
    }
  }
  check_ids(seeker_ids_, 's', n_, "seeker");
  check_ids(provider_ids_, 'p', m_, "provider");
}

CostMatrix CostMatrix::from_rows(const std::vector<std::vector<double>>& rows,
                                 std::vector<std::string> seeker_ids,
                                 std::vector<std::string> provider_ids) {
  std::size_t m = 0;
  auto flat = flatten(rows, m);
  return CostMatrix(rows.size(), m, std::move(flat), std::move(seeker_ids), std::move(provider_ids));
}

WeightMatrix::WeightMatrix(std::size_t n_seekers, std::size_t n_providers,
                           std::vector<double> weights, double gamma,
                           std::vector<std::string> seeker_ids,
                           std::vector<std::string> provider_ids)
    : n_(n_seekers),
      m_(n_providers),
      weights_(std::move(weights)),
      gamma_(gamma),
      seeker_ids_(std::move(seeker_ids)),
      provider_ids_(std::move(provider_ids)) {
  check_shape(n_, m_, weights_.size());
  if (!std::isfinite(gamma_) || gamma_ <= 0.0) throw ValidationError("gamma must be finite and > 0");
  for (std::size_t e = 0; e < weights_.size(); ++e) {
    const double w = weights_[e];
    if (!(w > 0.0 && w <= 1.0)) {
      throw ValidationError("weight entry (" + std::to_string(e / m_) + "," +
                            std::to_string(e % m_) + ") must lie in (0, 1]");
    }
  }
  check_ids(seeker_ids_, 's', n_, "seeker");
  check_ids(provider_ids_, 'p', m_, "provider");
}

WeightMatrix WeightMatrix::from_rows(const std::vector<std::vector<double>>& rows, double gamma,
                                     std::vector<std::string> seeker_ids,
                                     std::vector<std::string> provider_ids) {
  std::size_t m = 0;
  auto flat = flatten(rows, m);
  return WeightMatrix(rows.size(), m, std::move(flat), gamma, std::move(seeker_ids),
                      std::move(provider_ids));
}

std::size_t WeightMatrix::row_argmax(std::size_t i) const {
  const double* row = weights_.data() + i * m_;
  std::size_t best = 0;
  for (std::size_t j = 1; j < m_; ++j) {
    if (row[j] > row[best]) best = j;
  }
  return best;
}

WeightMatrix WeightMatrix::permute_providers(const std::vector<std::size_t>& order) const {
  if (order.size() != m_) throw ValidationError("permutation length must equal provider count");
  std::vector<double> w(weights_.size());
  std::vector<std::string> ids(m_);
  for (std::size_t c = 0; c < m_; ++c) {
    if (order[c] >= m_) throw ValidationError("permutation index out of range");
    ids[c] = provider_ids_[order[c]];
    for (std::size_t i = 0; i < n_; ++i) w[i * m_ + c] = weights_[i * m_ + order[c]];
  }
  WeightMatrix out(n_, m_, std::move(w), gamma_, seeker_ids_, std::move(ids));
  out.transform_ = transform_;
  return out;
}

CapacityVector::CapacityVector(std::vector<int> capacities) : caps_(std::move(capacities)) {
  for (std::size_t j = 0; j < caps_.size(); ++j) {
    if (caps_[j] < 0) throw ValidationError("capacity of provider " + std::to_string(j) + " is negative");
  }
}

long long CapacityVector::total() const {
  return std::accumulate(caps_.begin(), caps_.end(), 0LL);
}

std::string to_string(const CapacityVector& k) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < k.size(); ++j) os << (j ? "," : "") << k[j];
  os << ')';
  return os.str();
}

Matching Matching::from_pairs(std::size_t n_seekers,
                              const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Matching out(n_seekers);
  for (auto [i, j] : pairs) {
    if (i >= n_seekers) throw ValidationError("matching pair names unknown seeker " + std::to_string(i));
    if (out[i]) {
      throw ValidationError("matching constraint violated: seeker " + std::to_string(i) +
                            " assigned twice");
    }
    out.assign(i, j);
  }
  return out;
}

std::size_t Matching::matched_count() const {
  return static_cast<std::size_t>(
      std::count_if(assignment_.begin(), assignment_.end(), [](const auto& a) { return a.has_value(); }));
}

std::vector<int> Matching::loads(std::size_t n_providers) const {
  std::vector<int> load(n_providers, 0);
  for (const auto& a : assignment_) {
    if (a && *a < n_providers) ++load[*a];
  }
  return load;
}

PenaltyConfig::PenaltyConfig(std::vector<double> b, CapacityVector k_hat)
    : betas(std::move(b)), initial_capacities(std::move(k_hat)) {
  if (betas.size() != initial_capacities.size()) {
    throw ValidationError("beta count " + std::to_string(betas.size()) +
                          " does not match initial capacity count " +
                          std::to_string(initial_capacities.size()));
  }
  for (double beta : betas) {
    if (!std::isfinite(beta) || beta < 0.0) throw ValidationError("every beta must be finite and >= 0");
  }
}

PenaltyConfig PenaltyConfig::uniform(double beta, CapacityVector k_hat) {
  std::vector<double> betas(k_hat.size(), beta);
  return PenaltyConfig(std::move(betas), std::move(k_hat));
}

double PenaltyConfig::penalty_for(const CapacityVector& k) const {
  if (k.size() != betas.size()) throw ValidationError("capacity length does not match beta count");
  double total = 0.0;
  for (std::size_t j = 0; j < k.size(); ++j) {
    total += betas[j] * std::abs(k[j] - initial_capacities[j]);
  }
  return total;
}

long long PenaltyConfig::deviation(const CapacityVector& k) const {
  long long total = 0;
  for (std::size_t j = 0; j < k.size(); ++j) total += std::abs(k[j] - initial_capacities[j]);
  return total;
}

double WelfareReport::pct_of_individual() const {
  if (individual_welfare <= 0.0) return 100.0;
  return 100.0 * social_welfare / individual_welfare;
}

double individual_welfare(const WeightMatrix& w) {
  double total = 0.0;
  for (std::size_t i = 0; i < w.n_seekers(); ++i) total += w.row_max(i);
  return total;
}

double social_welfare(const WeightMatrix& w, const Matching& matching) {
  double total = 0.0;
  for (std::size_t i = 0; i < matching.n_seekers(); ++i) {
    if (const auto& j = matching[i]) total += w(i, *j);
  }
  return total;
}

void check_feasible(const WeightMatrix& w, const Matching& matching, const CapacityVector& k) {
  if (k.size() != w.n_providers()) {
    throw ValidationError("capacity vector has " + std::to_string(k.size()) + " entries, expected " +
                          std::to_string(w.n_providers()));
  }
  if (matching.n_seekers() != w.n_seekers()) {
    throw ValidationError("matching covers " + std::to_string(matching.n_seekers()) +
                          " seekers, expected " + std::to_string(w.n_seekers()));
  }
  for (std::size_t i = 0; i < matching.n_seekers(); ++i) {
    if (matching[i] && *matching[i] >= w.n_providers()) {
      throw ValidationError("seeker " + std::to_string(i) + " assigned to unknown provider");
    }
  }
  const auto load = matching.loads(w.n_providers());
  for (std::size_t j = 0; j < load.size(); ++j) {
    if (load[j] > k[j]) {
      throw ValidationError("capacity constraint violated: provider " + w.provider_ids()[j] +
                            " has load " + std::to_string(load[j]) + " > capacity " +
                            std::to_string(k[j]));
    }
  }
}

WelfareReport evaluate(const WeightMatrix& w, const Matching& matching, const CapacityVector& k,
                       const std::optional<PenaltyConfig>& penalty) {
  check_feasible(w, matching, k);
  WelfareReport r;
  r.individual_welfare = individual_welfare(w);
  r.social_welfare = social_welfare(w, matching);
  r.welfare_gap = r.individual_welfare - r.social_welfare;
  r.matched_count = matching.matched_count();
  r.capacity_used = k;
  r.capacity_delta.assign(k.size(), 0);
  if (penalty) {
    if (penalty->betas.size() != k.size()) {
      throw ValidationError("penalty config covers " + std::to_string(penalty->betas.size()) +
                            " providers, expected " + std::to_string(k.size()));
    }
    r.penalty = penalty->penalty_for(k);
    for (std::size_t j = 0; j < k.size(); ++j) {
      r.capacity_delta[j] = k[j] - penalty->initial_capacities[j];
    }
  }
  r.objective = r.social_welfare - r.penalty;
  r.matching = matching;
  return r;
}

}  // namespace recourse
