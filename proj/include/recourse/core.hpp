#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace recourse {

// Absolute tolerance used for every welfare comparison.
inline constexpr double kWelfareTolerance = 1e-9;

/// Raised when an input violates a domain invariant. The message names the
/// violated constraint.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an exhaustive routine would exceed its enumeration guard.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Dense n x m grid of recourse costs between seekers (rows) and providers
/// (columns). Entries are finite and nonnegative.
class CostMatrix {
 public:
  CostMatrix(std::size_t n_seekers, std::size_t n_providers,
             std::vector<double> costs, std::vector<std::string> seeker_ids = {},
             std::vector<std::string> provider_ids = {});
  static CostMatrix from_rows(const std::vector<std::vector<double>>& rows,
                              std::vector<std::string> seeker_ids = {},
                              std::vector<std::string> provider_ids = {});

  std::size_t n_seekers() const { return n_; }
  std::size_t n_providers() const { return m_; }
  double operator()(std::size_t i, std::size_t j) const { return costs_[i * m_ + j]; }
  const std::vector<double>& values() const { return costs_; }
  const std::vector<std::string>& seeker_ids() const { return seeker_ids_; }
  const std::vector<std::string>& provider_ids() const { return provider_ids_; }

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<double> costs_;
  std::vector<std::string> seeker_ids_;
  std::vector<std::string> provider_ids_;
};

/// Dense n x m grid of edge weights in (0, 1].
class WeightMatrix {
 public:
  WeightMatrix(std::size_t n_seekers, std::size_t n_providers,
               std::vector<double> weights, double gamma = 1.0,
               std::vector<std::string> seeker_ids = {},
               std::vector<std::string> provider_ids = {});
  static WeightMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                double gamma = 1.0,
                                std::vector<std::string> seeker_ids = {},
                                std::vector<std::string> provider_ids = {});

  std::size_t n_seekers() const { return n_; }
  std::size_t n_providers() const { return m_; }
  double operator()(std::size_t i, std::size_t j) const { return weights_[i * m_ + j]; }
  const std::vector<double>& values() const { return weights_; }
  double gamma() const { return gamma_; }
  const std::string& transform() const { return transform_; }
  const std::vector<std::string>& seeker_ids() const { return seeker_ids_; }
  const std::vector<std::string>& provider_ids() const { return provider_ids_; }

  // Entries that underflowed during a transform and were clamped.
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Best provider for seeker i; ties go to the lowest provider index.
  std::size_t row_argmax(std::size_t i) const;
  double row_max(std::size_t i) const { return (*this)(i, row_argmax(i)); }

  /// Column-permuted copy; new column c is old column order[c].
  WeightMatrix permute_providers(const std::vector<std::size_t>& order) const;

 private:
  friend WeightMatrix to_weights(const CostMatrix&, double);

  std::size_t n_;
  std::size_t m_;
  std::vector<double> weights_;
  double gamma_;
  std::string transform_ = "exponential";
  std::vector<std::string> seeker_ids_;
  std::vector<std::string> provider_ids_;
  std::vector<std::string> warnings_;
};

/// Per-provider slot counts.
class CapacityVector {
 public:
  CapacityVector() = default;
  explicit CapacityVector(std::vector<int> capacities);
  static CapacityVector zeros(std::size_t m) { return CapacityVector(std::vector<int>(m, 0)); }

  std::size_t size() const { return caps_.size(); }
  int operator[](std::size_t j) const { return caps_[j]; }
  long long total() const;
  const std::vector<int>& values() const { return caps_; }

  friend bool operator==(const CapacityVector&, const CapacityVector&) = default;
  friend auto operator<=>(const CapacityVector& a, const CapacityVector& b) {
    return a.caps_ <=> b.caps_;
  }

 private:
  std::vector<int> caps_;
};

std::string to_string(const CapacityVector& k);

/// Seeker -> provider assignment; each seeker has at most one provider.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::size_t n_seekers) : assignment_(n_seekers) {}
  explicit Matching(std::vector<std::optional<std::size_t>> assignment)
      : assignment_(std::move(assignment)) {}

  /// Builds from explicit (seeker, provider) pairs; rejects a seeker listed
  /// twice (matching constraint).
  static Matching from_pairs(std::size_t n_seekers,
                             const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

  std::size_t n_seekers() const { return assignment_.size(); }
  const std::optional<std::size_t>& operator[](std::size_t i) const { return assignment_[i]; }
  void assign(std::size_t seeker, std::size_t provider) { assignment_[seeker] = provider; }
  void unassign(std::size_t seeker) { assignment_[seeker].reset(); }
  const std::vector<std::optional<std::size_t>>& assignment() const { return assignment_; }

  std::size_t matched_count() const;
  std::vector<int> loads(std::size_t n_providers) const;

 private:
  std::vector<std::optional<std::size_t>> assignment_;
};

struct PenaltyConfig {
  PenaltyConfig(std::vector<double> betas, CapacityVector initial_capacities);
  static PenaltyConfig uniform(double beta, CapacityVector initial_capacities);

  double penalty_for(const CapacityVector& k) const;
  long long deviation(const CapacityVector& k) const;

  std::vector<double> betas;
  CapacityVector initial_capacities;
};

struct WelfareReport {
  double individual_welfare = 0.0;
  double social_welfare = 0.0;
  double welfare_gap = 0.0;
  double penalty = 0.0;
  double objective = 0.0;
  std::size_t matched_count = 0;
  CapacityVector capacity_used;
  std::vector<int> capacity_delta;
  Matching matching;

  /// Social welfare as a percentage of individual welfare (100 when both are 0).
  double pct_of_individual() const;
};

/// Sum over seekers of their best edge weight.
double individual_welfare(const WeightMatrix& w);

/// Sum of matched edge weights; unmatched seekers contribute zero.
double social_welfare(const WeightMatrix& w, const Matching& matching);

/// Throws ValidationError if the matching violates the matching or capacity
/// constraints for k.
void check_feasible(const WeightMatrix& w, const Matching& matching, const CapacityVector& k);

WelfareReport evaluate(const WeightMatrix& w, const Matching& matching, const CapacityVector& k,
                       const std::optional<PenaltyConfig>& penalty = std::nullopt);

}  // namespace recourse
