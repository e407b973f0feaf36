#include "recourse/penalized.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "recourse/matching.hpp"

namespace recourse {
namespace {

void check_inputs(const WeightMatrix& w, const PenaltyConfig& penalty, long long total_capacity) {
  if (penalty.betas.size() != w.n_providers()) {
    throw ValidationError("penalty config covers " + std::to_string(penalty.betas.size()) +
                          " providers, expected " + std::to_string(w.n_providers()));
  }
  if (total_capacity < 0) throw ValidationError("total capacity must be >= 0");
}

// Inner matching solves keyed by capacity with every entry capped at n, since
// slots beyond n are never used.
class MatchingCache {
 public:
  explicit MatchingCache(const WeightMatrix& w) : w_(w) {}

  const Matching& matching_for(const CapacityVector& k) {
    std::vector<int> capped(k.values());
    const int n = static_cast<int>(w_.n_seekers());
    for (int& c : capped) c = std::min(c, n);
    CapacityVector key(std::move(capped));
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(key, solve_matching(w_, key).first).first;
    }
    return it->second;
  }

 private:
  const WeightMatrix& w_;
  std::map<CapacityVector, Matching> cache_;
};

struct Candidate {
  double objective;
  long long deviation;
  CapacityVector capacity;
};

// True when a should replace b as incumbent.
bool preferred(const Candidate& a, const Candidate& b) {
  if (a.objective > b.objective + kWelfareTolerance) return true;
  if (a.objective < b.objective - kWelfareTolerance) return false;
  if (a.deviation != b.deviation) return a.deviation < b.deviation;
  return a.capacity < b.capacity;
}

PenalizedResult finish(const WeightMatrix& w, const PenaltyConfig& penalty, CapacityVector capacity,
                       Matching matching) {
  auto report = evaluate(w, matching, capacity, penalty);
  return {std::move(capacity), std::move(matching), std::move(report)};
}

}  // namespace

std::uint64_t composition_count(std::size_t m, long long total) {
  if (m == 0) return total == 0 ? 1 : 0;
  if (total < 0) return 0;
  // C(total + r, r) with r = m - 1, built incrementally; each prefix product
  // is itself a binomial so the division is exact.
  const std::uint64_t r = m - 1;
  std::uint64_t result = 1;
  for (std::uint64_t t = 1; t <= r; ++t) {
    const std::uint64_t num = static_cast<std::uint64_t>(total) + t;
    if (result > std::numeric_limits<std::uint64_t>::max() / num) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result = result * num / t;
  }
  return result;
}

void for_each_composition(std::size_t m, long long total,
                          const std::function<void(const CapacityVector&)>& visit) {
  if (m == 0) throw ValidationError("composition length must be >= 1");
  if (total < 0) throw ValidationError("total capacity must be >= 0");
  const auto count = composition_count(m, total);
  if (count > kMaxCompositions) {
    throw SizeLimitError(std::to_string(count) + " capacity vectors exceed the enumeration limit of " +
                         std::to_string(kMaxCompositions) + "; use local search instead");
  }
  std::vector<int> parts(m, 0);
  auto recurse = [&](auto&& self, std::size_t j, int left) -> void {
    if (j + 1 == m) {
      parts[j] = left;
      visit(CapacityVector(parts));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      parts[j] = v;
      self(self, j + 1, left - v);
    }
  };
  recurse(recurse, 0, static_cast<int>(total));
}

std::vector<CapacityVector> enumerate_capacities(std::size_t m, long long total) {
  std::vector<CapacityVector> out;
  for_each_composition(m, total, [&](const CapacityVector& k) { out.push_back(k); });
  return out;
}

PenalizedResult solve_penalized(const WeightMatrix& w, const PenaltyConfig& penalty,
                                long long total_capacity) {
  check_inputs(w, penalty, total_capacity);
  MatchingCache cache(w);
  std::optional<Candidate> best;
  for_each_composition(w.n_providers(), total_capacity, [&](const CapacityVector& k) {
    const double welfare = social_welfare(w, cache.matching_for(k));
    Candidate c{welfare - penalty.penalty_for(k), penalty.deviation(k), k};
    if (!best || preferred(c, *best)) best = std::move(c);
  });
  Matching matching = cache.matching_for(best->capacity);
  return finish(w, penalty, best->capacity, std::move(matching));
}

PenalizedResult local_search_penalized(const WeightMatrix& w, const PenaltyConfig& penalty,
                                       long long total_capacity, const CapacityVector& start) {
  check_inputs(w, penalty, total_capacity);
  if (start.size() != w.n_providers()) throw ValidationError("start capacity has wrong length");
  if (start.total() != total_capacity) {
    throw ValidationError("start capacity sums to " + std::to_string(start.total()) +
                          ", expected " + std::to_string(total_capacity));
  }
  const std::size_t m = w.n_providers();
  MatchingCache cache(w);
  auto score = [&](const CapacityVector& k) {
    return Candidate{social_welfare(w, cache.matching_for(k)) - penalty.penalty_for(k),
                     penalty.deviation(k), k};
  };

  Candidate current = score(start);
  while (true) {
    std::optional<Candidate> step;
    for (std::size_t a = 0; a < m; ++a) {
      if (current.capacity[a] == 0) continue;
      for (std::size_t b = 0; b < m; ++b) {
        if (a == b) continue;
        std::vector<int> next(current.capacity.values());
        --next[a];
        ++next[b];
        Candidate c = score(CapacityVector(std::move(next)));
        if (c.objective <= current.objective + kWelfareTolerance) continue;
        // Among equal-objective moves keep the smaller deviation; on a full
        // tie the earlier (a, b) pair wins because it was seen first.
        if (!step || c.objective > step->objective + kWelfareTolerance ||
            (c.objective >= step->objective - kWelfareTolerance && c.deviation < step->deviation)) {
          step = std::move(c);
        }
      }
    }
    if (!step) break;
    current = std::move(*step);
  }
  Matching matching = cache.matching_for(current.capacity);
  return finish(w, penalty, current.capacity, std::move(matching));
}

}  // namespace recourse
