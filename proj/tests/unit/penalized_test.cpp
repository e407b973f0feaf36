#include <random>
#include <set>

#include "doctest.h"
#include "recourse/capacity.hpp"
#include "recourse/matching.hpp"
#include "recourse/penalized.hpp"
#include "support/oracles.hpp"

using namespace recourse;
namespace rt = recourse::testing;

TEST_CASE("composition enumeration") {
  CHECK(enumerate_capacities(2, 2) ==
        std::vector<CapacityVector>{CapacityVector({0, 2}), CapacityVector({1, 1}), CapacityVector({2, 0})});
  CHECK(enumerate_capacities(1, 5) == std::vector<CapacityVector>{CapacityVector({5})});

  const auto all = enumerate_capacities(4, 8);
  CHECK(all.size() == 165);
  CHECK(composition_count(4, 8) == 165);
  CHECK(std::is_sorted(all.begin(), all.end()));
  CHECK(std::set<CapacityVector>(all.begin(), all.end()).size() == all.size());
  for (const auto& k : all) CHECK(k.total() == 8);

  CHECK(composition_count(4, 15) == 816);
  CHECK(composition_count(3, 0) == 1);
  CHECK_THROWS_AS(enumerate_capacities(0, 1), ValidationError);
  CHECK_THROWS_AS(enumerate_capacities(30, 30), SizeLimitError);
}

TEST_CASE("Two-Moon l-infinity redistribution") {
  const auto w = rt::two_moon_linf();
  const auto p = PenaltyConfig::uniform(0.03, CapacityVector({2, 4, 1, 1}));
  const auto r = solve_penalized(w, p, 8);
  CHECK(r.capacity == CapacityVector({1, 3, 1, 3}));
  CHECK(std::abs(r.report.social_welfare - 5.97) <= 0.005);
  CHECK(std::abs(r.report.pct_of_individual() - 99.38) <= 0.1);
  CHECK(r.report.penalty == doctest::Approx(0.12));
  CHECK(r.report.capacity_delta == std::vector<int>{-1, -1, 0, 2});
  CHECK(std::abs(r.report.objective - rt::penalized_oracle(w, p.betas, {2, 4, 1, 1}, 8)) <= 1e-9);
}

TEST_CASE("Two-Moon l1 redistribution resolves its tie by smallest change") {
  // (1,2,1,6) and (0,2,1,7) share the optimal objective 5.575; the first
  // moves four units, the second six.
  const auto w = rt::two_moon_l1();
  const auto p = PenaltyConfig::uniform(0.02, CapacityVector({3, 2, 1, 4}));
  const auto r = solve_penalized(w, p, 10);
  CHECK(r.capacity == CapacityVector({1, 2, 1, 6}));
  CHECK(std::abs(r.report.objective - 5.575) <= 1e-9);
  CHECK(std::abs(r.report.social_welfare - 5.66) <= 0.005 + kWelfareTolerance);
}

TEST_CASE("beta limits") {
  const auto w = rt::two_moon_linf();
  const CapacityVector k_hat({2, 4, 1, 1});
  const auto free = solve_penalized(w, PenaltyConfig::uniform(0.0, k_hat), 8);
  CHECK(std::abs(free.report.objective - solve_matching(w, optimal_capacity(w, 8)).second.social_welfare) <= 1e-9);
  const auto frozen = solve_penalized(w, PenaltyConfig::uniform(1e6, k_hat), 8);
  CHECK(frozen.capacity == k_hat);
  CHECK(std::abs(frozen.report.social_welfare - solve_matching(w, k_hat).second.social_welfare) <= 1e-9);
}

TEST_CASE("budget may differ from the initial total") {
  const auto w = rt::two_moon_linf();
  const auto r = solve_penalized(w, PenaltyConfig::uniform(0.03, CapacityVector({2, 4, 1, 1})), 6);
  CHECK(r.capacity.total() == 6);
}

TEST_CASE("input validation") {
  const auto w = rt::two_moon_linf();
  CHECK_THROWS_AS(solve_penalized(w, PenaltyConfig::uniform(0.1, CapacityVector({1, 1})), 2), ValidationError);
  CHECK_THROWS_AS(solve_penalized(w, PenaltyConfig::uniform(0.1, CapacityVector({1, 1, 1, 1})), -1),
                  ValidationError);
  const auto p = PenaltyConfig::uniform(0.1, CapacityVector({2, 4, 1, 1}));
  CHECK_THROWS_AS(local_search_penalized(w, p, 8, CapacityVector({1, 1, 1, 1})), ValidationError);
}

TEST_CASE("exact solver matches the independent oracle") {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> beta(0.0, 0.2);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 1 + rng() % 6, m = 1 + rng() % 4;
    const auto w = rt::random_weights(rng, n, m);
    const int total = static_cast<int>(rng() % (n + 2));
    const auto k_hat = rt::random_capacities(rng, m, 3);
    std::vector<double> betas(m);
    for (auto& b : betas) b = beta(rng);
    const auto r = solve_penalized(w, PenaltyConfig(betas, k_hat), total);
    CHECK(r.capacity.total() == total);
    CHECK(std::abs(r.report.objective - rt::penalized_oracle(w, betas, k_hat.values(), total)) <= 1e-9);
  }
}

TEST_CASE("sandwich between fixed and free capacities") {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> beta(0.0, 0.3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 6, m = 2 + rng() % 3;
    const auto w = rt::random_weights(rng, n, m);
    const auto k_hat = rt::random_composition(rng, m, static_cast<int>(n));
    const auto r = solve_penalized(w, PenaltyConfig::uniform(beta(rng), k_hat), k_hat.total());
    const double fixed = solve_matching(w, k_hat).second.social_welfare;
    const double free = solve_matching(w, optimal_capacity(w, k_hat.total())).second.social_welfare;
    CHECK(r.report.social_welfare >= fixed - 1e-9);
    CHECK(r.report.social_welfare <= free + 1e-9);
  }
}

TEST_CASE("raising beta never raises the penalty or the welfare") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + rng() % 5, m = 2 + rng() % 3;
    const auto w = rt::random_weights(rng, n, m);
    const auto k_hat = rt::random_composition(rng, m, static_cast<int>(n));
    double last_penalty = std::numeric_limits<double>::infinity();
    double last_welfare = std::numeric_limits<double>::infinity();
    double last_beta = 0.0;
    for (double b : {0.001, 0.01, 0.05, 0.1, 0.3, 1.0}) {
      const auto r = solve_penalized(w, PenaltyConfig::uniform(b, k_hat), k_hat.total());
      CHECK(r.report.social_welfare <= last_welfare + 1e-9);
      if (std::isfinite(last_penalty)) {
        // Compare deviations at a common scale.
        CHECK(r.report.penalty / b <= last_penalty / last_beta + 1e-9);
      }
      last_penalty = r.report.penalty;
      last_welfare = r.report.social_welfare;
      last_beta = b;
    }
  }
}

TEST_CASE("local search") {
  const auto w = rt::two_moon_linf();
  const auto p = PenaltyConfig::uniform(0.03, CapacityVector({2, 4, 1, 1}));
  const auto exact = solve_penalized(w, p, 8);

  SUBCASE("exact optimum is a fixed point") {
    const auto r = local_search_penalized(w, p, 8, exact.capacity);
    CHECK(r.capacity == exact.capacity);
  }
  SUBCASE("reaches the optimum from the initial capacities") {
    const auto r = local_search_penalized(w, p, 8, CapacityVector({2, 4, 1, 1}));
    CHECK(std::abs(r.report.objective - exact.report.objective) <= 1e-9);
  }
  SUBCASE("never worse than its start") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 4 + rng() % 8, m = 2 + rng() % 3;
      const auto wr = rt::random_weights(rng, n, m);
      const auto start = rt::random_composition(rng, m, static_cast<int>(n));
      const auto pr = PenaltyConfig::uniform(0.05, rt::random_composition(rng, m, static_cast<int>(n)));
      const auto r = local_search_penalized(wr, pr, start.total(), start);
      const double start_obj = solve_matching(wr, start).second.social_welfare - pr.penalty_for(start);
      CHECK(r.report.objective >= start_obj - 1e-9);
      CHECK(r.capacity.total() == start.total());
    }
  }
}

TEST_CASE("local search campaign against enumeration") {
  std::mt19937_64 rng(2025);
  std::uniform_real_distribution<double> beta(0.0, 0.1);
  int hits = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    const std::size_t n = 12, m = 4;
    const auto w = rt::random_weights(rng, n, m);
    const auto k_hat = rt::random_composition(rng, m, static_cast<int>(n));
    const auto p = PenaltyConfig::uniform(beta(rng), k_hat);
    const auto local = local_search_penalized(w, p, 12, optimal_capacity(w, 12));
    const auto exact = solve_penalized(w, p, 12);
    if (std::abs(local.report.objective - exact.report.objective) <= 1e-9) {
      ++hits;
    } else {
      MESSAGE("trial " << trial << ": local " << local.report.objective << " vs exact "
                       << exact.report.objective);
    }
  }
  CHECK(hits >= trials * 95 / 100);
}
