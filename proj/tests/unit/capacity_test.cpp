#include <random>

#include "doctest.h"
#include "recourse/capacity.hpp"
#include "recourse/matching.hpp"
#include "support/oracles.hpp"

using namespace recourse;
namespace rt = recourse::testing;

TEST_CASE("budget distribution on the Two-Moon matrices") {
  CHECK(optimal_capacity(rt::two_moon_linf(), 8) == CapacityVector({0, 2, 2, 4}));
  CHECK(optimal_capacity(rt::two_moon_l1(), 10) == CapacityVector({0, 3, 0, 7}));
  CHECK(optimal_capacity(rt::two_moon_linf(), 0) == CapacityVector::zeros(4));
}

TEST_CASE("partial budgets follow the largest best edges") {
  // Best edges in order: s3 (0.949, p4), s5 (0.896, p4), s6 (0.834, p4).
  CHECK(optimal_capacity(rt::two_moon_linf(), 3) == CapacityVector({0, 0, 0, 3}));
  // Next is s7 (0.765, p2).
  CHECK(optimal_capacity(rt::two_moon_linf(), 4) == CapacityVector({0, 1, 0, 3}));
}

TEST_CASE("surplus beyond the seeker count goes to the first provider") {
  const auto k = optimal_capacity(rt::two_moon_linf(), 11);
  CHECK(k == CapacityVector({3, 2, 2, 4}));
  CHECK(k.total() == 11);
}

TEST_CASE("equal best weights keep seeker order") {
  const auto w = WeightMatrix::from_rows({{0.2, 0.8}, {0.8, 0.1}, {0.5, 0.4}});
  CHECK(optimal_capacity(w, 1) == CapacityVector({0, 1}));
  CHECK(optimal_capacity(w, 2) == CapacityVector({1, 1}));
}

TEST_CASE("negative budget is rejected") {
  CHECK_THROWS_AS(optimal_capacity(rt::two_moon_linf(), -1), ValidationError);
  CHECK_THROWS_AS(welfare_curve(rt::two_moon_linf(), -1), ValidationError);
}

TEST_CASE("curve matches sorted best-edge prefix sums") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 9, m = 1 + rng() % 5;
    const auto w = rt::random_weights(rng, n, m);
    const auto curve = welfare_curve(w, static_cast<long long>(n * m));
    REQUIRE(curve.size() == n * m + 1);
    CHECK(curve.front().welfare == 0.0);
    for (const auto& p : curve) {
      CHECK(p.capacity.total() == p.total_capacity);
      CHECK(std::abs(p.welfare - rt::top_row_maxima_sum(w.values(), n, m, p.total_capacity)) <= 1e-9);
    }
    CHECK(std::abs(curve[n].welfare - individual_welfare(w)) <= 1e-9);
    for (std::size_t t = 1; t < curve.size(); ++t) {
      CHECK(curve[t].welfare >= curve[t - 1].welfare - kWelfareTolerance);
      if (t + 1 < curve.size()) {
        CHECK(curve[t + 1].welfare - curve[t].welfare <= curve[t].welfare - curve[t - 1].welfare + kWelfareTolerance);
      }
      if (t >= n) CHECK(std::abs(curve[t].welfare - curve[n].welfare) <= kWelfareTolerance);
    }
  }
}

TEST_CASE("distribution beats every alternative with the same budget") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 6, m = 1 + rng() % 4;
    const auto w = rt::random_weights(rng, n, m);
    const int budget = static_cast<int>(rng() % (n + 2));
    const double ours = solve_matching(w, optimal_capacity(w, budget)).second.social_welfare;
    rt::compositions(m, budget, [&](const std::vector<int>& k) {
      CHECK(ours >= brute_force_matching(w, CapacityVector(k)).second - 1e-9);
    });
  }
}
