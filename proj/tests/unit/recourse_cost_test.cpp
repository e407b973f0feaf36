#include <random>

#include "doctest.h"
#include "recourse/recourse_cost.hpp"
#include "support/oracles.hpp"

using namespace recourse;

namespace {
const auto kFree2 = ActionConstraints::unconstrained(2);
}

TEST_CASE("axis-aligned boundary") {
  const LinearProvider h({1.0, 0.0}, -1.0, "h");
  const auto a = min_cost_action({0.0, 0.0}, h, kFree2, Norm::Linf);
  REQUIRE(a);
  CHECK(a->cost == doctest::Approx(1.0 + kFlipMargin).epsilon(1e-12));
  CHECK(a->delta[0] == doctest::Approx(1.0 + kFlipMargin).epsilon(1e-12));
  CHECK(a->delta[1] == 0.0);
}

TEST_CASE("diagonal boundary under both norms") {
  const LinearProvider h({1.0, 1.0}, -1.0, "h");
  const auto l1 = min_cost_action({0.0, 0.0}, h, kFree2, Norm::L1);
  const auto linf = min_cost_action({0.0, 0.0}, h, kFree2, Norm::Linf);
  REQUIRE(l1);
  REQUIRE(linf);
  CHECK(l1->cost == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(linf->cost == doctest::Approx(0.5).epsilon(1e-5));
  // Cross-check against a 1e-3 lattice over [-2, 2]^2.
  const std::vector<double> lo{-2.0, -2.0}, hi{2.0, 2.0};
  CHECK(std::abs(l1->cost - recourse::testing::grid_search_cost_2d({0, 0}, h.weights, h.bias, lo, hi, true, 1e-3,
                                                                   kFlipMargin)) <= 2e-3);
  CHECK(std::abs(linf->cost - recourse::testing::grid_search_cost_2d({0, 0}, h.weights, h.bias, lo, hi, false,
                                                                     1e-3, kFlipMargin)) <= 1e-3 + 1e-9);
}

TEST_CASE("only a useless coordinate mutable") {
  const LinearProvider h({1.0, 0.0}, -1.0, "h");
  ActionConstraints a;
  a.mutable_features = {false, true};
  CHECK_FALSE(min_cost_action({0.0, 0.0}, h, a, Norm::Linf));
  CHECK_FALSE(min_cost_action({0.0, 0.0}, h, a, Norm::L1));
}

TEST_CASE("bounds that stop short of the boundary") {
  const LinearProvider h({1.0, 1.0}, -3.0, "h");
  ActionConstraints a;
  a.lower = {-1.0, -1.0};
  a.upper = {1.0, 1.0};
  CHECK_FALSE(min_cost_action({0.0, 0.0}, h, a, Norm::Linf));
  CHECK_FALSE(min_cost_action({0.0, 0.0}, h, a, Norm::L1));
}

TEST_CASE("precondition and shape errors") {
  const LinearProvider h({1.0, 0.0}, 1.0, "h");
  CHECK_THROWS_AS(min_cost_action({0.0, 0.0}, h, kFree2, Norm::L1), ValidationError);
  CHECK_THROWS_AS(min_cost_action({0.0}, h, kFree2, Norm::L1), ValidationError);
  CHECK_THROWS_AS(LinearProvider({0.0, 0.0}, 1.0, "zero"), ValidationError);
  ActionConstraints bad;
  bad.lower = {1.0, 0.0};
  bad.upper = {0.0, 0.0};
  CHECK_THROWS_AS(min_cost_action({0.0, 0.0}, LinearProvider({1.0, 0.0}, -1.0), bad, Norm::L1), ValidationError);
  CHECK_THROWS_AS(parse_norm("l2"), ValidationError);
}

TEST_CASE("dual-norm closed forms without constraints") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + rng() % 6;
    std::vector<double> w(d), x(d);
    for (auto& v : w) v = g(rng);
    for (auto& v : x) v = g(rng);
    double s = 0.0;
    double l1 = 0.0, linf = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      s += w[k] * x[k];
      l1 += std::abs(w[k]);
      linf = std::max(linf, std::abs(w[k]));
    }
    const double bias = -s - 0.1 - std::abs(g(rng));
    const LinearProvider h(w, bias);
    const double margin = kFlipMargin - h.score(x);
    const auto a_inf = min_cost_action(x, h, ActionConstraints::unconstrained(d), Norm::Linf);
    const auto a_one = min_cost_action(x, h, ActionConstraints::unconstrained(d), Norm::L1);
    REQUIRE(a_inf);
    REQUIRE(a_one);
    CHECK(std::abs(a_inf->cost - margin / l1) <= 1e-9);
    CHECK(std::abs(a_one->cost - margin / linf) <= 1e-9);
    std::vector<double> moved(x);
    for (std::size_t k = 0; k < d; ++k) moved[k] += a_inf->delta[k];
    CHECK(h.score(moved) >= 0.0);
    for (std::size_t k = 0; k < d; ++k) moved[k] = x[k] + a_one->delta[k];
    CHECK(h.score(moved) >= 0.0);
  }
}

TEST_CASE("tightening bounds never lowers the cost") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> w{u(rng), u(rng), u(rng)};
    std::vector<double> x{u(rng), u(rng), u(rng)};
    const LinearProvider h(w, -(w[0] * x[0] + w[1] * x[1] + w[2] * x[2]) - 0.2);
    ActionConstraints loose, tight;
    loose.lower = {x[0] - 3, x[1] - 3, x[2] - 3};
    loose.upper = {x[0] + 3, x[1] + 3, x[2] + 3};
    tight.lower = {x[0] - 1, x[1] - 0.5, x[2] - 0.2};
    tight.upper = {x[0] + 0.3, x[1] + 1, x[2] + 0.4};
    for (Norm norm : {Norm::L1, Norm::Linf}) {
      const auto a = min_cost_action(x, h, loose, norm);
      const auto b = min_cost_action(x, h, tight, norm);
      if (!a) {
        CHECK_FALSE(b);
        continue;
      }
      if (b) CHECK(b->cost >= a->cost - 1e-12);
    }
  }
}

TEST_CASE("cost matrix construction") {
  const std::vector<LinearProvider> providers{LinearProvider({1.0, 0.0}, -1.0, "a"),
                                              LinearProvider({1.0, 0.0}, -1.0, "b")};
  SUBCASE("identical providers give identical columns, symmetric seekers equal costs") {
    const auto c = build_cost_matrix({{0.0, 0.5}, {0.0, -0.5}}, providers, {}, Norm::L1);
    CHECK(c(0, 0) == c(0, 1));
    CHECK(c(0, 0) == c(1, 0));
    CHECK(c.provider_ids() == std::vector<std::string>{"a", "b"});
  }
  SUBCASE("accepted seekers are listed") {
    CHECK_THROWS_WITH_AS(build_cost_matrix({{0.0, 0.0}, {2.0, 0.0}}, providers, {}, Norm::L1),
                         doctest::Contains("(s2,a)"), ValidationError);
  }
  SUBCASE("missing recourse is an error") {
    ActionConstraints a;
    a.mutable_features = {false, true};
    CHECK_THROWS_WITH_AS(build_cost_matrix({{0.0, 0.0}}, providers, a, Norm::Linf),
                         doctest::Contains("no recourse"), ValidationError);
  }
  SUBCASE("matches a lattice search on a random instance") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coord(-500, 500);
    std::vector<std::vector<double>> seekers;
    for (int i = 0; i < 5; ++i) seekers.push_back({coord(rng) * 1e-3, coord(rng) * 1e-3});
    std::vector<LinearProvider> hs;
    std::uniform_real_distribution<double> wd(0.6, 1.0);
    for (int j = 0; j < 3; ++j) hs.emplace_back(std::vector<double>{wd(rng), wd(rng)}, -1.6, "p" + std::to_string(j));
    ActionConstraints box;
    box.lower = {-1.0, -1.0};
    box.upper = {1.5, 1.5};
    const auto c = build_cost_matrix(seekers, hs, box, Norm::Linf);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const double grid = recourse::testing::grid_search_cost_2d(seekers[i], hs[j].weights, hs[j].bias, box.lower,
                                                                   box.upper, false, 1e-3, kFlipMargin);
        CHECK(std::abs(c(i, j) - grid) <= 1e-3 + 1e-9);
      }
    }
  }
}
