// Copyright 2026 The repgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <random>

#include "repgame/dynamics.hpp"
#include "repgame/errors.hpp"
#include "support.hpp"

using namespace repgame;
using repgame::testing::random_distribution;

namespace {

const StrategyMatrix kStageOne =
    StrategyMatrix::from_columns({{0.64, 0.36}, {0.35, 0.65}});

StrategyMatrix random_matrix(std::mt19937_64& rng, std::size_t nk, std::size_t na) {
  std::vector<std::vector<double>> cols;
  for (std::size_t k = 0; k < nk; ++k) cols.push_back(random_distribution(rng, na));
  return StrategyMatrix::from_columns(cols);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("strategy matrix validates its columns") {
  CHECK_THROWS_AS(StrategyMatrix::from_columns({{0.5, 0.6}}), ValidationError);
  CHECK_THROWS_AS(StrategyMatrix(2, 2, {1.0, 0.0, 1.0}), ValidationError);
  CHECK(kStageOne(1, 0) == 0.35);
}

TEST_CASE("weighted_action_marginal") {
  CHECK(weighted_action_marginal(Belief({1.0, 0.0}), kStageOne) ==
        std::vector<double>{0.64, 0.36});
  const auto xbar = weighted_action_marginal(Belief({0.5, 0.5}), kStageOne);
  CHECK(xbar[0] == doctest::Approx(0.495));
  CHECK(xbar[1] == doctest::Approx(0.505));
  const auto same = StrategyMatrix::from_columns({{0.2, 0.8}, {0.2, 0.8}});
  const auto m = weighted_action_marginal(Belief({0.3, 0.7}), same);
  CHECK(m[0] == doctest::Approx(0.2));
  CHECK(m[1] == doctest::Approx(0.8));
}

TEST_CASE("belief_update") {
  SUBCASE("bayes rule with stage-one inputs") {
    const Belief post = belief_update(Belief({0.5, 0.5}), kStageOne, 0);
    CHECK(post[0] == doctest::Approx(0.32 / 0.495));
    CHECK(post[0] == doctest::Approx(0.6465).epsilon(1e-4));
    CHECK(post[1] == doctest::Approx(0.3535).epsilon(1e-4));
  }
  SUBCASE("non-revealing columns leave the belief unchanged") {
    const auto same = StrategyMatrix::from_columns({{0.2, 0.8}, {0.2, 0.8}});
    for (std::size_t a = 0; a < 2; ++a) {
      const Belief post = belief_update(Belief({0.3, 0.7}), same, a);
      CHECK(post[0] == doctest::Approx(0.3));
    }
  }
  SUBCASE("single state stays certain") {
    const Belief post =
        belief_update(Belief({1.0}), StrategyMatrix::from_columns({{0.4, 0.6}}), 1);
    CHECK(post[0] == 1.0);
  }
  SUBCASE("impossible action is an error") {
    const auto pure = StrategyMatrix::from_columns({{1.0, 0.0}, {1.0, 0.0}});
    CHECK_THROWS_AS(belief_update(Belief({0.5, 0.5}), pure, 1), PlayError);
    CHECK_THROWS_AS(belief_update(Belief({0.5, 0.5}), pure, 2), std::out_of_range);
  }
  SUBCASE("extinguished states stay at exactly zero") {
    const Belief post = belief_update(Belief({0.0, 0.4, 0.6}),
                                      StrategyMatrix::from_columns(
                                          {{0.5, 0.5}, {0.9, 0.1}, {0.3, 0.7}}),
                                      1);
    CHECK(post[0] == 0.0);
  }
}

TEST_CASE("belief martingale over random instances") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t nk = 1 + seed % 4;
    const std::size_t na = 2 + seed % 3;
    const Belief p(random_distribution(rng, nk));
    const StrategyMatrix x = random_matrix(rng, nk, na);
    const auto xbar = weighted_action_marginal(p, x);
    std::vector<double> mean(nk, 0.0);
    for (std::size_t a = 0; a < na; ++a) {
      if (xbar[a] <= kImpossibleAction) continue;
      const Belief post = belief_update(p, x, a);
      for (std::size_t k = 0; k < nk; ++k) mean[k] += xbar[a] * post[k];
    }
    for (std::size_t k = 0; k < nk; ++k) CHECK(std::abs(mean[k] - p[k]) <= 1e-9);
  }
}

TEST_CASE("regret_update examples") {
  const GameSpec zero({"s", "t"}, {"a"}, {"b", "c"},
                      {{{0, 0}}, {{0, 0}}}, {0.5, 0.5});
  const std::vector<double> y{0.5, 0.5};
  CHECK(regret_update(RegretVector({0, 0}), y, 0, 0.7, zero).values() ==
        std::vector<double>{0, 0});
  const RegretVector doubled = regret_update(RegretVector({1, 1}), y, 0, 0.5, zero);
  CHECK(doubled[0] == doctest::Approx(2.0));
  CHECK(doubled[1] == doctest::Approx(2.0));

  const GameSpec g = network_interdiction_game();
  const std::vector<double> block{0.5, 0.5, 0.0};
  const RegretVector next = regret_update(RegretVector({-2.24, -2.24}), block, 0, 0.7, g);
  CHECK(next[0] == doctest::Approx((-2.24 + 0.7 * 2.5) / 0.3));
  CHECK(next[1] == doctest::Approx((-2.24 + 0.7 * 1.5) / 0.3));
}

TEST_CASE("regret_update rejects bad inputs") {
  const GameSpec g = network_interdiction_game();
  const std::vector<double> y{0.5, 0.5, 0.0};
  CHECK_THROWS_AS(regret_update(RegretVector({0, 0}), y, 0, 1.0, g), ValidationError);
  CHECK_THROWS_AS(regret_update(RegretVector({0, 0, 0}), y, 0, 0.5, g), ValidationError);
  const std::vector<double> bad{0.5, 0.6, 0.0};
  CHECK_THROWS_AS(regret_update(RegretVector({0, 0}), bad, 0, 0.5, g), ValidationError);
}

TEST_CASE("regret_update is affine in w") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const GameSpec g = repgame::testing::random_game(seed);
    std::mt19937_64 rng(seed + 1000);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::vector<double> w1(g.num_states()), w2(g.num_states()), mix(g.num_states());
    const double alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    for (std::size_t k = 0; k < w1.size(); ++k) {
      w1[k] = u(rng);
      w2[k] = u(rng);
      mix[k] = alpha * w1[k] + (1.0 - alpha) * w2[k];
    }
    const auto y = random_distribution(rng, g.num_uninformed_actions());
    const std::size_t a = seed % g.num_informed_actions();
    const double lambda = 0.1 + 0.8 * std::uniform_real_distribution<double>()(rng);
    const RegretVector lhs = regret_update(RegretVector(mix), y, a, lambda, g);
    const RegretVector r1 = regret_update(RegretVector(w1), y, a, lambda, g);
    const RegretVector r2 = regret_update(RegretVector(w2), y, a, lambda, g);
    for (std::size_t k = 0; k < w1.size(); ++k)
      CHECK(std::abs(lhs[k] - (alpha * r1[k] + (1.0 - alpha) * r2[k])) <= 1e-9);
  }
}

TEST_CASE("regret recursion matches its closed-form unrolling") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const GameSpec g = repgame::testing::random_game(seed);
    std::mt19937_64 rng(seed + 77);
    const double lambda = 0.3 + 0.6 * std::uniform_real_distribution<double>()(rng);
    std::vector<double> w1(g.num_states());
    for (double& v : w1) v = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
    RegretVector w{w1};
    std::vector<double> sums(g.num_states(), 0.0);
    for (std::size_t t = 1; t <= 8; ++t) {
      const auto y = random_distribution(rng, g.num_uninformed_actions());
      const std::size_t a =
          std::uniform_int_distribution<std::size_t>(0, g.num_informed_actions() - 1)(rng);
      for (std::size_t k = 0; k < sums.size(); ++k) {
        sums[k] += lambda * std::pow(1.0 - lambda, double(t) - 1.0) *
                   dot(g.row_view(k, a), y);
      }
      w = regret_update(w, y, a, lambda, g);
      for (std::size_t k = 0; k < sums.size(); ++k) {
        const double closed = std::pow(1.0 - lambda, -double(t)) * (w1[k] + sums[k]);
        CHECK(std::abs(w[k] - closed) <= 1e-8 * std::max(1.0, std::abs(closed)));
      }
    }
  }
}
