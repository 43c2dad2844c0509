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

#include <chrono>
#include <cmath>
#include <sstream>

#include "repgame/errors.hpp"
#include "repgame/finite_horizon.hpp"
#include "repgame/simulator.hpp"
#include "support.hpp"

using namespace repgame;
using repgame::testing::data_path;

namespace {

const Belief kHalf({0.5, 0.5});

InformedStrategy constant_informed(std::size_t na, std::size_t n,
                                   const std::vector<std::vector<double>>& columns) {
  HistoryTree tree(na, n);
  std::vector<double> values;
  for (std::size_t node = 0; node < tree.num_nodes(); ++node)
    for (const auto& x : columns) values.insert(values.end(), x.begin(), x.end());
  return InformedStrategy(tree, columns.size(), na, values);
}

UninformedStrategy constant_uninformed(std::size_t na, std::size_t n,
                                       const std::vector<double>& y) {
  HistoryTree tree(na, n);
  std::vector<double> values;
  for (std::size_t node = 0; node < tree.num_nodes(); ++node)
    values.insert(values.end(), y.begin(), y.end());
  return UninformedStrategy(tree, y.size(), values);
}

struct Security {
  GameSpec game = network_interdiction_game();
  StageWeights weights = StageWeights::uniform(3);
  InformedSolution sigma = solve_informed(game, weights, kHalf);
  UninformedSolution tau = solve_uninformed(game, weights, kHalf);
  InformedFactory informed() const {
    return [this](std::size_t k) {
      return std::make_unique<InformedStrategyAgent>(sigma.strategy, k);
    };
  }
  UninformedFactory uninformed() const {
    return [this] { return std::make_unique<UninformedStrategyAgent>(tau.strategy); };
  }
};

}  // namespace

TEST_CASE("rng sampling and streams") {
  Rng rng(42);
  const std::vector<double> point{0.0, 1.0, 0.0};
  for (int i = 0; i < 20; ++i) CHECK(rng.sample(point) == 1);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  Rng a = Rng::stream(7, 3), b = Rng::stream(7, 3), c = Rng::stream(7, 4);
  CHECK(a.uniform() == b.uniform());
  CHECK(Rng::stream(7, 3).uniform() != c.uniform());
  const std::vector<double> none{0.0, 0.0};
  CHECK_THROWS_AS(rng.sample(none), PlayError);
}

TEST_CASE("deterministic singleton episode") {
  const GameSpec g = load_game_file(data_path("singleton.json"));
  const StageWeights w = StageWeights::uniform(2);
  const InformedStrategy sigma = constant_informed(1, 2, {{1.0}});
  const UninformedStrategy tau = constant_uninformed(1, 2, {1.0});
  Rng rng(1);
  const EpisodeLog log = run_episode(
      g, w, [&](std::size_t k) { return std::make_unique<InformedStrategyAgent>(sigma, k); },
      [&] { return std::make_unique<UninformedStrategyAgent>(tau); }, rng);
  CHECK(log.total == 10.0);
  CHECK(log.stages.size() == 2);
}

TEST_CASE("security-strategy episodes are reproducible and bounded") {
  const Security s;
  const auto first = run_episodes(s.game, s.weights, s.informed(), s.uninformed(), 300, 11);
  const auto again = run_episodes(s.game, s.weights, s.informed(), s.uninformed(), 300, 11);
  const auto serial =
      run_episodes_serial(s.game, s.weights, s.informed(), s.uninformed(), 300, 11);
  REQUIRE(first.size() == 300);
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].total == again[i].total);
    CHECK(first[i].total == serial[i].total);
    CHECK(first[i].state == serial[i].state);
    CHECK(first[i].total >= 3.0);
    CHECK(first[i].total <= 12.0);
  }
  const MonteCarloReport r1 = summarize(first, 11);
  const MonteCarloReport r2 = summarize(serial, 11);
  CHECK(r1.mean == r2.mean);
  CHECK(r1.std_dev == r2.std_dev);
}

TEST_CASE("finite Monte Carlo matches the game value") {
  const Security s;
  const auto start = std::chrono::steady_clock::now();
  const MonteCarloReport r =
      monte_carlo(s.game, s.weights, s.informed(), s.uninformed(), 5000, 2024);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(elapsed < 30.0);
  CHECK(r.trials == 5000);
  CHECK(std::abs(r.mean - 6.57) <= 3.0 * r.ci95_halfwidth);
}

TEST_CASE("zero-payoff game has zero mean and spread") {
  const GameSpec g = load_game_file(data_path("zero.json"));
  const StageWeights w = StageWeights::uniform(3);
  const InformedStrategy sigma = constant_informed(2, 3, {{0.5, 0.5}, {0.3, 0.7}});
  const UninformedStrategy tau = constant_uninformed(2, 3, {0.4, 0.6});
  const MonteCarloReport r = monte_carlo(
      g, w, [&](std::size_t k) { return std::make_unique<InformedStrategyAgent>(sigma, k); },
      [&] { return std::make_unique<UninformedStrategyAgent>(tau); }, 50, 3);
  CHECK(r.mean == 0.0);
  CHECK(r.std_dev == 0.0);
}

TEST_CASE("non-adaptive strategies converge to the analytic expectation") {
  const GameSpec g = network_interdiction_game();
  const StageWeights w = StageWeights::discounted(0.5, 3);
  const std::vector<std::vector<double>> x{{0.7, 0.3}, {0.2, 0.8}};
  const std::vector<double> y{0.3, 0.5, 0.2};
  double stage = 0.0;
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 3; ++b) stage += 0.5 * x[k][a] * y[b] * g.payoff(k, a, b);
  const double expected = w.sum() * stage;

  const InformedStrategy sigma = constant_informed(2, 3, x);
  const UninformedStrategy tau = constant_uninformed(2, 3, y);
  const MonteCarloReport r = monte_carlo(
      g, w, [&](std::size_t k) { return std::make_unique<InformedStrategyAgent>(sigma, k); },
      [&] { return std::make_unique<UninformedStrategyAgent>(tau); }, 4000, 99);
  CHECK(std::abs(r.mean - expected) <= 4.0 * r.ci95_halfwidth);
}

TEST_CASE("agents refuse to play past their horizon") {
  const InformedStrategy sigma = constant_informed(2, 1, {{0.5, 0.5}});
  InformedStrategyAgent agent(sigma, 0);
  Rng rng(0);
  agent.observe(agent.step(rng));
  CHECK_THROWS_AS(agent.step(rng), PlayError);
}

TEST_CASE("summary statistics and csv") {
  std::vector<EpisodeLog> logs(3);
  logs[0].total = 1.0;
  logs[1].total = 2.0;
  logs[2].total = 3.0;
  logs[1].stages.push_back({1, 0, 2, 4.0, 0.5});
  const MonteCarloReport r = summarize(logs, 5);
  CHECK(r.mean == doctest::Approx(2.0));
  CHECK(r.std_dev == doctest::Approx(1.0));
  CHECK(r.ci95_halfwidth == doctest::Approx(1.96 / std::sqrt(3.0)));
  std::ostringstream csv;
  write_episode_csv(csv, logs);
  CHECK(csv.str() == "trial,t,k,a,b,payoff,weight\n1,1,0,0,2,4,0.5\n");
  CHECK(summarize({}, 0).trials == 0);
}
