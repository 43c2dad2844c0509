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
#include <numeric>

#include "repgame/errors.hpp"
#include "repgame/evaluation.hpp"
#include "repgame/finite_horizon.hpp"
#include "support.hpp"

using namespace repgame;
using repgame::testing::data_path;

namespace {

const Belief kHalf({0.5, 0.5});

bool is_distribution(std::span<const double> x) {
  return is_valid_distribution(x, 1e-9);
}

// Attacker behavior strategy of the reference three-stage table, nodes in
// the order (), 1, 2, 11, 12, 21, 22.
UninformedStrategy reference_attacker() {
  return UninformedStrategy(HistoryTree(2, 3),
                            3,
                            {0.5, 0.5, 0.0,                //
                             0.54, 0.46, 0.0,              //
                             0.46, 0.54, 0.0,              //
                             0.68, 0.04, 0.28,             //
                             0.49, 0.51, 0.0,              //
                             0.51, 0.49, 0.0,              //
                             0.04, 0.68, 0.28});
}

}  // namespace

TEST_CASE("stage weights") {
  CHECK(StageWeights::uniform(3).values() == std::vector<double>{1, 1, 1});
  const StageWeights d = StageWeights::discounted(0.7, 4);
  const double expected[] = {0.7, 0.21, 0.063, 0.0189};
  for (std::size_t t = 0; t < 4; ++t) CHECK(d[t] == doctest::Approx(expected[t]));
  CHECK(d.kind() == StageWeights::Kind::kDiscounted);
  CHECK(StageWeights::discounted(0.7, 1).values() == std::vector<double>{0.7});
  CHECK_THROWS_AS(StageWeights::uniform(0), ValidationError);
  CHECK_THROWS_AS(StageWeights::discounted(0.0, 3), ValidationError);
  CHECK_THROWS_AS(StageWeights::discounted(1.0, 3), ValidationError);
  CHECK_THROWS_AS(StageWeights(std::vector<double>{1.0, -1.0}), ValidationError);
}

TEST_CASE("informed LP on the three-stage network game") {
  const GameSpec g = network_interdiction_game();
  const InformedSolution sol = solve_informed(g, StageWeights::uniform(3), kHalf);
  CHECK(std::abs(sol.value - 6.57) <= 0.005);
  CHECK(sol.size.textbook_constraints() == 65);
  CHECK(sol.size.textbook_variables() == 35);
  CHECK(sol.plan.max_flow_violation() <= 1e-8);

  const HistoryIndex root{1, 0};
  for (std::size_t k = 0; k < 2; ++k) CHECK(is_distribution(sol.strategy.mixed(k, root)));
  MESSAGE("stage-1 P(channel 1 | k=1) = " << sol.strategy.mixed(0, root)[0]
          << ", P(channel 1 | k=2) = " << sol.strategy.mixed(1, root)[0]
          << " (reference table: 0.64, 0.35; vertices are not unique)");
}

TEST_CASE("informed LP on degenerate and one-stage games") {
  const GameSpec single = load_game_file(data_path("singleton.json"));
  CHECK(solve_informed(single, StageWeights::uniform(1), Belief({1.0})).value ==
        doctest::Approx(5.0));

  const GameSpec g = network_interdiction_game();
  const StageWeights one = StageWeights::uniform(1);
  CHECK(solve_informed(g, one, kHalf).value ==
        doctest::Approx(full_tree_value(g, one, kHalf)).epsilon(1e-9));
}

TEST_CASE("extract_informed_strategy conventions") {
  const HistoryTree tree(3, 2);  // stages 1..2 for a one-stage strategy
  SUBCASE("uniform split of the root mass gives a uniform strategy") {
    std::vector<double> q{0.4, 0.6};
    for (std::size_t a = 0; a < 3; ++a) {
      q.push_back(0.4 / 3.0);
      q.push_back(0.6 / 3.0);
    }
    const InformedStrategy s =
        extract_informed_strategy(RealizationPlan(tree, 2, q), 3);
    for (std::size_t k = 0; k < 2; ++k)
      for (double v : s.mixed(k, {1, 0})) CHECK(v == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("zero mass gives the uniform convention") {
    const std::vector<double> q{1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    const InformedStrategy s =
        extract_informed_strategy(RealizationPlan(tree, 2, q), 3);
    CHECK(s.mixed(0, {1, 0})[0] == doctest::Approx(1.0));
    for (double v : s.mixed(1, {1, 0})) CHECK(v == doctest::Approx(1.0 / 3.0));
  }
}

TEST_CASE("u_vector") {
  const GameSpec g = network_interdiction_game();
  SUBCASE("one stage reduces to a weighted row product") {
    const UninformedStrategy y(HistoryTree(2, 1), 3, {0.2, 0.3, 0.5});
    const std::size_t a[] = {1};
    const double expected = 2.0 * (2 * 0.2 + 1 * 0.3 + 1 * 0.5);
    CHECK(u_vector(y, g, StageWeights(std::vector<double>{2.0}), 0, a) ==
          doctest::Approx(expected));
  }
  SUBCASE("singleton game over two stages") {
    const GameSpec single = load_game_file(data_path("singleton.json"));
    const UninformedStrategy y(HistoryTree(1, 2), 1, {1.0, 1.0});
    const std::size_t a[] = {0, 0};
    CHECK(u_vector(y, single, StageWeights::uniform(2), 0, a) == doctest::Approx(10.0));
  }
  SUBCASE("reference attacker table along (1, 1, 1)") {
    // Episode sum: stage payoffs 1*y1 + 4*y2 + 3*yo at (), (1), (1, 1).
    const double expected = (0.5 + 4 * 0.5) + (0.54 + 4 * 0.46) +
                            (0.68 + 4 * 0.04 + 3 * 0.28);
    const std::size_t a[] = {0, 0, 0};
    CHECK(u_vector(reference_attacker(), g, StageWeights::uniform(3), 0, a) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(6.56));
  }
  SUBCASE("length mismatch") {
    const std::size_t a[] = {0, 0};
    CHECK_THROWS_AS(u_vector(reference_attacker(), g, StageWeights::uniform(3), 0, a),
                    std::invalid_argument);
  }
}

TEST_CASE("uninformed LP on the three-stage network game") {
  const GameSpec g = network_interdiction_game();
  const UninformedSolution sol = solve_uninformed(g, StageWeights::uniform(3), kHalf);
  CHECK(std::abs(sol.value - 6.57) <= 0.005);
  CHECK(sol.size.textbook_constraints() == 44);
  CHECK(sol.size.textbook_variables() == 23);
  const auto root = sol.strategy.mixed({1, 0});
  CHECK(is_distribution(root));
  MESSAGE("stage-1 attacker mix = (" << root[0] << ", " << root[1] << ", " << root[2]
          << "), reference table: (0.5, 0.5, 0)");
}

TEST_CASE("uninformed LP on the discounted network game gives the security regret") {
  const GameSpec g = network_interdiction_game();
  const UninformedSolution sol =
      solve_uninformed(g, StageWeights::discounted(0.7, 4), kHalf);
  for (double l : sol.ell) CHECK(std::abs(-l - (-2.24)) <= 0.005);
}

TEST_CASE("uninformed LP on degenerate games") {
  const GameSpec single = load_game_file(data_path("singleton.json"));
  const UninformedSolution sol =
      solve_uninformed(single, StageWeights::uniform(2), Belief({1.0}));
  CHECK(sol.value == doctest::Approx(10.0));
  CHECK(sol.ell[0] == doctest::Approx(10.0));
  CHECK(sol.strategy.mixed({1, 0})[0] == doctest::Approx(1.0));

  // |B| = 1: the only action is played with probability one.
  const GameSpec one_response({"s", "t"}, {"a", "b"}, {"x"},
                              {{{1}, {2}}, {{3}, {-1}}}, {0.3, 0.7});
  const UninformedSolution forced =
      solve_uninformed(one_response, StageWeights::uniform(2), Belief({0.3, 0.7}));
  for (std::size_t n = 0; n < forced.strategy.tree().num_nodes(); ++n)
    CHECK(forced.strategy.mixed(forced.strategy.tree().at(n))[0] == doctest::Approx(1.0));
}

TEST_CASE("per-state bound: max terminal u equals l* in every state") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const GameSpec g = repgame::testing::random_game(seed);
    const std::size_t n = 1 + seed % 3;
    const StageWeights w = StageWeights::uniform(n);
    const Belief p(g.initial_probability());
    const UninformedSolution sol = solve_uninformed(g, w, p);
    const HistoryTree terminal(g.num_informed_actions(), n + 1);
    for (std::size_t k = 0; k < g.num_states(); ++k) {
      double best = -1e300;
      for (std::size_t c = 0; c < terminal.count(n + 1); ++c) {
        const auto actions = terminal.decode({n + 1, c});
        best = std::max(best, u_vector(sol.strategy, g, w, k, actions));
      }
      CHECK(best == doctest::Approx(sol.ell[k]).epsilon(1e-6));
    }
    const double pl = std::inner_product(sol.ell.begin(), sol.ell.end(),
                                         g.initial_probability().begin(), 0.0);
    CHECK(pl == doctest::Approx(sol.value).epsilon(1e-6));
  }
}

TEST_CASE("dual LP at zero regret reproduces the primal security level") {
  const GameSpec g = network_interdiction_game();
  const StageWeights w = StageWeights::uniform(2);
  // max_k l^k >= sum_k p^k l^k, so the dual value at 0 is at least V(p).
  const DualSolution d = solve_dual(g, w, RegretVector({0.0, 0.0}));
  CHECK(d.value >= solve_informed(g, w, kHalf).value - 1e-9);
  CHECK(d.value == doctest::Approx(*std::max_element(d.ell.begin(), d.ell.end())));
}

TEST_CASE("history budget is enforced") {
  const GameSpec g = network_interdiction_game();
  CHECK_THROWS_AS(solve_informed(g, StageWeights::uniform(8), kHalf, 100), BudgetError);
  CHECK_THROWS_AS(solve_uninformed(g, StageWeights::uniform(8), kHalf, 100), BudgetError);
}

TEST_CASE("belief dimension must match the game") {
  const GameSpec g = network_interdiction_game();
  CHECK_THROWS_AS(solve_informed(g, StageWeights::uniform(1), Belief({1.0})),
                  ValidationError);
}
