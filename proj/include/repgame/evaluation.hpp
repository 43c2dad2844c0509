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

#ifndef REPGAME_EVALUATION_HPP_
#define REPGAME_EVALUATION_HPP_

#include <cstddef>
#include <vector>

#include "repgame/finite_horizon.hpp"
#include "repgame/game.hpp"

namespace repgame {

inline constexpr std::size_t kDefaultPlanBudget = 10'000'000;

struct BestResponseReport {
  std::vector<double> per_state;  // nu^k: informed best response in state k
  double aggregate = 0.0;         // sum_k p^k nu^k
};

// Backward induction over the informed-action tree against a fixed y:
// f(k, h_t) = max_a [w_t M^k_{a,:} y_{h_t} + f(k, (h_t, a))].
BestResponseReport best_response_value_vs_uninformed(
    const GameSpec& game, const StageWeights& weights,
    const UninformedStrategy& y, const Belief& belief);

// Worst case of a fixed informed strategy: per history, the uninformed
// player minimizes the reach-weighted stage payoff independently, since its
// action moves neither the state of play nor anyone's information.
double best_response_value_vs_informed(const GameSpec& game,
                                       const StageWeights& weights,
                                       const InformedStrategy& sigma,
                                       const Belief& belief);

// Size of the plan-vs-plan payoff table full_tree_value would build.
struct PlanTableSize {
  std::size_t informed_plans_per_state = 0;  // |A|^H
  std::size_t uninformed_plans = 0;          // |B|^H
  std::size_t entries = 0;  // |K| * |A|^H * |B|^H, saturating
  std::size_t joint_histories = 0;  // H, over stages 1..N
};
PlanTableSize plan_table_size(const GameSpec& game, std::size_t stages);

// Game value with perfect recall on FULL joint histories, by enumerating
// every pure plan of both players and solving the resulting matrix game.
// Informed plans are enumerated per state; since the informed player knows
// k, mixing over joint plans and over per-state plans reach the same
// payoffs. Throws BudgetError when the table exceeds `plan_budget` entries.
double full_tree_value(const GameSpec& game, const StageWeights& weights,
                       const Belief& belief,
                       std::size_t plan_budget = kDefaultPlanBudget);
double full_tree_value(const GameSpec& game, std::size_t stages,
                       const Belief& belief,
                       std::size_t plan_budget = kDefaultPlanBudget);

// The plan table itself: entry [(k * informed_plans + i) * uninformed_plans
// + j] is the weighted total of informed plan i against uninformed plan j in
// state k. OpenMP and serial reference.
std::vector<double> plan_payoff_table(const GameSpec& game,
                                      const StageWeights& weights,
                                      std::size_t plan_budget = kDefaultPlanBudget);
std::vector<double> plan_payoff_table_serial(
    const GameSpec& game, const StageWeights& weights,
    std::size_t plan_budget = kDefaultPlanBudget);

// Perfect-recall sequence-form value on the full joint-history tree. Reaches
// the same number as full_tree_value on instances too large to enumerate.
double perfect_recall_value(const GameSpec& game, const StageWeights& weights,
                            const Belief& belief,
                            std::size_t history_budget = kDefaultHistoryBudget);

}  // namespace repgame

#endif  // REPGAME_EVALUATION_HPP_
