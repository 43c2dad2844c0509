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

#ifndef REPGAME_FINITE_HORIZON_HPP_
#define REPGAME_FINITE_HORIZON_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "repgame/game.hpp"
#include "repgame/history.hpp"
#include "repgame/lp.hpp"

namespace repgame {

// Per-stage multipliers w_1..w_N on the stage payoff. Uniform weights give
// the plain N-stage sum; discounted weights give lambda (1-lambda)^(t-1).
class StageWeights {
 public:
  enum class Kind { kUniform, kDiscounted, kCustom };

  static StageWeights uniform(std::size_t stages);
  static StageWeights discounted(double lambda, std::size_t stages);
  // Arbitrary positive weights; kind is kCustom.
  explicit StageWeights(std::vector<double> weights);

  std::size_t stages() const { return weights_.size(); }
  double operator[](std::size_t t) const { return weights_[t]; }  // 0-based
  const std::vector<double>& values() const { return weights_; }
  Kind kind() const { return kind_; }
  double lambda() const { return lambda_; }  // 0 unless discounted
  double sum() const;

 private:
  StageWeights(std::vector<double> weights, Kind kind, double lambda);

  std::vector<double> weights_;
  Kind kind_ = Kind::kCustom;
  double lambda_ = 0.0;
};

// q~_t(h; k) = p^k * P(h | k) for stages 1..N+1. Scaling by p^k makes the
// root mass p^k and keeps the undiscounted and discounted programs identical.
class RealizationPlan {
 public:
  RealizationPlan(HistoryTree tree, std::size_t num_states,
                  std::vector<double> values);

  const HistoryTree& tree() const { return tree_; }
  std::size_t num_states() const { return num_states_; }
  double at(HistoryIndex h, std::size_t k) const {
    return values_[tree_.node(h) * num_states_ + k];
  }
  // Largest |sum of children - parent| over every node and state, together
  // with the most negative entry (as a positive number).
  double max_flow_violation() const;

 private:
  HistoryTree tree_;
  std::size_t num_states_;
  std::vector<double> values_;
};

// Behaviour strategy of the informed player over (state, stage, history),
// stages 1..N.
class InformedStrategy {
 public:
  InformedStrategy(HistoryTree tree, std::size_t num_states,
                   std::size_t num_actions, std::vector<double> values);

  const HistoryTree& tree() const { return tree_; }
  std::size_t stages() const { return tree_.last_stage(); }
  std::size_t num_states() const { return num_states_; }
  std::size_t num_actions() const { return num_actions_; }
  std::span<const double> mixed(std::size_t k, HistoryIndex h) const {
    return {values_.data() + (tree_.node(h) * num_states_ + k) * num_actions_,
            num_actions_};
  }

 private:
  HistoryTree tree_;
  std::size_t num_states_;
  std::size_t num_actions_;
  std::vector<double> values_;
};

// Behaviour strategy of the uninformed player over informed histories only,
// stages 1..N.
class UninformedStrategy {
 public:
  UninformedStrategy(HistoryTree tree, std::size_t num_actions,
                     std::vector<double> values);

  const HistoryTree& tree() const { return tree_; }
  std::size_t stages() const { return tree_.last_stage(); }
  std::size_t num_actions() const { return num_actions_; }
  std::span<const double> mixed(HistoryIndex h) const {
    return {values_.data() + tree_.node(h) * num_actions_, num_actions_};
  }

 private:
  HistoryTree tree_;
  std::size_t num_actions_;
  std::vector<double> values_;
};

// Row/column tallies of a generated program. `rows` and `variables` are what
// the LP object holds; the textbook tallies count each sign-restricted
// variable as one constraint and drop variables pinned by an equality row.
struct LpSize {
  std::size_t rows = 0;
  std::size_t variables = 0;
  std::size_t sign_constraints = 0;
  std::size_t pinned_variables = 0;

  std::size_t textbook_constraints() const { return rows + sign_constraints; }
  std::size_t textbook_variables() const { return variables - pinned_variables; }
};

// Informed player's program: maximize sum_t w_t sum_h l_h over scaled plans
// q~ and free l, with sum_{k,a} q~_{t+1}((h,a);k) M^k_{a,:} >= l_h 1^T.
struct InformedLp {
  lp::LinearProgram program;
  HistoryTree tree;  // stages 1..N+1
  std::size_t num_states;

  std::size_t q_var(HistoryIndex h, std::size_t k) const {
    return tree.node(h) * num_states + k;
  }
  std::size_t ell_var(HistoryIndex h) const {
    return tree.num_nodes() * num_states + tree.node(h);
  }
  LpSize size() const;
};

// Uninformed player's program: minimize p^T l over mixed actions y_h and free
// l, with u(y; k, h_{N+1}) <= l^k for every terminal history.
struct UninformedLp {
  lp::LinearProgram program;
  HistoryTree tree;  // stages 1..N+1; y lives on stages 1..N
  std::size_t num_states;
  std::size_t num_actions;

  std::size_t y_var(HistoryIndex h, std::size_t b) const {
    return tree.node(h) * num_actions + b;
  }
  std::size_t ell_var(std::size_t k) const {
    return tree.offset(tree.last_stage()) * num_actions + k;
  }
  LpSize size() const;
};

// Dual-game program at depth D: minimize L over (y, l, L) subject to
// w + l <= L 1, u(y; k, .) <= l^k 1 and simplex rows on every y_h.
struct DualLp {
  UninformedLp base;  // y, l, u-rows and simplex rows
  std::size_t l_var() const { return base.ell_var(base.num_states); }
};

struct InformedSolution {
  double value = 0.0;
  RealizationPlan plan;
  InformedStrategy strategy;
  LpSize size;
};

struct UninformedSolution {
  double value = 0.0;
  UninformedStrategy strategy;
  // l*, the per-state worst-case payoff of `strategy`. Among optimal
  // solutions the one minimizing max_k l^k is returned.
  std::vector<double> ell;
  LpSize size;  // of the primary program
};

struct DualSolution {
  double value = 0.0;
  UninformedStrategy strategy;
  std::vector<double> ell;
};

// Stages 1..N, built from N = weights.stages().
InformedLp build_informed_lp(const GameSpec& game, const StageWeights& weights,
                             const Belief& belief,
                             std::size_t history_budget = kDefaultHistoryBudget);

UninformedLp build_uninformed_lp(
    const GameSpec& game, const StageWeights& weights, const Belief& belief,
    std::size_t history_budget = kDefaultHistoryBudget);

DualLp build_dual_lp(const GameSpec& game, const StageWeights& weights,
                     const RegretVector& regret,
                     std::size_t history_budget = kDefaultHistoryBudget);

// sigma_t^a(k, h) = q~_{t+1}((h,a);k) / q~_t(h;k); uniform where the
// denominator is at most 1e-12.
InformedStrategy extract_informed_strategy(const RealizationPlan& plan,
                                           std::size_t num_actions);

// Mixed actions copied from an optimal primal, clipped at 0 and renormalized.
UninformedStrategy extract_uninformed_strategy(const UninformedLp& program,
                                               std::span<const double> primal);

// sum_t w_t M^k_{a_t,:} y_{h_t} along the terminal history `actions`.
double u_vector(const UninformedStrategy& y, const GameSpec& game,
                const StageWeights& weights, std::size_t k,
                std::span<const std::size_t> actions);

InformedSolution solve_informed(
    const GameSpec& game, const StageWeights& weights, const Belief& belief,
    std::size_t history_budget = kDefaultHistoryBudget);

UninformedSolution solve_uninformed(
    const GameSpec& game, const StageWeights& weights, const Belief& belief,
    std::size_t history_budget = kDefaultHistoryBudget);

DualSolution solve_dual(const GameSpec& game, const StageWeights& weights,
                        const RegretVector& regret,
                        std::size_t history_budget = kDefaultHistoryBudget);

}  // namespace repgame

#endif  // REPGAME_FINITE_HORIZON_HPP_
