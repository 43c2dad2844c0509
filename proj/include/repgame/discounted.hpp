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

#ifndef REPGAME_DISCOUNTED_HPP_
#define REPGAME_DISCOUNTED_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "repgame/dynamics.hpp"
#include "repgame/finite_horizon.hpp"
#include "repgame/game.hpp"
#include "repgame/play.hpp"

namespace repgame {

struct DiscountedConfig {
  double lambda = 0.7;
  std::size_t truncation = 4;  // N
  std::size_t history_budget = kDefaultHistoryBudget;

  // Throws ValidationError unless lambda is in (0, 1) and N >= 1.
  void validate() const;
};

// V_{lambda,depth}(p); 0 at depth 0.
double truncated_value_at_depth(const GameSpec& game, double lambda,
                                std::size_t depth, const Belief& belief,
                                std::size_t history_budget = kDefaultHistoryBudget);

// V~_{lambda,depth}(w); max_k w^k at depth 0.
double dual_value_at_depth(const GameSpec& game, double lambda,
                           std::size_t depth, const RegretVector& regret,
                           std::size_t history_budget = kDefaultHistoryBudget);

// V_{lambda,N}(p).
double truncated_value(const GameSpec& game, const DiscountedConfig& cfg,
                       const Belief& belief);

// Stage-1 strategy of the depth N+1 informed program, one column per state;
// uniform in states with p^k <= 1e-12.
StrategyMatrix informed_policy(const GameSpec& game,
                               const DiscountedConfig& cfg,
                               const Belief& belief);

// w* = -l* of the depth-N uninformed program.
RegretVector uninformed_initial_regret(const GameSpec& game,
                                       const DiscountedConfig& cfg,
                                       const Belief& belief);

struct DualAction {
  double value = 0.0;          // V~_{lambda,N+1}(w)
  std::vector<double> mixed;   // y*_root over B
};

DualAction dual_truncated_value(const GameSpec& game,
                                const DiscountedConfig& cfg,
                                const RegretVector& regret);

// Memo of controller solves keyed on the exact bits of a belief or regret.
// Along a fixed action history both recursions are deterministic, so a hit
// returns precisely what a fresh solve would. Safe to share across threads.
template <class Value>
class SolveCache {
 public:
  template <class Solve>
  Value get_or_solve(const std::vector<double>& key, Solve&& solve) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = entries_.find(key); it != entries_.end()) {
        ++hits_;
        return it->second;
      }
    }
    Value value = solve();
    std::lock_guard lock(mutex_);
    entries_.emplace(key, value);
    return value;
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
  }
  std::size_t hits() const {
    std::lock_guard lock(mutex_);
    return hits_;
  }

 private:
  mutable std::mutex mutex_;
  std::map<std::vector<double>, Value> entries_;
  std::size_t hits_ = 0;
};

using InformedPolicyCache = SolveCache<StrategyMatrix>;
using DualActionCache = SolveCache<DualAction>;

// Belief-driven play for the informed player: each stage re-solves the
// depth N+1 program at the current belief, samples column k, then moves the
// belief with the matrix it actually used.
class InformedController final : public InformedAgent {
 public:
  InformedController(GameSpec game, DiscountedConfig cfg, std::size_t state,
                     std::shared_ptr<InformedPolicyCache> cache = nullptr);
  InformedController(GameSpec game, DiscountedConfig cfg, std::size_t state,
                     Belief initial,
                     std::shared_ptr<InformedPolicyCache> cache = nullptr);

  std::size_t step(Rng& rng) override;
  // Throws PlayError before the first step of a stage.
  void observe(std::size_t informed_action) override;

  const Belief& belief() const { return belief_; }
  const std::optional<StrategyMatrix>& policy() const { return policy_; }

 private:
  GameSpec game_;
  DiscountedConfig cfg_;
  std::size_t state_;
  Belief belief_;
  std::optional<StrategyMatrix> policy_;
  std::shared_ptr<InformedPolicyCache> cache_;
};

// Regret-driven play for the uninformed player: each stage solves the dual
// program at w_t, plays y*_root, and rolls w forward with that y.
class UninformedController final : public UninformedAgent {
 public:
  UninformedController(GameSpec game, DiscountedConfig cfg,
                       RegretVector initial,
                       std::shared_ptr<DualActionCache> cache = nullptr);

  std::size_t step(Rng& rng) override;
  // Throws PlayError before the first step of a stage.
  void observe(std::size_t informed_action) override;

  const RegretVector& regret() const { return regret_; }
  const std::optional<std::vector<double>>& last_mixed() const {
    return mixed_;
  }

 private:
  GameSpec game_;
  DiscountedConfig cfg_;
  RegretVector regret_;
  std::optional<std::vector<double>> mixed_;
  std::shared_ptr<DualActionCache> cache_;
};

// Evenly spaced beliefs: p^1 = i/(n-1) for two states, the lattice with
// spacing 1/(n-1) on the simplex otherwise, the single point for one state.
std::vector<Belief> belief_grid(std::size_t num_states, std::size_t points);

// V_{lambda,depth} over a set of beliefs; OpenMP and serial reference.
std::vector<double> value_sweep(const GameSpec& game, double lambda,
                                 std::size_t depth,
                                 const std::vector<Belief>& beliefs,
                                 std::size_t history_budget = kDefaultHistoryBudget);
std::vector<double> value_sweep_serial(
    const GameSpec& game, double lambda, std::size_t depth,
    const std::vector<Belief>& beliefs,
    std::size_t history_budget = kDefaultHistoryBudget);

std::vector<double> dual_value_sweep(
    const GameSpec& game, double lambda, std::size_t depth,
    const std::vector<RegretVector>& regrets,
    std::size_t history_budget = kDefaultHistoryBudget);
std::vector<double> dual_value_sweep_serial(
    const GameSpec& game, double lambda, std::size_t depth,
    const std::vector<RegretVector>& regrets,
    std::size_t history_budget = kDefaultHistoryBudget);

struct BoundReport {
  double lambda = 0.0;
  std::size_t truncation = 0;
  std::size_t grid_points = 0;
  double v_hat = 0.0;      // surrogate for ||V_lambda||_sup
  double sup_value = 0.0;  // max over the grid of |V_{lambda,N}(p)|
  std::vector<double> sup_belief;
  double value_gap_informed = 0.0;
  double value_gap_uninformed = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

BoundReport bound_report(const GameSpec& game, const DiscountedConfig& cfg,
                         std::size_t grid_points);

// The controllers' play on stages 1..horizon written out as behaviour
// strategies: every history gets the policy its belief (resp. regret)
// reaches. Histories of probability zero inherit their parent's belief.
// Nodes of a stage are solved in parallel.
InformedStrategy unroll_informed_controller(const GameSpec& game,
                                            const DiscountedConfig& cfg,
                                            const Belief& initial,
                                            std::size_t horizon);
UninformedStrategy unroll_uninformed_controller(const GameSpec& game,
                                                const DiscountedConfig& cfg,
                                                const RegretVector& initial,
                                                std::size_t horizon);

// Smallest T with (1-lambda)^T * max|M| < tail.
std::size_t tail_horizon(double lambda, double max_abs, double tail = 1e-4);

}  // namespace repgame

#endif  // REPGAME_DISCOUNTED_HPP_
