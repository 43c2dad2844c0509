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

#include "repgame/discounted.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "repgame/errors.hpp"
#include "repgame/parallel.hpp"

namespace repgame {
namespace {

std::vector<double> sweep(std::size_t n,
                          const std::function<double(std::size_t)>& eval,
                          bool parallel) {
  std::vector<double> out(n);
  if (parallel) {
    parallel_for(n, [&](std::size_t i) { out[i] = eval(i); });
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = eval(i);
  }
  return out;
}

// All compositions of `total` into `parts` nonnegative integers, in
// lexicographic order.
void compositions(std::size_t parts, std::size_t total,
                  std::vector<std::size_t>& prefix,
                  std::vector<std::vector<std::size_t>>& out) {
  if (parts == 1) {
    prefix.push_back(total);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (std::size_t i = total + 1; i-- > 0;) {
    prefix.push_back(i);
    compositions(parts - 1, total - i, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

void DiscountedConfig::validate() const {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw ValidationError("discount lambda must lie in (0, 1)");
  }
  if (truncation == 0) throw ValidationError("truncation N must be >= 1");
}

double truncated_value_at_depth(const GameSpec& game, double lambda,
                                std::size_t depth, const Belief& belief,
                                std::size_t history_budget) {
  if (depth == 0) return 0.0;
  return solve_informed(game, StageWeights::discounted(lambda, depth), belief,
                        history_budget)
      .value;
}

double dual_value_at_depth(const GameSpec& game, double lambda,
                           std::size_t depth, const RegretVector& regret,
                           std::size_t history_budget) {
  if (depth == 0) {
    return *std::max_element(regret.values().begin(), regret.values().end());
  }
  return solve_dual(game, StageWeights::discounted(lambda, depth), regret,
                    history_budget)
      .value;
}

double truncated_value(const GameSpec& game, const DiscountedConfig& cfg,
                       const Belief& belief) {
  cfg.validate();
  return truncated_value_at_depth(game, cfg.lambda, cfg.truncation, belief,
                                  cfg.history_budget);
}

StrategyMatrix informed_policy(const GameSpec& game,
                               const DiscountedConfig& cfg,
                               const Belief& belief) {
  cfg.validate();
  const InformedSolution sol = solve_informed(
      game, StageWeights::discounted(cfg.lambda, cfg.truncation + 1), belief,
      cfg.history_budget);
  const std::size_t nk = game.num_states();
  const std::size_t na = game.num_informed_actions();
  std::vector<double> values;
  values.reserve(nk * na);
  for (std::size_t k = 0; k < nk; ++k) {
    const auto mixed = sol.strategy.mixed(k, HistoryIndex{});
    values.insert(values.end(), mixed.begin(), mixed.end());
  }
  return StrategyMatrix(nk, na, std::move(values));
}

RegretVector uninformed_initial_regret(const GameSpec& game,
                                       const DiscountedConfig& cfg,
                                       const Belief& belief) {
  cfg.validate();
  const UninformedSolution sol = solve_uninformed(
      game, StageWeights::discounted(cfg.lambda, cfg.truncation), belief,
      cfg.history_budget);
  std::vector<double> w(sol.ell.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = -sol.ell[k];
  return RegretVector(std::move(w));
}

DualAction dual_truncated_value(const GameSpec& game,
                                const DiscountedConfig& cfg,
                                const RegretVector& regret) {
  cfg.validate();
  const DualSolution sol =
      solve_dual(game, StageWeights::discounted(cfg.lambda, cfg.truncation + 1),
                 regret, cfg.history_budget);
  const auto root = sol.strategy.mixed(HistoryIndex{});
  return {sol.value, std::vector<double>(root.begin(), root.end())};
}

InformedController::InformedController(
    GameSpec game, DiscountedConfig cfg, std::size_t state,
    std::shared_ptr<InformedPolicyCache> cache)
    : InformedController(game, cfg, state, Belief(game.initial_probability()),
                         std::move(cache)) {}

InformedController::InformedController(
    GameSpec game, DiscountedConfig cfg, std::size_t state, Belief initial,
    std::shared_ptr<InformedPolicyCache> cache)
    : game_(std::move(game)),
      cfg_(cfg),
      state_(state),
      belief_(std::move(initial)),
      cache_(std::move(cache)) {
  cfg_.validate();
  if (state_ >= game_.num_states()) throw PlayError("state out of range");
  if (belief_.size() != game_.num_states()) {
    throw ValidationError("belief dimension does not match |K|");
  }
}

std::size_t InformedController::step(Rng& rng) {
  auto solve = [&] { return informed_policy(game_, cfg_, belief_); };
  policy_ = cache_ ? cache_->get_or_solve(belief_.probabilities(), solve)
                   : solve();
  return rng.sample(policy_->column(state_));
}

void InformedController::observe(std::size_t informed_action) {
  if (!policy_) throw PlayError("informed controller observed before step");
  belief_ = belief_update(belief_, *policy_, informed_action);
  policy_.reset();
}

UninformedController::UninformedController(
    GameSpec game, DiscountedConfig cfg, RegretVector initial,
    std::shared_ptr<DualActionCache> cache)
    : game_(std::move(game)),
      cfg_(cfg),
      regret_(std::move(initial)),
      cache_(std::move(cache)) {
  cfg_.validate();
  if (regret_.size() != game_.num_states()) {
    throw ValidationError("regret dimension does not match |K|");
  }
}

std::size_t UninformedController::step(Rng& rng) {
  auto solve = [&] { return dual_truncated_value(game_, cfg_, regret_); };
  const DualAction action =
      cache_ ? cache_->get_or_solve(regret_.values(), solve) : solve();
  mixed_ = action.mixed;
  return rng.sample(*mixed_);
}

void UninformedController::observe(std::size_t informed_action) {
  if (!mixed_) throw PlayError("uninformed controller observed before step");
  regret_ = regret_update(regret_, *mixed_, informed_action, cfg_.lambda, game_);
  mixed_.reset();
}

std::vector<Belief> belief_grid(std::size_t num_states, std::size_t points) {
  if (num_states == 0) throw ValidationError("belief grid needs |K| >= 1");
  if (num_states == 1) return {Belief({1.0})};
  if (points < 2) throw ValidationError("belief grid needs at least 2 points");
  const std::size_t resolution = points - 1;
  std::vector<std::vector<std::size_t>> lattice;
  std::vector<std::size_t> prefix;
  compositions(num_states, resolution, prefix, lattice);
  std::vector<Belief> out;
  out.reserve(lattice.size());
  for (const auto& c : lattice) {
    std::vector<double> p(num_states);
    for (std::size_t k = 0; k < num_states; ++k) {
      p[k] = static_cast<double>(c[k]) / static_cast<double>(resolution);
    }
    out.emplace_back(std::move(p));
  }
  // Two states: increasing p^1.
  if (num_states == 2) std::reverse(out.begin(), out.end());
  return out;
}

std::vector<double> value_sweep(const GameSpec& game, double lambda,
                                std::size_t depth,
                                const std::vector<Belief>& beliefs,
                                std::size_t history_budget) {
  return sweep(
      beliefs.size(),
      [&](std::size_t i) {
        return truncated_value_at_depth(game, lambda, depth, beliefs[i],
                                        history_budget);
      },
      true);
}

std::vector<double> value_sweep_serial(const GameSpec& game, double lambda,
                                       std::size_t depth,
                                       const std::vector<Belief>& beliefs,
                                       std::size_t history_budget) {
  return sweep(
      beliefs.size(),
      [&](std::size_t i) {
        return truncated_value_at_depth(game, lambda, depth, beliefs[i],
                                        history_budget);
      },
      false);
}

std::vector<double> dual_value_sweep(const GameSpec& game, double lambda,
                                     std::size_t depth,
                                     const std::vector<RegretVector>& regrets,
                                     std::size_t history_budget) {
  return sweep(
      regrets.size(),
      [&](std::size_t i) {
        return dual_value_at_depth(game, lambda, depth, regrets[i],
                                   history_budget);
      },
      true);
}

std::vector<double> dual_value_sweep_serial(
    const GameSpec& game, double lambda, std::size_t depth,
    const std::vector<RegretVector>& regrets, std::size_t history_budget) {
  return sweep(
      regrets.size(),
      [&](std::size_t i) {
        return dual_value_at_depth(game, lambda, depth, regrets[i],
                                   history_budget);
      },
      false);
}

BoundReport bound_report(const GameSpec& game, const DiscountedConfig& cfg,
                         std::size_t grid_points) {
  cfg.validate();
  const std::vector<Belief> grid = belief_grid(game.num_states(), grid_points);
  const std::vector<double> values = value_sweep(
      game, cfg.lambda, cfg.truncation, grid, cfg.history_budget);

  BoundReport report;
  report.lambda = cfg.lambda;
  report.truncation = cfg.truncation;
  report.grid_points = grid.size();
  report.v_hat = max_abs_payoff(game);
  std::size_t best = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i]) > std::abs(values[best])) best = i;
  }
  report.sup_value = std::abs(values[best]);
  report.sup_belief = grid[best].probabilities();

  const double keep = 1.0 - cfg.lambda;
  const double n = static_cast<double>(cfg.truncation);
  const double tail_n = std::pow(keep, n);
  const double tail_n1 = std::pow(keep, n + 1.0);
  report.value_gap_informed = 2.0 * tail_n1 * report.v_hat / cfg.lambda;
  report.value_gap_uninformed = report.value_gap_informed;
  const double spread = 2.0 * tail_n1 / cfg.lambda;
  report.lower = (1.0 - spread) * report.sup_value / (1.0 + tail_n);
  report.upper = (1.0 + spread) * report.sup_value / (1.0 - tail_n);
  return report;
}

InformedStrategy unroll_informed_controller(const GameSpec& game,
                                            const DiscountedConfig& cfg,
                                            const Belief& initial,
                                            std::size_t horizon) {
  cfg.validate();
  const std::size_t nk = game.num_states();
  const std::size_t na = game.num_informed_actions();
  HistoryTree tree(na, horizon, cfg.history_budget);
  std::vector<double> values(tree.num_nodes() * nk * na);
  std::vector<Belief> beliefs{initial};
  InformedPolicyCache cache;
  for (std::size_t t = 1; t <= horizon; ++t) {
    std::vector<std::optional<StrategyMatrix>> policies(tree.count(t));
    parallel_for(tree.count(t), [&](std::size_t code) {
      policies[code] = cache.get_or_solve(beliefs[code].probabilities(), [&] {
        return informed_policy(game, cfg, beliefs[code]);
      });
    });
    std::vector<Belief> next;
    if (t < horizon) next.reserve(tree.count(t + 1));
    for (std::size_t code = 0; code < tree.count(t); ++code) {
      const StrategyMatrix& x = *policies[code];
      const std::size_t node = tree.node({t, code});
      for (std::size_t k = 0; k < nk; ++k) {
        const auto col = x.column(k);
        std::copy(col.begin(), col.end(),
                  values.begin() +
                      static_cast<std::ptrdiff_t>((node * nk + k) * na));
      }
      if (t == horizon) continue;
      const std::vector<double> bar = weighted_action_marginal(beliefs[code], x);
      for (std::size_t a = 0; a < na; ++a) {
        next.push_back(bar[a] > kImpossibleAction
                           ? belief_update(beliefs[code], x, a)
                           : beliefs[code]);
      }
    }
    beliefs = std::move(next);
  }
  return InformedStrategy(std::move(tree), nk, na, std::move(values));
}

UninformedStrategy unroll_uninformed_controller(const GameSpec& game,
                                                const DiscountedConfig& cfg,
                                                const RegretVector& initial,
                                                std::size_t horizon) {
  cfg.validate();
  const std::size_t na = game.num_informed_actions();
  const std::size_t nb = game.num_uninformed_actions();
  HistoryTree tree(na, horizon, cfg.history_budget);
  std::vector<double> values(tree.num_nodes() * nb);
  std::vector<RegretVector> regrets{initial};
  DualActionCache cache;
  for (std::size_t t = 1; t <= horizon; ++t) {
    std::vector<std::vector<double>> mixed(tree.count(t));
    parallel_for(tree.count(t), [&](std::size_t code) {
      mixed[code] = cache
                        .get_or_solve(regrets[code].values(),
                                      [&] {
                                        return dual_truncated_value(
                                            game, cfg, regrets[code]);
                                      })
                        .mixed;
    });
    std::vector<RegretVector> next;
    if (t < horizon) next.reserve(tree.count(t + 1));
    for (std::size_t code = 0; code < tree.count(t); ++code) {
      const std::size_t node = tree.node({t, code});
      std::copy(mixed[code].begin(), mixed[code].end(),
                values.begin() + static_cast<std::ptrdiff_t>(node * nb));
      if (t == horizon) continue;
      for (std::size_t a = 0; a < na; ++a) {
        next.push_back(
            regret_update(regrets[code], mixed[code], a, cfg.lambda, game));
      }
    }
    regrets = std::move(next);
  }
  return UninformedStrategy(std::move(tree), nb, std::move(values));
}

std::size_t tail_horizon(double lambda, double max_abs, double tail) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw ValidationError("discount lambda must lie in (0, 1)");
  }
  std::size_t t = 0;
  double mass = max_abs;
  while (!(mass < tail)) {
    mass *= 1.0 - lambda;
    ++t;
  }
  return std::max<std::size_t>(t, 1);  // episodes need at least one stage
}

}  // namespace repgame
