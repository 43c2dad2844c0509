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

#include "repgame/finite_horizon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "repgame/errors.hpp"

namespace repgame {
namespace {

// Slack allowed on the optimal-face row of the l* tie-break.
constexpr double kFaceTolerance = 1e-9;

void require_dims(const GameSpec& game, std::size_t belief_size) {
  if (belief_size != game.num_states()) {
    throw ValidationError("belief/regret dimension does not match |K|");
  }
}

void normalize_or_uniform(std::span<double> mixed) {
  double sum = 0.0;
  for (double& v : mixed) {
    v = std::max(v, 0.0);
    sum += v;
  }
  if (sum <= 0.0) {
    std::fill(mixed.begin(), mixed.end(), 1.0 / mixed.size());
    return;
  }
  for (double& v : mixed) v /= sum;
}

// Shared y/l skeleton of the uninformed and dual programs: simplex rows on
// every y_h, then one u-row per (k, terminal history).
UninformedLp build_regret_rows(const GameSpec& game,
                               const StageWeights& weights,
                               std::size_t extra_vars, lp::Sense sense,
                               std::size_t history_budget) {
  const std::size_t nk = game.num_states();
  const std::size_t nb = game.num_uninformed_actions();
  const std::size_t n = weights.stages();
  HistoryTree tree(game.num_informed_actions(), n + 1, history_budget);
  const std::size_t ny = tree.offset(n + 1) * nb;
  UninformedLp out{lp::LinearProgram(ny + nk + extra_vars, sense), tree, nk, nb};
  auto& program = out.program;
  for (std::size_t k = 0; k < nk; ++k) program.set_free(out.ell_var(k));

  for (std::size_t node = 0; node < tree.offset(n + 1); ++node) {
    const HistoryIndex h = tree.at(node);
    std::vector<lp::Term> terms;
    for (std::size_t b = 0; b < nb; ++b) terms.push_back({out.y_var(h, b), 1.0});
    program.add_constraint(std::move(terms), lp::Relation::kEqual, 1.0);
  }

  std::vector<double> coef(ny);
  for (std::size_t k = 0; k < nk; ++k) {
    for (std::size_t code = 0; code < tree.count(n + 1); ++code) {
      const HistoryIndex leaf{n + 1, code};
      std::vector<lp::Term> terms;
      terms.reserve(n * nb + 1);
      for (std::size_t t = 1; t <= n; ++t) {
        const HistoryIndex h = tree.prefix(leaf, t);
        const std::size_t a = tree.last_action(tree.prefix(leaf, t + 1));
        auto row = game.row_view(k, a);
        for (std::size_t b = 0; b < nb; ++b) {
          if (row[b] != 0.0) {
            terms.push_back({out.y_var(h, b), weights[t - 1] * row[b]});
          }
        }
      }
      terms.push_back({out.ell_var(k), -1.0});
      program.add_constraint(std::move(terms), lp::Relation::kLessEqual, 0.0);
    }
  }
  return out;
}

}  // namespace

StageWeights::StageWeights(std::vector<double> weights, Kind kind,
                           double lambda)
    : weights_(std::move(weights)), kind_(kind), lambda_(lambda) {
  if (weights_.empty()) throw ValidationError("stage weights need N >= 1");
  for (double w : weights_) {
    if (!std::isfinite(w) || w <= 0.0) {
      throw ValidationError("stage weights must be positive and finite");
    }
  }
}

StageWeights::StageWeights(std::vector<double> weights)
    : StageWeights(std::move(weights), Kind::kCustom, 0.0) {}

StageWeights StageWeights::uniform(std::size_t stages) {
  if (stages == 0) throw ValidationError("number of stages must be >= 1");
  return StageWeights(std::vector<double>(stages, 1.0), Kind::kUniform, 0.0);
}

StageWeights StageWeights::discounted(double lambda, std::size_t stages) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw ValidationError("discount lambda must lie in (0, 1)");
  }
  if (stages == 0) throw ValidationError("number of stages must be >= 1");
  std::vector<double> w(stages);
  double factor = lambda;
  for (std::size_t t = 0; t < stages; ++t) {
    w[t] = factor;
    factor *= 1.0 - lambda;
  }
  return StageWeights(std::move(w), Kind::kDiscounted, lambda);
}

double StageWeights::sum() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

RealizationPlan::RealizationPlan(HistoryTree tree, std::size_t num_states,
                                 std::vector<double> values)
    : tree_(std::move(tree)), num_states_(num_states), values_(std::move(values)) {
  if (values_.size() != tree_.num_nodes() * num_states_) {
    throw std::invalid_argument("realization plan size mismatch");
  }
}

double RealizationPlan::max_flow_violation() const {
  double worst = 0.0;
  for (std::size_t node = 0; node < tree_.num_nodes(); ++node) {
    const HistoryIndex h = tree_.at(node);
    for (std::size_t k = 0; k < num_states_; ++k) {
      worst = std::max(worst, -at(h, k));
      if (h.stage == tree_.last_stage()) continue;
      double children = 0.0;
      for (std::size_t a = 0; a < tree_.num_actions(); ++a) {
        children += at(tree_.child(h, a), k);
      }
      worst = std::max(worst, std::abs(children - at(h, k)));
    }
  }
  return worst;
}

InformedStrategy::InformedStrategy(HistoryTree tree, std::size_t num_states,
                                   std::size_t num_actions,
                                   std::vector<double> values)
    : tree_(std::move(tree)),
      num_states_(num_states),
      num_actions_(num_actions),
      values_(std::move(values)) {
  if (values_.size() != tree_.num_nodes() * num_states_ * num_actions_) {
    throw std::invalid_argument("informed strategy size mismatch");
  }
}

UninformedStrategy::UninformedStrategy(HistoryTree tree,
                                       std::size_t num_actions,
                                       std::vector<double> values)
    : tree_(std::move(tree)),
      num_actions_(num_actions),
      values_(std::move(values)) {
  if (values_.size() != tree_.num_nodes() * num_actions_) {
    throw std::invalid_argument("uninformed strategy size mismatch");
  }
}

LpSize InformedLp::size() const {
  // The root plan q~_1 is free and pinned to p by its equality row.
  return {program.num_constraints(), program.num_vars(),
          program.num_bounded_vars(), num_states};
}

LpSize UninformedLp::size() const {
  return {program.num_constraints(), program.num_vars(),
          program.num_bounded_vars(), 0};
}

InformedLp build_informed_lp(const GameSpec& game, const StageWeights& weights,
                             const Belief& belief,
                             std::size_t history_budget) {
  require_dims(game, belief.size());
  const std::size_t nk = game.num_states();
  const std::size_t na = game.num_informed_actions();
  const std::size_t nb = game.num_uninformed_actions();
  const std::size_t n = weights.stages();
  HistoryTree tree(na, n + 1, history_budget);
  const std::size_t num_ell = tree.offset(n + 1);
  InformedLp out{
      lp::LinearProgram(tree.num_nodes() * nk + num_ell, lp::Sense::kMaximize),
      tree, nk};
  auto& program = out.program;

  const HistoryIndex root{1, 0};
  for (std::size_t k = 0; k < nk; ++k) {
    program.set_free(out.q_var(root, k));
    program.add_constraint({{out.q_var(root, k), 1.0}}, lp::Relation::kEqual,
                           belief[k]);
  }
  for (std::size_t node = 0; node < num_ell; ++node) {
    const HistoryIndex h = tree.at(node);
    program.set_free(out.ell_var(h));
    program.set_objective(out.ell_var(h), weights[h.stage - 1]);
    for (std::size_t k = 0; k < nk; ++k) {
      std::vector<lp::Term> terms;
      for (std::size_t a = 0; a < na; ++a) {
        terms.push_back({out.q_var(tree.child(h, a), k), 1.0});
      }
      terms.push_back({out.q_var(h, k), -1.0});
      program.add_constraint(std::move(terms), lp::Relation::kEqual, 0.0);
    }
    for (std::size_t b = 0; b < nb; ++b) {
      std::vector<lp::Term> terms;
      for (std::size_t k = 0; k < nk; ++k) {
        for (std::size_t a = 0; a < na; ++a) {
          const double m = game.payoff(k, a, b);
          if (m != 0.0) terms.push_back({out.q_var(tree.child(h, a), k), m});
        }
      }
      terms.push_back({out.ell_var(h), -1.0});
      program.add_constraint(std::move(terms), lp::Relation::kGreaterEqual, 0.0);
    }
  }
  return out;
}

UninformedLp build_uninformed_lp(const GameSpec& game,
                                 const StageWeights& weights,
                                 const Belief& belief,
                                 std::size_t history_budget) {
  require_dims(game, belief.size());
  UninformedLp out = build_regret_rows(game, weights, 0, lp::Sense::kMinimize,
                                       history_budget);
  for (std::size_t k = 0; k < game.num_states(); ++k) {
    out.program.set_objective(out.ell_var(k), belief[k]);
  }
  return out;
}

DualLp build_dual_lp(const GameSpec& game, const StageWeights& weights,
                     const RegretVector& regret, std::size_t history_budget) {
  require_dims(game, regret.size());
  DualLp out{build_regret_rows(game, weights, 1, lp::Sense::kMinimize,
                               history_budget)};
  auto& program = out.base.program;
  program.set_free(out.l_var());
  program.set_objective(out.l_var(), 1.0);
  for (std::size_t k = 0; k < game.num_states(); ++k) {
    program.add_constraint({{out.base.ell_var(k), 1.0}, {out.l_var(), -1.0}},
                           lp::Relation::kLessEqual, -regret[k]);
  }
  return out;
}

InformedStrategy extract_informed_strategy(const RealizationPlan& plan,
                                           std::size_t num_actions) {
  const HistoryTree& full = plan.tree();
  const std::size_t n = full.last_stage() - 1;
  const std::size_t nk = plan.num_states();
  HistoryTree tree(num_actions, n, full.count(full.last_stage()));
  std::vector<double> values(tree.num_nodes() * nk * num_actions);
  for (std::size_t node = 0; node < tree.num_nodes(); ++node) {
    const HistoryIndex h = tree.at(node);
    for (std::size_t k = 0; k < nk; ++k) {
      std::span<double> mixed(values.data() + (node * nk + k) * num_actions,
                              num_actions);
      const double parent = plan.at(h, k);
      if (parent > 1e-12) {
        for (std::size_t a = 0; a < num_actions; ++a) {
          mixed[a] = plan.at(full.child(h, a), k) / parent;
        }
        normalize_or_uniform(mixed);
      } else {
        std::fill(mixed.begin(), mixed.end(), 1.0 / num_actions);
      }
    }
  }
  return InformedStrategy(std::move(tree), nk, num_actions, std::move(values));
}

UninformedStrategy extract_uninformed_strategy(const UninformedLp& program,
                                               std::span<const double> primal) {
  const std::size_t n = program.tree.last_stage() - 1;
  const std::size_t nb = program.num_actions;
  HistoryTree tree(program.tree.num_actions(), n,
                   program.tree.count(program.tree.last_stage()));
  std::vector<double> values(tree.num_nodes() * nb);
  for (std::size_t node = 0; node < tree.num_nodes(); ++node) {
    const HistoryIndex h = tree.at(node);
    std::span<double> mixed(values.data() + node * nb, nb);
    for (std::size_t b = 0; b < nb; ++b) mixed[b] = primal[program.y_var(h, b)];
    normalize_or_uniform(mixed);
  }
  return UninformedStrategy(std::move(tree), nb, std::move(values));
}

double u_vector(const UninformedStrategy& y, const GameSpec& game,
                const StageWeights& weights, std::size_t k,
                std::span<const std::size_t> actions) {
  if (actions.size() != weights.stages() || actions.size() != y.stages()) {
    throw std::invalid_argument("terminal history length must equal N");
  }
  const HistoryTree& tree = y.tree();
  double total = 0.0;
  HistoryIndex h{1, 0};
  for (std::size_t t = 0; t < actions.size(); ++t) {
    auto row = game.row_view(k, actions[t]);
    auto mixed = y.mixed(h);
    double stage = 0.0;
    for (std::size_t b = 0; b < mixed.size(); ++b) stage += row[b] * mixed[b];
    total += weights[t] * stage;
    if (t + 1 < actions.size()) h = tree.child(h, actions[t]);
  }
  return total;
}

InformedSolution solve_informed(const GameSpec& game,
                                const StageWeights& weights,
                                const Belief& belief,
                                std::size_t history_budget) {
  InformedLp built = build_informed_lp(game, weights, belief, history_budget);
  const lp::Solution sol = lp::solve(built.program);
  if (!sol.optimal()) {
    throw SolverError(std::string("informed LP not optimal: ") +
                      lp::to_string(sol.status));
  }
  std::vector<double> q(sol.primal.begin(),
                        sol.primal.begin() +
                            static_cast<std::ptrdiff_t>(built.tree.num_nodes() *
                                                        built.num_states));
  RealizationPlan plan(built.tree, built.num_states, std::move(q));
  InformedStrategy strategy =
      extract_informed_strategy(plan, game.num_informed_actions());
  return {sol.objective, std::move(plan), std::move(strategy), built.size()};
}

UninformedSolution solve_uninformed(const GameSpec& game,
                                    const StageWeights& weights,
                                    const Belief& belief,
                                    std::size_t history_budget) {
  UninformedLp built = build_uninformed_lp(game, weights, belief, history_budget);
  const lp::Solution sol = lp::solve(built.program);
  if (!sol.optimal()) {
    throw SolverError(std::string("uninformed LP not optimal: ") +
                      lp::to_string(sol.status));
  }
  // l* is rarely unique: any optimal y leaves slack in the states p weighs
  // lightly, and symmetric games have a whole face of optimal vertices. A
  // second program picks, among y attaining p^T l = value, one minimizing
  // max_k l^k.
  DualLp refine = build_dual_lp(
      game, weights, RegretVector(std::vector<double>(game.num_states(), 0.0)),
      history_budget);
  std::vector<lp::Term> face;
  for (std::size_t k = 0; k < game.num_states(); ++k) {
    if (belief[k] != 0.0) face.push_back({refine.base.ell_var(k), belief[k]});
  }
  refine.base.program.add_constraint(
      std::move(face), lp::Relation::kLessEqual,
      sol.objective + kFaceTolerance * (1.0 + std::abs(sol.objective)));
  const lp::Solution balanced = lp::solve(refine.base.program);
  if (!balanced.optimal()) {
    throw SolverError(std::string("uninformed tie-break LP not optimal: ") +
                      lp::to_string(balanced.status));
  }
  std::vector<double> ell(game.num_states());
  for (std::size_t k = 0; k < ell.size(); ++k) {
    ell[k] = balanced.primal[refine.base.ell_var(k)];
  }
  return {sol.objective,
          extract_uninformed_strategy(refine.base, balanced.primal),
          std::move(ell), built.size()};
}

DualSolution solve_dual(const GameSpec& game, const StageWeights& weights,
                        const RegretVector& regret,
                        std::size_t history_budget) {
  DualLp built = build_dual_lp(game, weights, regret, history_budget);
  const lp::Solution sol = lp::solve(built.base.program);
  if (!sol.optimal()) {
    throw SolverError(std::string("dual-game LP not optimal: ") +
                      lp::to_string(sol.status));
  }
  std::vector<double> ell(game.num_states());
  for (std::size_t k = 0; k < ell.size(); ++k) {
    ell[k] = sol.primal[built.base.ell_var(k)];
  }
  return {sol.objective, extract_uninformed_strategy(built.base, sol.primal),
          std::move(ell)};
}

}  // namespace repgame
