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

#include "repgame/evaluation.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "repgame/errors.hpp"
#include "repgame/lp.hpp"
#include "repgame/parallel.hpp"

namespace repgame {
namespace {

constexpr std::size_t kSaturated = std::numeric_limits<std::size_t>::max();

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::size_t saturating_pow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out = saturating_mul(out, base);
  return out;
}

void require_belief(const GameSpec& game, const Belief& belief) {
  if (belief.size() != game.num_states()) {
    throw ValidationError("belief dimension does not match |K|");
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Plays informed plan i against uninformed plan j in state k. Plans assign
// one action to every joint-history node; node n's action is digit n of the
// plan index in base |A| (resp. |B|).
double play_plans(const GameSpec& game, const StageWeights& weights,
                  const HistoryTree& joint, std::size_t k, std::size_t i,
                  std::size_t j, std::span<const std::size_t> pow_a,
                  std::span<const std::size_t> pow_b) {
  const std::size_t na = game.num_informed_actions();
  const std::size_t nb = game.num_uninformed_actions();
  HistoryIndex h{1, 0};
  double total = 0.0;
  for (std::size_t t = 1; t <= weights.stages(); ++t) {
    const std::size_t node = joint.node(h);
    const std::size_t a = (i / pow_a[node]) % na;
    const std::size_t b = (j / pow_b[node]) % nb;
    total += weights[t - 1] * game.payoff(k, a, b);
    if (t < weights.stages()) h = joint.child(h, a * nb + b);
  }
  return total;
}

std::vector<double> build_plan_table(const GameSpec& game,
                                     const StageWeights& weights,
                                     std::size_t plan_budget, bool parallel) {
  const PlanTableSize size = plan_table_size(game, weights.stages());
  if (size.entries > plan_budget) {
    throw BudgetError("plan table needs " +
                      (size.entries == kSaturated ? std::string("overflowing")
                                                  : std::to_string(size.entries)) +
                      " entries, budget " + std::to_string(plan_budget));
  }
  const std::size_t na = game.num_informed_actions();
  const std::size_t nb = game.num_uninformed_actions();
  const HistoryTree joint(na * nb, weights.stages(), kSaturated);
  std::vector<std::size_t> pow_a(size.joint_histories);
  std::vector<std::size_t> pow_b(size.joint_histories);
  for (std::size_t n = 0; n < size.joint_histories; ++n) {
    pow_a[n] = n == 0 ? 1 : pow_a[n - 1] * na;
    pow_b[n] = n == 0 ? 1 : pow_b[n - 1] * nb;
  }
  const std::size_t rows = game.num_states() * size.informed_plans_per_state;
  const std::size_t cols = size.uninformed_plans;
  std::vector<double> table(rows * cols);
  auto fill_row = [&](std::size_t r) {
    const std::size_t k = r / size.informed_plans_per_state;
    const std::size_t i = r % size.informed_plans_per_state;
    for (std::size_t j = 0; j < cols; ++j) {
      table[r * cols + j] =
          play_plans(game, weights, joint, k, i, j, pow_a, pow_b);
    }
  };
  if (parallel) {
    parallel_for(rows, fill_row);
  } else {
    for (std::size_t r = 0; r < rows; ++r) fill_row(r);
  }
  return table;
}

}  // namespace

BestResponseReport best_response_value_vs_uninformed(
    const GameSpec& game, const StageWeights& weights,
    const UninformedStrategy& y, const Belief& belief) {
  require_belief(game, belief);
  const std::size_t n = weights.stages();
  if (y.stages() < n || y.num_actions() != game.num_uninformed_actions()) {
    throw ValidationError("uninformed strategy does not cover the horizon");
  }
  const HistoryTree& tree = y.tree();
  const std::size_t na = game.num_informed_actions();
  const std::size_t nk = game.num_states();
  // f[node * nk + k], filled from the last stage back to the root.
  std::vector<double> f((tree.offset(n) + tree.count(n)) * nk, 0.0);
  for (std::size_t t = n; t >= 1; --t) {
    for (std::size_t code = 0; code < tree.count(t); ++code) {
      const HistoryIndex h{t, code};
      const auto mixed = y.mixed(h);
      for (std::size_t k = 0; k < nk; ++k) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < na; ++a) {
          double v = weights[t - 1] * dot(game.row_view(k, a), mixed);
          if (t < n) v += f[tree.node(tree.child(h, a)) * nk + k];
          best = std::max(best, v);
        }
        f[tree.node(h) * nk + k] = best;
      }
    }
  }
  BestResponseReport report;
  report.per_state.assign(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(nk));
  for (std::size_t k = 0; k < nk; ++k) {
    report.aggregate += belief[k] * report.per_state[k];
  }
  return report;
}

double best_response_value_vs_informed(const GameSpec& game,
                                       const StageWeights& weights,
                                       const InformedStrategy& sigma,
                                       const Belief& belief) {
  require_belief(game, belief);
  const std::size_t n = weights.stages();
  if (sigma.stages() < n || sigma.num_states() != game.num_states() ||
      sigma.num_actions() != game.num_informed_actions()) {
    throw ValidationError("informed strategy does not cover the horizon");
  }
  const HistoryTree& tree = sigma.tree();
  const std::size_t na = game.num_informed_actions();
  const std::size_t nb = game.num_uninformed_actions();
  const std::size_t nk = game.num_states();
  std::vector<double> reach(nk);
  for (std::size_t k = 0; k < nk; ++k) reach[k] = belief[k];
  std::vector<double> next;
  std::vector<double> stage_payoff(nb);
  double total = 0.0;
  for (std::size_t t = 1; t <= n; ++t) {
    next.assign(tree.count(t) * na * nk, 0.0);
    for (std::size_t code = 0; code < tree.count(t); ++code) {
      const HistoryIndex h{t, code};
      std::fill(stage_payoff.begin(), stage_payoff.end(), 0.0);
      for (std::size_t k = 0; k < nk; ++k) {
        const double r = reach[code * nk + k];
        if (r == 0.0) continue;
        const auto mixed = sigma.mixed(k, h);
        for (std::size_t a = 0; a < na; ++a) {
          const double mass = r * mixed[a];
          next[(code * na + a) * nk + k] = mass;
          if (mass == 0.0) continue;
          const auto row = game.row_view(k, a);
          for (std::size_t b = 0; b < nb; ++b) stage_payoff[b] += mass * row[b];
        }
      }
      total += weights[t - 1] *
               *std::min_element(stage_payoff.begin(), stage_payoff.end());
    }
    reach.swap(next);
  }
  return total;
}

PlanTableSize plan_table_size(const GameSpec& game, std::size_t stages) {
  if (stages == 0) throw ValidationError("number of stages must be >= 1");
  const std::size_t ab = saturating_mul(game.num_informed_actions(),
                                        game.num_uninformed_actions());
  PlanTableSize size;
  std::size_t level = 1;
  for (std::size_t t = 1; t <= stages; ++t) {
    size.joint_histories = size.joint_histories + level;
    if (size.joint_histories < level) size.joint_histories = kSaturated;
    level = saturating_mul(level, ab);
  }
  size.informed_plans_per_state =
      saturating_pow(game.num_informed_actions(), size.joint_histories);
  size.uninformed_plans =
      saturating_pow(game.num_uninformed_actions(), size.joint_histories);
  size.entries = saturating_mul(
      saturating_mul(game.num_states(), size.informed_plans_per_state),
      size.uninformed_plans);
  return size;
}

std::vector<double> plan_payoff_table(const GameSpec& game,
                                      const StageWeights& weights,
                                      std::size_t plan_budget) {
  return build_plan_table(game, weights, plan_budget, true);
}

std::vector<double> plan_payoff_table_serial(const GameSpec& game,
                                             const StageWeights& weights,
                                             std::size_t plan_budget) {
  return build_plan_table(game, weights, plan_budget, false);
}

double full_tree_value(const GameSpec& game, const StageWeights& weights,
                       const Belief& belief, std::size_t plan_budget) {
  require_belief(game, belief);
  const std::vector<double> table =
      plan_payoff_table(game, weights, plan_budget);
  const PlanTableSize size = plan_table_size(game, weights.stages());
  const std::size_t nk = game.num_states();
  const std::size_t ni = size.informed_plans_per_state;
  const std::size_t nj = size.uninformed_plans;
  auto entry = [&](std::size_t k, std::size_t i, std::size_t j) {
    return table[(k * ni + i) * nj + j];
  };

  // The side with more pure plans becomes the LP's columns.
  if (nk * ni >= nj) {
    // max v s.t. sum_k p^k x_k^T G_k e_j >= v for every uninformed plan j.
    lp::LinearProgram program(nk * ni + 1, lp::Sense::kMaximize);
    const std::size_t v = nk * ni;
    program.set_free(v);
    program.set_objective(v, 1.0);
    for (std::size_t k = 0; k < nk; ++k) {
      std::vector<lp::Term> simplex;
      for (std::size_t i = 0; i < ni; ++i) simplex.push_back({k * ni + i, 1.0});
      program.add_constraint(std::move(simplex), lp::Relation::kEqual, 1.0);
    }
    for (std::size_t j = 0; j < nj; ++j) {
      std::vector<lp::Term> terms;
      for (std::size_t k = 0; k < nk; ++k) {
        if (belief[k] == 0.0) continue;
        for (std::size_t i = 0; i < ni; ++i) {
          const double g = belief[k] * entry(k, i, j);
          if (g != 0.0) terms.push_back({k * ni + i, g});
        }
      }
      terms.push_back({v, -1.0});
      program.add_constraint(std::move(terms), lp::Relation::kGreaterEqual, 0.0);
    }
    const lp::Solution sol = lp::solve(program);
    if (!sol.optimal()) throw SolverError("plan-table LP not optimal");
    return sol.objective;
  }
  // min sum_k p^k l_k s.t. G_k(i, :) z <= l_k for every state and plan.
  lp::LinearProgram program(nj + nk, lp::Sense::kMinimize);
  std::vector<lp::Term> simplex;
  for (std::size_t j = 0; j < nj; ++j) simplex.push_back({j, 1.0});
  program.add_constraint(std::move(simplex), lp::Relation::kEqual, 1.0);
  for (std::size_t k = 0; k < nk; ++k) {
    program.set_free(nj + k);
    program.set_objective(nj + k, belief[k]);
    for (std::size_t i = 0; i < ni; ++i) {
      std::vector<lp::Term> terms;
      for (std::size_t j = 0; j < nj; ++j) {
        if (entry(k, i, j) != 0.0) terms.push_back({j, entry(k, i, j)});
      }
      terms.push_back({nj + k, -1.0});
      program.add_constraint(std::move(terms), lp::Relation::kLessEqual, 0.0);
    }
  }
  const lp::Solution sol = lp::solve(program);
  if (!sol.optimal()) throw SolverError("plan-table LP not optimal");
  return sol.objective;
}

double full_tree_value(const GameSpec& game, std::size_t stages,
                       const Belief& belief, std::size_t plan_budget) {
  return full_tree_value(game, StageWeights::uniform(stages), belief,
                         plan_budget);
}

double perfect_recall_value(const GameSpec& game, const StageWeights& weights,
                            const Belief& belief, std::size_t history_budget) {
  require_belief(game, belief);
  const std::size_t nk = game.num_states();
  const std::size_t na = game.num_informed_actions();
  const std::size_t nb = game.num_uninformed_actions();
  const std::size_t n = weights.stages();
  // Information sets of the uninformed player are joint histories; those of
  // the informed player are (state, joint history).
  const HistoryTree joint(na * nb, n, history_budget);
  const std::size_t num_nodes = joint.num_nodes();
  auto x_var = [&](std::size_t k, std::size_t node, std::size_t a) {
    return (k * num_nodes + node) * na + a;
  };
  const std::size_t u_base = nk * num_nodes * na;
  const std::size_t u_root = u_base + num_nodes;
  lp::LinearProgram program(u_root + 1, lp::Sense::kMaximize);
  for (std::size_t node = 0; node <= num_nodes; ++node) {
    program.set_free(u_base + node);
  }
  program.set_objective(u_root, 1.0);

  // Informed realization plan: each information set carries the mass of
  // the informed sequence leading into it, with chance folded into p^k.
  for (std::size_t k = 0; k < nk; ++k) {
    for (std::size_t node = 0; node < num_nodes; ++node) {
      const HistoryIndex h = joint.at(node);
      std::vector<lp::Term> terms;
      for (std::size_t a = 0; a < na; ++a) terms.push_back({x_var(k, node, a), 1.0});
      double rhs = 0.0;
      if (h.stage == 1) {
        rhs = belief[k];
      } else {
        const HistoryIndex parent = joint.parent(h);
        const std::size_t a_prev = joint.last_action(h) / nb;
        terms.push_back({x_var(k, joint.node(parent), a_prev), -1.0});
      }
      program.add_constraint(std::move(terms), lp::Relation::kEqual, rhs);
    }
  }
  // One row per uninformed sequence: the empty one, then (h, b).
  program.add_constraint({{u_root, 1.0}, {u_base + 0, -1.0}},
                         lp::Relation::kLessEqual, 0.0);
  for (std::size_t node = 0; node < num_nodes; ++node) {
    const HistoryIndex h = joint.at(node);
    const double w = weights[h.stage - 1];
    for (std::size_t b = 0; b < nb; ++b) {
      std::vector<lp::Term> terms{{u_base + node, 1.0}};
      if (h.stage < n) {
        for (std::size_t a = 0; a < na; ++a) {
          terms.push_back({u_base + joint.node(joint.child(h, a * nb + b)), -1.0});
        }
      }
      for (std::size_t k = 0; k < nk; ++k) {
        for (std::size_t a = 0; a < na; ++a) {
          const double m = game.payoff(k, a, b);
          if (m != 0.0) terms.push_back({x_var(k, node, a), -w * m});
        }
      }
      program.add_constraint(std::move(terms), lp::Relation::kLessEqual, 0.0);
    }
  }
  const lp::Solution sol = lp::solve(program);
  if (!sol.optimal()) throw SolverError("sequence-form LP not optimal");
  return sol.objective;
}

}  // namespace repgame
