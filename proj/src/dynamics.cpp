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

#include "repgame/dynamics.hpp"

#include <stdexcept>
#include <string>

#include "repgame/errors.hpp"

namespace repgame {

StrategyMatrix::StrategyMatrix(std::size_t num_states, std::size_t num_actions,
                               std::vector<double> values)
    : num_states_(num_states),
      num_actions_(num_actions),
      values_(std::move(values)) {
  if (num_states_ == 0 || num_actions_ == 0) {
    throw ValidationError("strategy matrix needs |K| >= 1 and |A| >= 1");
  }
  if (values_.size() != num_states_ * num_actions_) {
    throw ValidationError("strategy matrix size mismatch");
  }
  for (std::size_t k = 0; k < num_states_; ++k) {
    if (!is_valid_distribution(column(k))) {
      throw ValidationError("strategy column " + std::to_string(k) +
                            " is not a distribution");
    }
  }
}

StrategyMatrix StrategyMatrix::from_columns(
    const std::vector<std::vector<double>>& columns) {
  if (columns.empty()) throw ValidationError("strategy matrix needs |K| >= 1");
  const std::size_t na = columns.front().size();
  std::vector<double> values;
  values.reserve(columns.size() * na);
  for (const auto& col : columns) {
    if (col.size() != na) throw ValidationError("ragged strategy matrix");
    values.insert(values.end(), col.begin(), col.end());
  }
  return StrategyMatrix(columns.size(), na, std::move(values));
}

std::vector<double> weighted_action_marginal(const Belief& p,
                                             const StrategyMatrix& x) {
  if (p.size() != x.num_states()) {
    throw ValidationError("belief and strategy disagree on |K|");
  }
  std::vector<double> bar(x.num_actions(), 0.0);
  for (std::size_t k = 0; k < x.num_states(); ++k) {
    if (p[k] == 0.0) continue;
    for (std::size_t a = 0; a < x.num_actions(); ++a) bar[a] += p[k] * x(k, a);
  }
  return bar;
}

Belief belief_update(const Belief& p, const StrategyMatrix& x, std::size_t a) {
  if (a >= x.num_actions()) throw std::out_of_range("informed action index");
  const double bar = weighted_action_marginal(p, x)[a];
  if (bar <= kImpossibleAction) {
    throw PlayError("observed action " + std::to_string(a) +
                    " has probability zero under the declared strategy");
  }
  std::vector<double> post(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) post[k] = p[k] * x(k, a) / bar;
  return Belief(std::move(post));
}

RegretVector regret_update(const RegretVector& w, std::span<const double> y,
                           std::size_t a, double lambda, const GameSpec& game) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw ValidationError("discount lambda must lie in (0, 1)");
  }
  if (w.size() != game.num_states()) {
    throw ValidationError("regret dimension does not match |K|");
  }
  if (y.size() != game.num_uninformed_actions() || !is_valid_distribution(y)) {
    throw ValidationError("y must be a distribution over B");
  }
  if (a >= game.num_informed_actions()) {
    throw std::out_of_range("informed action index");
  }
  std::vector<double> next(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const auto row = game.row_view(k, a);
    double stage = 0.0;
    for (std::size_t b = 0; b < y.size(); ++b) stage += row[b] * y[b];
    next[k] = (w[k] + lambda * stage) / (1.0 - lambda);
  }
  return RegretVector(std::move(next));
}

}  // namespace repgame
