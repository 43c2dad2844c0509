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

#ifndef REPGAME_DYNAMICS_HPP_
#define REPGAME_DYNAMICS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "repgame/game.hpp"

namespace repgame {

// Probability of an action below which it counts as impossible.
inline constexpr double kImpossibleAction = 1e-12;

// One mixed action over A per state: column k is x^k.
class StrategyMatrix {
 public:
  // `values` is state-major: values[k * num_actions + a] = x^k(a). Throws
  // ValidationError unless every column is a distribution.
  StrategyMatrix(std::size_t num_states, std::size_t num_actions,
                 std::vector<double> values);

  static StrategyMatrix from_columns(
      const std::vector<std::vector<double>>& columns);

  std::size_t num_states() const { return num_states_; }
  std::size_t num_actions() const { return num_actions_; }
  std::span<const double> column(std::size_t k) const {
    return {values_.data() + k * num_actions_, num_actions_};
  }
  double operator()(std::size_t k, std::size_t a) const {
    return values_[k * num_actions_ + a];
  }

 private:
  std::size_t num_states_;
  std::size_t num_actions_;
  std::vector<double> values_;
};

// x_bar(a) = sum_k p^k x^k(a).
std::vector<double> weighted_action_marginal(const Belief& p,
                                             const StrategyMatrix& x);

// Posterior after observing a: pi^k = p^k x^k(a) / x_bar(a). Throws
// PlayError when x_bar(a) <= kImpossibleAction.
Belief belief_update(const Belief& p, const StrategyMatrix& x, std::size_t a);

// w'^k = (w^k + lambda M^k_{a,:} y) / (1 - lambda).
RegretVector regret_update(const RegretVector& w, std::span<const double> y,
                           std::size_t a, double lambda, const GameSpec& game);

}  // namespace repgame

#endif  // REPGAME_DYNAMICS_HPP_
