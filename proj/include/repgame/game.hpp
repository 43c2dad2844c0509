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

#ifndef REPGAME_GAME_HPP_
#define REPGAME_GAME_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace repgame {

inline constexpr double kProbabilityTolerance = 1e-9;

// The five-tuple (K, A, B, M, p0) of a repeated zero-sum game with one-sided
// information. Labels are user-facing; everything downstream works with dense
// indices in declaration order. Immutable once constructed.
class GameSpec {
 public:
  // Validates every invariant and renormalizes the initial distribution
  // once. Throws ValidationError naming the violated invariant.
  GameSpec(std::vector<std::string> states,
           std::vector<std::string> actions_informed,
           std::vector<std::string> actions_uninformed,
           std::vector<std::vector<std::vector<double>>> payoff,
           std::vector<double> initial_probability);

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_informed_actions() const { return actions_informed_.size(); }
  std::size_t num_uninformed_actions() const {
    return actions_uninformed_.size();
  }

  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& actions_informed() const {
    return actions_informed_;
  }
  const std::vector<std::string>& actions_uninformed() const {
    return actions_uninformed_;
  }
  const std::vector<double>& initial_probability() const {
    return initial_probability_;
  }

  // M(k, a, b), unchecked.
  double payoff(std::size_t k, std::size_t a, std::size_t b) const {
    return payoff_[(k * num_informed_actions() + a) * num_uninformed_actions() +
                   b];
  }
  // Contiguous view of M^k_{a,:}, unchecked.
  std::span<const double> row_view(std::size_t k, std::size_t a) const {
    return {payoff_.data() +
                (k * num_informed_actions() + a) * num_uninformed_actions(),
            num_uninformed_actions()};
  }

  // Copy of the payoff tensor in [k][a][b] nesting.
  std::vector<std::vector<std::vector<double>>> payoff_tensor() const;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> actions_informed_;
  std::vector<std::string> actions_uninformed_;
  std::vector<double> payoff_;  // flat, [k][a][b] row-major
  std::vector<double> initial_probability_;
};

// Distribution over states. Zero components are legal (Bayes updates can
// extinguish a state); the prior in GameSpec is the only place strict
// positivity is demanded.
class Belief {
 public:
  explicit Belief(std::vector<double> probabilities);

  std::size_t size() const { return probabilities_.size(); }
  double operator[](std::size_t k) const { return probabilities_[k]; }
  const std::vector<double>& probabilities() const { return probabilities_; }

  static Belief uniform(std::size_t num_states);
  static Belief point_mass(std::size_t num_states, std::size_t k);

 private:
  std::vector<double> probabilities_;
};

// Per-state anti-discounted regret w_t.
class RegretVector {
 public:
  explicit RegretVector(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

// Shared belief check used by every module and by the tests: components in
// [0, 1] and total mass 1 within kProbabilityTolerance.
bool is_valid_distribution(std::span<const double> p,
                           double tolerance = kProbabilityTolerance);

// Parses a game document (JSON). Throws ParseError or ValidationError.
GameSpec load_game(std::string_view document);
GameSpec load_game_file(const std::filesystem::path& path);

// JSON document that load_game accepts.
std::string serialize_game(const GameSpec& game, int indent = 2);

// M^k_{a,:} by value. Throws std::out_of_range on bad indices.
std::vector<double> payoff_row(const GameSpec& game, std::size_t k,
                               std::size_t a);

double max_abs_payoff(const GameSpec& game);

// Network interdiction case study: two channels, one of which
// has high capacity; the attacker blocks channel 1, blocks channel 2, or
// observes.
GameSpec network_interdiction_game();

}  // namespace repgame

#endif  // REPGAME_GAME_HPP_
