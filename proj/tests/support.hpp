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

#ifndef REPGAME_TESTS_SUPPORT_HPP_
#define REPGAME_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "repgame/game.hpp"

namespace repgame::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(REPGAME_TEST_DATA_DIR) / name;
}

inline std::vector<double> random_distribution(std::mt19937_64& rng,
                                               std::size_t n,
                                               double floor = 0.0) {
  std::uniform_real_distribution<double> u(floor, 1.0);
  std::vector<double> p(n);
  double sum = 0.0;
  for (double& v : p) sum += (v = u(rng));
  for (double& v : p) v /= sum;
  return p;
}

// Payoffs in [-5, 5], strictly positive prior, dimensions up to the limits.
inline GameSpec random_game(std::uint64_t seed, std::size_t max_states = 3,
                            std::size_t max_informed = 3,
                            std::size_t max_uninformed = 3) {
  std::mt19937_64 rng(seed);
  const auto dim = [&](std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(1, hi)(rng);
  };
  const std::size_t nk = dim(max_states);
  const std::size_t na = dim(max_informed);
  const std::size_t nb = dim(max_uninformed);
  std::uniform_real_distribution<double> entry(-5.0, 5.0);
  std::vector<std::vector<std::vector<double>>> payoff(
      nk, std::vector<std::vector<double>>(na, std::vector<double>(nb)));
  for (auto& m : payoff)
    for (auto& row : m)
      for (double& v : row) v = entry(rng);
  std::vector<std::string> states, actions, responses;
  for (std::size_t k = 0; k < nk; ++k) states.push_back("k" + std::to_string(k));
  for (std::size_t a = 0; a < na; ++a) actions.push_back("a" + std::to_string(a));
  for (std::size_t b = 0; b < nb; ++b) responses.push_back("b" + std::to_string(b));
  return GameSpec(states, actions, responses, payoff,
                  random_distribution(rng, nk, 0.05));
}

// Exact value of a matrix game with two maximizer rows: the maximin of the
// lower envelope of the column lines is attained at an endpoint or crossing.
inline double two_row_game_value(const std::vector<std::vector<double>>& m) {
  const std::size_t nb = m[0].size();
  std::vector<double> candidates{0.0, 1.0};
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = i + 1; j < nb; ++j) {
      const double si = m[0][i] - m[1][i];
      const double sj = m[0][j] - m[1][j];
      if (si == sj) continue;
      const double x = (m[1][j] - m[1][i]) / (si - sj);
      if (x > 0.0 && x < 1.0) candidates.push_back(x);
    }
  }
  double best = -std::numeric_limits<double>::infinity();
  for (double x : candidates) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < nb; ++b) {
      worst = std::min(worst, x * m[0][b] + (1.0 - x) * m[1][b]);
    }
    best = std::max(best, worst);
  }
  return best;
}

}  // namespace repgame::testing

#endif  // REPGAME_TESTS_SUPPORT_HPP_
