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

#ifndef REPGAME_SIMULATOR_HPP_
#define REPGAME_SIMULATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <vector>

#include "repgame/finite_horizon.hpp"
#include "repgame/game.hpp"
#include "repgame/play.hpp"

namespace repgame {

struct StageRecord {
  std::size_t stage = 0;  // 1-based
  std::size_t informed_action = 0;
  std::size_t uninformed_action = 0;
  double payoff = 0.0;  // M(k, a_t, b_t)
  double weight = 0.0;  // w_t
};

struct EpisodeLog {
  std::size_t state = 0;
  std::vector<StageRecord> stages;
  double total = 0.0;  // sum_t w_t M(k, a_t, b_t)
};

struct MonteCarloReport {
  std::size_t trials = 0;
  double mean = 0.0;
  double std_dev = 0.0;  // sample standard deviation; 0 for one trial
  double ci95_halfwidth = 0.0;
  std::uint64_t seed = 0;
};

// Factories are called from worker threads and must be safe to share.
using InformedFactory =
    std::function<std::unique_ptr<InformedAgent>(std::size_t state)>;
using UninformedFactory = std::function<std::unique_ptr<UninformedAgent>()>;

// Draws k from p0, then per stage: the informed action, the uninformed
// action, the payoff, and both observe() hooks with the informed action.
EpisodeLog run_episode(const GameSpec& game, const StageWeights& weights,
                       const InformedFactory& informed,
                       const UninformedFactory& uninformed, Rng& rng);

// Episode i runs on Rng::stream(seed, i). Logs come back in episode order
// whatever the thread schedule.
std::vector<EpisodeLog> run_episodes(const GameSpec& game,
                                     const StageWeights& weights,
                                     const InformedFactory& informed,
                                     const UninformedFactory& uninformed,
                                     std::size_t trials, std::uint64_t seed);
std::vector<EpisodeLog> run_episodes_serial(const GameSpec& game,
                                            const StageWeights& weights,
                                            const InformedFactory& informed,
                                            const UninformedFactory& uninformed,
                                            std::size_t trials,
                                            std::uint64_t seed);

// Mean, std and 95% half-width folded over totals in episode order.
MonteCarloReport summarize(const std::vector<EpisodeLog>& logs,
                           std::uint64_t seed);

MonteCarloReport monte_carlo(const GameSpec& game, const StageWeights& weights,
                             const InformedFactory& informed,
                             const UninformedFactory& uninformed,
                             std::size_t trials, std::uint64_t seed);

// trial,t,k,a,b,payoff,weight with one row per stage.
void write_episode_csv(std::ostream& out, const std::vector<EpisodeLog>& logs);

}  // namespace repgame

#endif  // REPGAME_SIMULATOR_HPP_
