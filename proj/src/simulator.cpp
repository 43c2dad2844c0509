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

#include "repgame/simulator.hpp"

#include <cmath>

#include "repgame/errors.hpp"
#include "repgame/parallel.hpp"

namespace repgame {
namespace {

std::vector<EpisodeLog> episodes(const GameSpec& game,
                                 const StageWeights& weights,
                                 const InformedFactory& informed,
                                 const UninformedFactory& uninformed,
                                 std::size_t trials, std::uint64_t seed,
                                 bool parallel) {
  if (trials == 0) throw ValidationError("monte carlo needs trials >= 1");
  std::vector<EpisodeLog> logs(trials);
  auto run = [&](std::size_t i) {
    Rng rng = Rng::stream(seed, i);
    logs[i] = run_episode(game, weights, informed, uninformed, rng);
  };
  if (parallel) {
    parallel_for(trials, run);
  } else {
    for (std::size_t i = 0; i < trials; ++i) run(i);
  }
  return logs;
}

}  // namespace

EpisodeLog run_episode(const GameSpec& game, const StageWeights& weights,
                       const InformedFactory& informed,
                       const UninformedFactory& uninformed, Rng& rng) {
  EpisodeLog log;
  log.state = rng.sample(game.initial_probability());
  const std::unique_ptr<InformedAgent> p1 = informed(log.state);
  const std::unique_ptr<UninformedAgent> p2 = uninformed();
  log.stages.reserve(weights.stages());
  for (std::size_t t = 1; t <= weights.stages(); ++t) {
    StageRecord rec;
    rec.stage = t;
    rec.informed_action = p1->step(rng);
    rec.uninformed_action = p2->step(rng);
    if (rec.informed_action >= game.num_informed_actions() ||
        rec.uninformed_action >= game.num_uninformed_actions()) {
      throw PlayError("agent returned an action index out of range");
    }
    rec.payoff =
        game.payoff(log.state, rec.informed_action, rec.uninformed_action);
    rec.weight = weights[t - 1];
    log.total += rec.weight * rec.payoff;
    log.stages.push_back(rec);
    p1->observe(rec.informed_action);
    p2->observe(rec.informed_action);
  }
  return log;
}

std::vector<EpisodeLog> run_episodes(const GameSpec& game,
                                     const StageWeights& weights,
                                     const InformedFactory& informed,
                                     const UninformedFactory& uninformed,
                                     std::size_t trials, std::uint64_t seed) {
  return episodes(game, weights, informed, uninformed, trials, seed, true);
}

std::vector<EpisodeLog> run_episodes_serial(const GameSpec& game,
                                            const StageWeights& weights,
                                            const InformedFactory& informed,
                                            const UninformedFactory& uninformed,
                                            std::size_t trials,
                                            std::uint64_t seed) {
  return episodes(game, weights, informed, uninformed, trials, seed, false);
}

MonteCarloReport summarize(const std::vector<EpisodeLog>& logs,
                           std::uint64_t seed) {
  MonteCarloReport report;
  report.trials = logs.size();
  report.seed = seed;
  if (logs.empty()) return report;
  double sum = 0.0;
  for (const auto& log : logs) sum += log.total;
  const double n = static_cast<double>(logs.size());
  report.mean = sum / n;
  if (logs.size() > 1) {
    double ss = 0.0;
    for (const auto& log : logs) {
      const double d = log.total - report.mean;
      ss += d * d;
    }
    report.std_dev = std::sqrt(ss / (n - 1.0));
  }
  report.ci95_halfwidth = 1.96 * report.std_dev / std::sqrt(n);
  return report;
}

MonteCarloReport monte_carlo(const GameSpec& game, const StageWeights& weights,
                             const InformedFactory& informed,
                             const UninformedFactory& uninformed,
                             std::size_t trials, std::uint64_t seed) {
  return summarize(
      run_episodes(game, weights, informed, uninformed, trials, seed), seed);
}

void write_episode_csv(std::ostream& out, const std::vector<EpisodeLog>& logs) {
  out << "trial,t,k,a,b,payoff,weight\n";
  const auto precision = out.precision(12);
  for (std::size_t i = 0; i < logs.size(); ++i) {
    for (const auto& rec : logs[i].stages) {
      out << i << ',' << rec.stage << ',' << logs[i].state << ','
          << rec.informed_action << ',' << rec.uninformed_action << ','
          << rec.payoff << ',' << rec.weight << '\n';
    }
  }
  out.precision(precision);
}

}  // namespace repgame
