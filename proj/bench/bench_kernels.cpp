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

// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "repgame/discounted.hpp"
#include "repgame/evaluation.hpp"
#include "repgame/finite_horizon.hpp"
#include "repgame/simulator.hpp"

namespace {

using namespace repgame;

void value_sweep_bench(benchmark::State& state, bool parallel) {
  const GameSpec g = network_interdiction_game();
  const auto beliefs = belief_grid(2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? value_sweep(g, 0.7, 4, beliefs)
                                      : value_sweep_serial(g, 0.7, 4, beliefs));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void plan_table_bench(benchmark::State& state, bool parallel) {
  const GameSpec g = network_interdiction_game();
  const StageWeights w = StageWeights::uniform(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? plan_payoff_table(g, w) : plan_payoff_table_serial(g, w));
  }
}

void episodes_bench(benchmark::State& state, bool parallel) {
  const GameSpec g = network_interdiction_game();
  const StageWeights w = StageWeights::uniform(3);
  const Belief p(g.initial_probability());
  const InformedSolution sigma = solve_informed(g, w, p);
  const UninformedSolution tau = solve_uninformed(g, w, p);
  const InformedFactory informed = [&](std::size_t k) {
    return std::make_unique<InformedStrategyAgent>(sigma.strategy, k);
  };
  const UninformedFactory uninformed = [&] {
    return std::make_unique<UninformedStrategyAgent>(tau.strategy);
  };
  const auto trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? run_episodes(g, w, informed, uninformed, trials, 1)
                                      : run_episodes_serial(g, w, informed, uninformed, trials, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(value_sweep_bench, serial, false)->Arg(51)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(value_sweep_bench, openmp, true)->Arg(51)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(plan_table_bench, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(plan_table_bench, openmp, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(episodes_bench, serial, false)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(episodes_bench, openmp, true)->Arg(5000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
