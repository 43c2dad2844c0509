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

#include "repgame/play.hpp"

#include "repgame/errors.hpp"

namespace repgame {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t Rng::sample(std::span<const double> probabilities) {
  if (probabilities.empty()) throw PlayError("cannot sample an empty action set");
  const double u = uniform();
  double cumulative = 0.0;
  std::size_t last_positive = probabilities.size();
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= 0.0) continue;
    last_positive = i;
    cumulative += probabilities[i];
    if (u < cumulative) return i;
  }
  // Round-off left the total just under u.
  if (last_positive == probabilities.size()) {
    throw PlayError("mixed action has no positive entry");
  }
  return last_positive;
}

InformedStrategyAgent::InformedStrategyAgent(const InformedStrategy& strategy,
                                             std::size_t state)
    : strategy_(strategy), state_(state) {
  if (state >= strategy.num_states()) throw PlayError("state out of range");
}

std::size_t InformedStrategyAgent::step(Rng& rng) {
  if (history_.stage > strategy_.stages()) {
    throw PlayError("strategy horizon exhausted");
  }
  return rng.sample(strategy_.mixed(state_, history_));
}

void InformedStrategyAgent::observe(std::size_t informed_action) {
  history_ = strategy_.tree().child(history_, informed_action);
}

UninformedStrategyAgent::UninformedStrategyAgent(
    const UninformedStrategy& strategy)
    : strategy_(strategy) {}

std::size_t UninformedStrategyAgent::step(Rng& rng) {
  if (history_.stage > strategy_.stages()) {
    throw PlayError("strategy horizon exhausted");
  }
  return rng.sample(strategy_.mixed(history_));
}

void UninformedStrategyAgent::observe(std::size_t informed_action) {
  history_ = strategy_.tree().child(history_, informed_action);
}

}  // namespace repgame
