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

#ifndef REPGAME_PLAY_HPP_
#define REPGAME_PLAY_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "repgame/finite_horizon.hpp"

namespace repgame {

std::uint64_t splitmix64(std::uint64_t x);

// Random stream for one episode. Stream i of a run seeded with s is a
// mt19937_64 seeded with splitmix64(s ^ i), so streams are independent of
// how episodes are scheduled across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(seed ^ index);
  }

  // Uniform on [0, 1) from the top 53 bits of one draw.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Inverse-CDF draw from a mixed action, scanning indices in order.
  std::size_t sample(std::span<const double> probabilities);

 private:
  std::mt19937_64 engine_;
};

// One side of an episode. step() is called once per stage, before the
// stage's informed action is revealed through observe().
class InformedAgent {
 public:
  virtual ~InformedAgent() = default;
  virtual std::size_t step(Rng& rng) = 0;
  virtual void observe(std::size_t informed_action) = 0;
};

class UninformedAgent {
 public:
  virtual ~UninformedAgent() = default;
  virtual std::size_t step(Rng& rng) = 0;
  virtual void observe(std::size_t informed_action) = 0;
};

// Plays a finite-horizon behaviour strategy in state k; the history it
// indexes by is the informed actions observed so far.
class InformedStrategyAgent final : public InformedAgent {
 public:
  InformedStrategyAgent(const InformedStrategy& strategy, std::size_t state);
  std::size_t step(Rng& rng) override;
  void observe(std::size_t informed_action) override;

 private:
  const InformedStrategy& strategy_;
  std::size_t state_;
  HistoryIndex history_;
};

class UninformedStrategyAgent final : public UninformedAgent {
 public:
  explicit UninformedStrategyAgent(const UninformedStrategy& strategy);
  std::size_t step(Rng& rng) override;
  void observe(std::size_t informed_action) override;

 private:
  const UninformedStrategy& strategy_;
  HistoryIndex history_;
};

}  // namespace repgame

#endif  // REPGAME_PLAY_HPP_
