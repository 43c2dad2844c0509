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

#ifndef REPGAME_HISTORY_HPP_
#define REPGAME_HISTORY_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace repgame {

inline constexpr std::size_t kDefaultHistoryBudget = 1'000'000;

// h_t^A at stage t: t-1 informed actions packed as a base-|A| number with
// a_1 as the most significant digit, so children of `code` are
// code*|A| + a and histories enumerate lexicographically.
struct HistoryIndex {
  std::size_t stage = 1;
  std::size_t code = 0;

  friend bool operator==(const HistoryIndex&, const HistoryIndex&) = default;
};

// Layout of all informed-action histories for stages 1..last_stage. Every
// history gets a dense node id; stage t occupies [offset(t), offset(t+1)).
class HistoryTree {
 public:
  // Throws BudgetError if |A|^(last_stage-1) exceeds `budget`.
  HistoryTree(std::size_t num_actions, std::size_t last_stage,
              std::size_t budget = kDefaultHistoryBudget);

  std::size_t num_actions() const { return num_actions_; }
  std::size_t last_stage() const { return last_stage_; }

  // |A|^(stage-1).
  std::size_t count(std::size_t stage) const { return counts_[stage - 1]; }
  std::size_t offset(std::size_t stage) const { return offsets_[stage - 1]; }
  std::size_t num_nodes() const { return offsets_.back(); }

  std::size_t node(HistoryIndex h) const { return offset(h.stage) + h.code; }
  HistoryIndex at(std::size_t node) const;

  HistoryIndex child(HistoryIndex h, std::size_t a) const {
    return {h.stage + 1, h.code * num_actions_ + a};
  }
  HistoryIndex parent(HistoryIndex h) const {
    return {h.stage - 1, h.code / num_actions_};
  }
  // Last action of a non-root history.
  std::size_t last_action(HistoryIndex h) const {
    return h.code % num_actions_;
  }
  // Prefix of h ending at `stage` (<= h.stage).
  HistoryIndex prefix(HistoryIndex h, std::size_t stage) const;

  std::vector<std::size_t> decode(HistoryIndex h) const;
  HistoryIndex encode(std::span<const std::size_t> actions) const;

 private:
  std::size_t num_actions_;
  std::size_t last_stage_;
  std::vector<std::size_t> counts_;
  std::vector<std::size_t> offsets_;  // last_stage + 1 entries
};

// "1.2" for the history (1, 2); empty string at the root.
std::string history_label(const std::vector<std::string>& action_labels,
                          std::span<const std::size_t> actions);

}  // namespace repgame

#endif  // REPGAME_HISTORY_HPP_
