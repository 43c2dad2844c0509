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

#include "repgame/history.hpp"

#include <algorithm>
#include <stdexcept>

#include "repgame/errors.hpp"

namespace repgame {

HistoryTree::HistoryTree(std::size_t num_actions, std::size_t last_stage,
                         std::size_t budget)
    : num_actions_(num_actions), last_stage_(last_stage) {
  if (num_actions == 0) throw std::invalid_argument("history tree needs |A| >= 1");
  if (last_stage == 0) throw std::invalid_argument("history tree needs a stage");
  counts_.reserve(last_stage);
  offsets_.reserve(last_stage + 1);
  offsets_.push_back(0);
  std::size_t count = 1;
  for (std::size_t t = 1; t <= last_stage; ++t) {
    if (count > budget) {
      throw BudgetError("history budget exceeded: |A|^" + std::to_string(t - 1) +
                        " > " + std::to_string(budget));
    }
    counts_.push_back(count);
    offsets_.push_back(offsets_.back() + count);
    if (t < last_stage) count *= num_actions;
  }
}

HistoryIndex HistoryTree::at(std::size_t node) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), node);
  const std::size_t stage = static_cast<std::size_t>(it - offsets_.begin());
  return {stage, node - offsets_[stage - 1]};
}

HistoryIndex HistoryTree::prefix(HistoryIndex h, std::size_t stage) const {
  std::size_t code = h.code;
  for (std::size_t t = h.stage; t > stage; --t) code /= num_actions_;
  return {stage, code};
}

std::vector<std::size_t> HistoryTree::decode(HistoryIndex h) const {
  std::vector<std::size_t> actions(h.stage - 1);
  std::size_t code = h.code;
  for (std::size_t i = actions.size(); i-- > 0;) {
    actions[i] = code % num_actions_;
    code /= num_actions_;
  }
  return actions;
}

HistoryIndex HistoryTree::encode(std::span<const std::size_t> actions) const {
  std::size_t code = 0;
  for (std::size_t a : actions) {
    if (a >= num_actions_) throw std::out_of_range("action index out of range");
    code = code * num_actions_ + a;
  }
  return {actions.size() + 1, code};
}

std::string history_label(const std::vector<std::string>& action_labels,
                          std::span<const std::size_t> actions) {
  std::string out;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (i) out += '.';
    out += action_labels.at(actions[i]);
  }
  return out;
}

}  // namespace repgame
