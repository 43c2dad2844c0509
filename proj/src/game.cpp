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

#include "repgame/game.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "repgame/errors.hpp"

namespace repgame {
namespace {

using nlohmann::json;

void require_unique_labels(const std::vector<std::string>& labels,
                           const std::string& field) {
  if (labels.empty()) throw ValidationError(field + " must be non-empty");
  std::set<std::string> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      throw ValidationError(field + " labels must be unique (duplicate \"" +
                            label + "\")");
    }
  }
}

std::string format_sum(double s) {
  std::ostringstream out;
  out.precision(12);
  out << s;
  return out.str();
}

}  // namespace

GameSpec::GameSpec(std::vector<std::string> states,
                   std::vector<std::string> actions_informed,
                   std::vector<std::string> actions_uninformed,
                   std::vector<std::vector<std::vector<double>>> payoff,
                   std::vector<double> initial_probability)
    : states_(std::move(states)),
      actions_informed_(std::move(actions_informed)),
      actions_uninformed_(std::move(actions_uninformed)) {
  require_unique_labels(states_, "states");
  require_unique_labels(actions_informed_, "actions_informed");
  require_unique_labels(actions_uninformed_, "actions_uninformed");

  const std::size_t nk = states_.size();
  const std::size_t na = actions_informed_.size();
  const std::size_t nb = actions_uninformed_.size();
  if (payoff.size() != nk) {
    throw ValidationError("payoff must have |K| = " + std::to_string(nk) +
                          " matrices, got " + std::to_string(payoff.size()));
  }
  payoff_.reserve(nk * na * nb);
  for (std::size_t k = 0; k < nk; ++k) {
    if (payoff[k].size() != na) {
      throw ValidationError("payoff[" + std::to_string(k) + "] must have |A| = " +
                            std::to_string(na) + " rows");
    }
    for (std::size_t a = 0; a < na; ++a) {
      if (payoff[k][a].size() != nb) {
        throw ValidationError("payoff[" + std::to_string(k) + "][" +
                              std::to_string(a) + "] must have |B| = " +
                              std::to_string(nb) + " entries");
      }
      for (double v : payoff[k][a]) {
        if (!std::isfinite(v)) {
          throw ValidationError("payoff entries must be finite");
        }
        payoff_.push_back(v);
      }
    }
  }

  if (initial_probability.size() != nk) {
    throw ValidationError("initial_probability must have |K| = " +
                          std::to_string(nk) + " components");
  }
  double sum = 0.0;
  for (double v : initial_probability) {
    if (!std::isfinite(v)) {
      throw ValidationError("initial_probability components must be finite");
    }
    if (v <= 0.0) {
      throw ValidationError(
          "initial_probability components must be strictly positive");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    throw ValidationError("initial_probability sums to " + format_sum(sum) +
                          ", expected 1");
  }
  for (double& v : initial_probability) v /= sum;
  initial_probability_ = std::move(initial_probability);
}

std::vector<std::vector<std::vector<double>>> GameSpec::payoff_tensor() const {
  std::vector<std::vector<std::vector<double>>> out(num_states());
  for (std::size_t k = 0; k < num_states(); ++k) {
    for (std::size_t a = 0; a < num_informed_actions(); ++a) {
      auto row = row_view(k, a);
      out[k].emplace_back(row.begin(), row.end());
    }
  }
  return out;
}

bool is_valid_distribution(std::span<const double> p, double tolerance) {
  if (p.empty()) return false;
  double sum = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0 + tolerance) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tolerance;
}

Belief::Belief(std::vector<double> probabilities)
    : probabilities_(std::move(probabilities)) {
  if (!is_valid_distribution(probabilities_)) {
    throw ValidationError("belief must be a distribution over states");
  }
}

Belief Belief::uniform(std::size_t num_states) {
  return Belief(std::vector<double>(num_states, 1.0 / num_states));
}

Belief Belief::point_mass(std::size_t num_states, std::size_t k) {
  std::vector<double> p(num_states, 0.0);
  p.at(k) = 1.0;
  return Belief(std::move(p));
}

RegretVector::RegretVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) throw ValidationError("regret vector must be non-empty");
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw ValidationError("regret components must be finite");
    }
  }
}

GameSpec load_game(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed game document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("game document must be a JSON object");
  try {
    return GameSpec(doc.at("states").get<std::vector<std::string>>(),
                    doc.at("actions_informed").get<std::vector<std::string>>(),
                    doc.at("actions_uninformed").get<std::vector<std::string>>(),
                    doc.at("payoff")
                        .get<std::vector<std::vector<std::vector<double>>>>(),
                    doc.at("initial_probability").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed game document: ") + e.what());
  }
}

GameSpec load_game_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_game(buffer.str());
}

std::string serialize_game(const GameSpec& game, int indent) {
  json doc;
  doc["states"] = game.states();
  doc["actions_informed"] = game.actions_informed();
  doc["actions_uninformed"] = game.actions_uninformed();
  doc["payoff"] = game.payoff_tensor();
  doc["initial_probability"] = game.initial_probability();
  return doc.dump(indent);
}

std::vector<double> payoff_row(const GameSpec& game, std::size_t k,
                               std::size_t a) {
  if (k >= game.num_states() || a >= game.num_informed_actions()) {
    throw std::out_of_range("payoff_row index out of range");
  }
  auto row = game.row_view(k, a);
  return {row.begin(), row.end()};
}

double max_abs_payoff(const GameSpec& game) {
  double best = 0.0;
  for (std::size_t k = 0; k < game.num_states(); ++k) {
    for (std::size_t a = 0; a < game.num_informed_actions(); ++a) {
      for (double v : game.row_view(k, a)) best = std::max(best, std::abs(v));
    }
  }
  return best;
}

GameSpec network_interdiction_game() {
  return GameSpec({"channel1_high", "channel2_high"}, {"1", "2"},
                  {"block1", "block2", "observe"},
                  {{{1, 4, 3}, {2, 1, 1}}, {{1, 2, 1}, {4, 1, 3}}}, {0.5, 0.5});
}

}  // namespace repgame
