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

#include "repgame/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace repgame {
namespace {

using nlohmann::json;

json mixed_json(const std::vector<std::string>& labels,
                std::span<const double> mixed) {
  json out = json::object();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out[labels[i]] = round_significant(mixed[i]);
  }
  return out;
}

template <class Emit>
json by_history(const GameSpec& game, const HistoryTree& tree, Emit&& emit) {
  json out = json::object();
  for (std::size_t t = 1; t <= tree.last_stage(); ++t) {
    json stage = json::object();
    for (std::size_t code = 0; code < tree.count(t); ++code) {
      const HistoryIndex h{t, code};
      stage[history_label(game.actions_informed(), tree.decode(h))] = emit(h);
    }
    out[std::to_string(t)] = std::move(stage);
  }
  return out;
}

}  // namespace

double round_significant(double value, int digits) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, value);
  const double out = std::strtod(buf, nullptr);
  return out == 0.0 ? 0.0 : out;  // no negative zero in reports
}

json rounded(const std::vector<double>& values) {
  json out = json::array();
  for (double v : values) out.push_back(round_significant(v));
  return out;
}

json game_summary(const GameSpec& game) {
  return {{"states", game.states()},
          {"actions_informed", game.actions_informed()},
          {"actions_uninformed", game.actions_uninformed()},
          {"initial_probability", rounded(game.initial_probability())},
          {"max_abs_payoff", round_significant(max_abs_payoff(game))}};
}

json strategy_json(const GameSpec& game, const InformedStrategy& strategy) {
  json out = json::object();
  for (std::size_t k = 0; k < strategy.num_states(); ++k) {
    out[game.states()[k]] = by_history(game, strategy.tree(), [&](HistoryIndex h) {
      return mixed_json(game.actions_informed(), strategy.mixed(k, h));
    });
  }
  return out;
}

json strategy_json(const GameSpec& game, const UninformedStrategy& strategy) {
  return by_history(game, strategy.tree(), [&](HistoryIndex h) {
    return mixed_json(game.actions_uninformed(), strategy.mixed(h));
  });
}

json lp_size_json(const LpSize& size) {
  return {{"rows", size.rows},
          {"variables", size.variables},
          {"sign_constraints", size.sign_constraints},
          {"pinned_variables", size.pinned_variables},
          {"textbook",
           {{"constraints", size.textbook_constraints()},
            {"variables", size.textbook_variables()}}}};
}

json bound_report_json(const BoundReport& report) {
  return {{"lambda", round_significant(report.lambda)},
          {"truncation", report.truncation},
          {"grid_points", report.grid_points},
          {"v_hat", round_significant(report.v_hat)},
          {"sup_value", round_significant(report.sup_value)},
          {"sup_belief", rounded(report.sup_belief)},
          {"value_gap_informed", round_significant(report.value_gap_informed)},
          {"value_gap_uninformed",
           round_significant(report.value_gap_uninformed)},
          {"anticipated_interval",
           {round_significant(report.lower), round_significant(report.upper)}}};
}

json monte_carlo_json(const MonteCarloReport& report) {
  return {{"trials", report.trials},
          {"mean", round_significant(report.mean)},
          {"std_dev", round_significant(report.std_dev)},
          {"ci95_halfwidth", round_significant(report.ci95_halfwidth)},
          {"seed", report.seed}};
}

}  // namespace repgame
