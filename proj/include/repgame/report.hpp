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

#ifndef REPGAME_REPORT_HPP_
#define REPGAME_REPORT_HPP_

#include <json.hpp>

#include "repgame/discounted.hpp"
#include "repgame/evaluation.hpp"
#include "repgame/finite_horizon.hpp"
#include "repgame/game.hpp"
#include "repgame/simulator.hpp"

namespace repgame {

// Significant digits of every number a report emits.
inline constexpr int kReportDigits = 12;

double round_significant(double value, int digits = kReportDigits);
nlohmann::json rounded(const std::vector<double>& values);

nlohmann::json game_summary(const GameSpec& game);

// stage -> history label -> {action label: probability}; the informed
// strategy adds an outer state label level.
nlohmann::json strategy_json(const GameSpec& game,
                             const InformedStrategy& strategy);
nlohmann::json strategy_json(const GameSpec& game,
                             const UninformedStrategy& strategy);

nlohmann::json lp_size_json(const LpSize& size);
nlohmann::json bound_report_json(const BoundReport& report);
nlohmann::json monte_carlo_json(const MonteCarloReport& report);

}  // namespace repgame

#endif  // REPGAME_REPORT_HPP_
