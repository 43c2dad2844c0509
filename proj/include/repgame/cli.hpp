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

#ifndef REPGAME_CLI_HPP_
#define REPGAME_CLI_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "repgame/history.hpp"

namespace repgame::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,       // bad flags, unreadable file
  kValidation = 2,  // parse or invariant failure in the input
  kFailure = 3,     // budget, solver, or a failed case-study check
};

struct CommandResult {
  int exit_code = kSuccess;
  std::string payload;      // JSON for stdout; valid whenever exit_code is 0
  std::string diagnostics;  // for stderr
};

struct SolveFiniteOptions {
  std::filesystem::path game;
  std::size_t stages = 1;
  std::string player = "informed";  // or "uninformed"
  std::optional<double> lambda;
  std::size_t history_budget = kDefaultHistoryBudget;
};

struct BoundsOptions {
  std::filesystem::path game;
  double lambda = 0.7;
  std::size_t truncation = 4;
  std::size_t grid = 101;
};

struct SimulateOptions {
  std::filesystem::path game;
  std::string mode = "finite";  // or "discounted"
  std::size_t stages = 3;       // finite mode
  double lambda = 0.7;          // discounted mode
  std::size_t truncation = 4;
  // Episode length in discounted mode; by default the smallest T whose
  // payoff tail (1-lambda)^T max|M| drops below 1e-4.
  std::optional<std::size_t> horizon;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  bool cache = true;
  std::optional<std::filesystem::path> csv;
};

struct CaseStudyOptions {
  // Replaces the built-in network interdiction fixture.
  std::optional<std::filesystem::path> game;
  std::size_t trials = 5000;
  std::optional<std::size_t> discounted_trials;  // defaults to min(trials, 2000)
  std::uint64_t seed = 2024;
};

CommandResult cmd_validate(const std::filesystem::path& game);
CommandResult cmd_solve_finite(const SolveFiniteOptions& options);
CommandResult cmd_bounds(const BoundsOptions& options);
CommandResult cmd_simulate(const SimulateOptions& options);
CommandResult cmd_case_study(const CaseStudyOptions& options);

// Parses argv, dispatches, writes payload/diagnostics, returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace repgame::cli

#endif  // REPGAME_CLI_HPP_
