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

#include "repgame/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <ios>
#include <json.hpp>

#include "repgame/discounted.hpp"
#include "repgame/errors.hpp"
#include "repgame/evaluation.hpp"
#include "repgame/report.hpp"
#include "repgame/simulator.hpp"

namespace repgame::cli {
namespace {

using nlohmann::json;

// Maps the library's exception families onto exit codes.
CommandResult guarded(const std::function<json()>& body) {
  try {
    return {kSuccess, body().dump(2) + "\n", ""};
  } catch (const std::ios_base::failure& e) {
    return {kUsage, "", e.what()};
  } catch (const ParseError& e) {
    return {kValidation, "", std::string("parse error: ") + e.what()};
  } catch (const ValidationError& e) {
    return {kValidation, "", std::string("validation error: ") + e.what()};
  } catch (const BudgetError& e) {
    return {kFailure, "", std::string("budget exceeded: ") + e.what()};
  } catch (const SolverError& e) {
    return {kFailure, "", std::string("solver failure: ") + e.what()};
  } catch (const std::exception& e) {
    return {kFailure, "", std::string("error: ") + e.what()};
  }
}

StageWeights weights_for(std::size_t stages, std::optional<double> lambda) {
  return lambda ? StageWeights::discounted(*lambda, stages)
                : StageWeights::uniform(stages);
}

const char* weights_kind(const StageWeights& w) {
  switch (w.kind()) {
    case StageWeights::Kind::kUniform:
      return "uniform";
    case StageWeights::Kind::kDiscounted:
      return "discounted";
    case StageWeights::Kind::kCustom:
      break;
  }
  return "custom";
}

json solve_finite_json(const GameSpec& game, const StageWeights& weights,
                       const std::string& player, std::size_t budget) {
  const Belief p0(game.initial_probability());
  json out{{"player", player},
           {"stages", weights.stages()},
           {"weights_kind", weights_kind(weights)}};
  if (weights.kind() == StageWeights::Kind::kDiscounted) {
    out["lambda"] = round_significant(weights.lambda());
  }
  if (player == "informed") {
    const InformedSolution sol = solve_informed(game, weights, p0, budget);
    out["value"] = round_significant(sol.value);
    out["strategy"] = strategy_json(game, sol.strategy);
    out["certificates"] = {
        {"best_response_value",
         round_significant(
             best_response_value_vs_informed(game, weights, sol.strategy, p0))}};
    out["lp_size"] = lp_size_json(sol.size);
  } else if (player == "uninformed") {
    const UninformedSolution sol = solve_uninformed(game, weights, p0, budget);
    const BestResponseReport br =
        best_response_value_vs_uninformed(game, weights, sol.strategy, p0);
    out["value"] = round_significant(sol.value);
    out["strategy"] = strategy_json(game, sol.strategy);
    out["certificates"] = {
        {"best_response_value", round_significant(br.aggregate)},
        {"per_state", rounded(br.per_state)}};
    out["ell"] = rounded(sol.ell);
    if (weights.kind() == StageWeights::Kind::kDiscounted) {
      std::vector<double> w(sol.ell.size());
      for (std::size_t k = 0; k < w.size(); ++k) w[k] = -sol.ell[k];
      out["w_star"] = rounded(w);
    }
    out["lp_size"] = lp_size_json(sol.size);
  } else {
    throw ValidationError("player must be 'informed' or 'uninformed'");
  }
  return out;
}

std::vector<EpisodeLog> simulate_finite(const GameSpec& game,
                                        std::size_t stages, std::size_t trials,
                                        std::uint64_t seed) {
  const StageWeights weights = StageWeights::uniform(stages);
  const Belief p0(game.initial_probability());
  const InformedSolution sigma = solve_informed(game, weights, p0);
  const UninformedSolution tau = solve_uninformed(game, weights, p0);
  return run_episodes(
      game, weights,
      [&](std::size_t k) {
        return std::make_unique<InformedStrategyAgent>(sigma.strategy, k);
      },
      [&] { return std::make_unique<UninformedStrategyAgent>(tau.strategy); },
      trials, seed);
}

std::vector<EpisodeLog> simulate_discounted(const GameSpec& game,
                                            const DiscountedConfig& cfg,
                                            std::size_t horizon,
                                            std::size_t trials,
                                            std::uint64_t seed, bool cache) {
  const Belief p0(game.initial_probability());
  const RegretVector w_star = uninformed_initial_regret(game, cfg, p0);
  auto policies = cache ? std::make_shared<InformedPolicyCache>() : nullptr;
  auto actions = cache ? std::make_shared<DualActionCache>() : nullptr;
  return run_episodes(
      game, StageWeights::discounted(cfg.lambda, horizon),
      [&](std::size_t k) {
        return std::make_unique<InformedController>(game, cfg, k, policies);
      },
      [&] {
        return std::make_unique<UninformedController>(game, cfg, w_star,
                                                      actions);
      },
      trials, seed);
}

// One row of the case-study verdict table.
json check(const std::string& name, double computed, double reference,
           double tolerance) {
  const bool pass = std::abs(computed - reference) <= tolerance;
  return {{"name", name},
          {"computed", round_significant(computed)},
          {"reference", round_significant(reference)},
          {"tolerance", tolerance},
          {"pass", pass}};
}

json check_range(const std::string& name, double computed, double lower,
                 double upper) {
  return {{"name", name},
          {"computed", round_significant(computed)},
          {"reference", {lower, upper}},
          {"pass", computed >= lower && computed <= upper}};
}

// Reference strategy tables of the network case study, stages 1..3,
// histories in the order (), 1, 2, 11, 12, 21, 22.
json reference_tables() {
  const std::vector<std::string> h{"", "1", "2", "1.1", "1.2", "2.1", "2.2"};
  const std::vector<std::size_t> stage{1, 2, 2, 3, 3, 3, 3};
  const double ch1[2][7] = {{0.64, 0.56, 0.8, 0.4, 1, 1, 1},
                            {0.35, 0.20, 0.44, 0, 0, 0, 0.6}};
  const double blk[3][7] = {{0.5, 0.54, 0.46, 0.68, 0.49, 0.51, 0.04},
                            {0.5, 0.46, 0.54, 0.04, 0.51, 0.49, 0.68},
                            {0, 0, 0, 0.28, 0, 0, 0.28}};
  json informed = json::object();
  json uninformed = json::object();
  const char* states[2] = {"channel1_high", "channel2_high"};
  const char* actions[3] = {"block1", "block2", "observe"};
  for (std::size_t i = 0; i < h.size(); ++i) {
    const std::string t = std::to_string(stage[i]);
    for (std::size_t k = 0; k < 2; ++k) {
      informed[states[k]][t][h[i]] = {{"1", ch1[k][i]},
                                      {"2", round_significant(1.0 - ch1[k][i])}};
    }
    for (std::size_t b = 0; b < 3; ++b) uninformed[t][h[i]][actions[b]] = blk[b][i];
  }
  return {{"informed", informed}, {"uninformed", uninformed}};
}

}  // namespace

CommandResult cmd_validate(const std::filesystem::path& game) {
  return guarded([&] {
    const GameSpec g = load_game_file(game);
    json out = game_summary(g);
    out["valid"] = true;
    return out;
  });
}

CommandResult cmd_solve_finite(const SolveFiniteOptions& options) {
  return guarded([&] {
    const GameSpec g = load_game_file(options.game);
    return solve_finite_json(g, weights_for(options.stages, options.lambda),
                             options.player, options.history_budget);
  });
}

CommandResult cmd_bounds(const BoundsOptions& options) {
  return guarded([&] {
    const GameSpec g = load_game_file(options.game);
    const DiscountedConfig cfg{options.lambda, options.truncation,
                               kDefaultHistoryBudget};
    return bound_report_json(bound_report(g, cfg, options.grid));
  });
}

CommandResult cmd_simulate(const SimulateOptions& options) {
  return guarded([&] {
    const GameSpec g = load_game_file(options.game);
    json out{{"mode", options.mode}};
    std::vector<EpisodeLog> logs;
    if (options.mode == "finite") {
      out["stages"] = options.stages;
      logs = simulate_finite(g, options.stages, options.trials, options.seed);
    } else if (options.mode == "discounted") {
      const DiscountedConfig cfg{options.lambda, options.truncation,
                                 kDefaultHistoryBudget};
      cfg.validate();
      const std::size_t horizon =
          options.horizon.value_or(tail_horizon(cfg.lambda, max_abs_payoff(g)));
      out["lambda"] = round_significant(cfg.lambda);
      out["truncation"] = cfg.truncation;
      out["horizon"] = horizon;
      logs = simulate_discounted(g, cfg, horizon, options.trials, options.seed,
                                 options.cache);
    } else {
      throw ValidationError("mode must be 'finite' or 'discounted'");
    }
    if (options.csv) {
      std::ofstream csv(*options.csv);
      if (!csv) throw std::ios_base::failure("cannot write " + options.csv->string());
      write_episode_csv(csv, logs);
    }
    out["report"] = monte_carlo_json(summarize(logs, options.seed));
    return out;
  });
}

CommandResult cmd_case_study(const CaseStudyOptions& options) {
  CommandResult result = guarded([&] {
    const GameSpec g = options.game ? load_game_file(*options.game)
                                    : network_interdiction_game();
    const Belief p0(g.initial_probability());
    json checks = json::array();
    json out;

    const StageWeights three = StageWeights::uniform(3);
    const InformedSolution sigma = solve_informed(g, three, p0);
    const UninformedSolution tau = solve_uninformed(g, three, p0);
    const double br_sigma = best_response_value_vs_informed(g, three, sigma.strategy, p0);
    const double br_tau =
        best_response_value_vs_uninformed(g, three, tau.strategy, p0).aggregate;
    checks.push_back(check("finite_value_informed", sigma.value, 6.57, 0.005));
    checks.push_back(check("finite_value_uninformed", tau.value, 6.57, 0.005));
    checks.push_back(check("finite_duality_gap", sigma.value - tau.value, 0.0, 1e-6));
    checks.push_back(check("informed_lp_constraints",
                           static_cast<double>(sigma.size.textbook_constraints()), 65, 0));
    checks.push_back(check("informed_lp_variables",
                           static_cast<double>(sigma.size.textbook_variables()), 35, 0));
    checks.push_back(check("uninformed_lp_constraints",
                           static_cast<double>(tau.size.textbook_constraints()), 44, 0));
    checks.push_back(check("uninformed_lp_variables",
                           static_cast<double>(tau.size.textbook_variables()), 23, 0));
    checks.push_back(check("informed_certificate", br_sigma, 6.57, 0.01));
    checks.push_back(check("uninformed_certificate", br_tau, 6.57, 0.01));
    out["finite"] = {
        {"stages", 3},
        {"value_informed", round_significant(sigma.value)},
        {"value_uninformed", round_significant(tau.value)},
        {"lp_size_informed", lp_size_json(sigma.size)},
        {"lp_size_uninformed", lp_size_json(tau.size)},
        {"strategy_informed", strategy_json(g, sigma.strategy)},
        {"strategy_uninformed", strategy_json(g, tau.strategy)},
        {"reference_tables", reference_tables()},
        {"note", "optimal strategies are not unique; tables are informational"}};

    const DiscountedConfig cfg{0.7, 4, kDefaultHistoryBudget};
    json values = json::array();
    for (std::size_t n = 1; n <= cfg.truncation; ++n) {
      values.push_back(round_significant(
          truncated_value_at_depth(g, cfg.lambda, n, p0, cfg.history_budget)));
    }
    const double v4 = truncated_value(g, cfg, p0);
    const RegretVector w_star = uninformed_initial_regret(g, cfg, p0);
    const DualAction at_w_star = dual_truncated_value(g, cfg, w_star);
    const BoundReport bounds = bound_report(g, cfg, 101);
    checks.push_back(check("discounted_value", v4, 2.24, 0.005));
    for (std::size_t k = 0; k < w_star.size(); ++k) {
      checks.push_back(check("w_star_" + std::to_string(k + 1), w_star[k], -2.24, 0.005));
    }
    checks.push_back(check("dual_value_at_w_star", at_w_star.value, 0.0, 0.01));
    checks.push_back(check("interval_lower", bounds.lower, 1.96, 0.02));
    checks.push_back(check("interval_upper", bounds.upper, 2.59, 0.02));
    out["discounted"] = {{"lambda", cfg.lambda},
                         {"truncation", cfg.truncation},
                         {"values_by_depth", values},
                         {"w_star", rounded(w_star.values())},
                         {"dual_value_at_w_star", round_significant(at_w_star.value)},
                         {"bounds", bound_report_json(bounds)}};

    const std::size_t discounted_trials =
        options.discounted_trials.value_or(std::min<std::size_t>(options.trials, 2000));
    json sim = json::object();
    if (options.trials == 0) {
      sim["finite"] = "skipped";
    } else {
      const MonteCarloReport r =
          summarize(simulate_finite(g, 3, options.trials, options.seed), options.seed);
      checks.push_back(check("simulation_finite_mean", r.mean, 6.57,
                             3.0 * r.ci95_halfwidth));
      sim["finite"] = monte_carlo_json(r);
    }
    if (discounted_trials == 0) {
      sim["discounted"] = "skipped";
    } else {
      const MonteCarloReport r = summarize(
          simulate_discounted(g, cfg, 10, discounted_trials, options.seed, true),
          options.seed);
      checks.push_back(check_range("simulation_discounted_mean", r.mean, 1.96, 2.59));
      sim["discounted"] = monte_carlo_json(r);
      sim["discounted"]["horizon"] = 10;
      sim["discounted"]["reference_mean_100_trials"] = 2.35;
    }
    out["simulation"] = sim;
    bool all_pass = true;
    for (const auto& c : checks) all_pass = all_pass && c["pass"].get<bool>();
    out["checks"] = checks;
    out["all_pass"] = all_pass;
    return out;
  });
  if (result.exit_code == kSuccess &&
      !json::parse(result.payload)["all_pass"].get<bool>()) {
    result.exit_code = kFailure;
    result.diagnostics = "case study: at least one check failed";
  }
  return result;
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Security strategies for repeated zero-sum games with one-sided "
               "information"};
  app.require_subcommand(1);

  std::string validate_game;
  auto* validate = app.add_subcommand("validate", "Check a game document");
  validate->add_option("game", validate_game, "Game JSON file")->required();

  SolveFiniteOptions solve;
  double solve_lambda = 0.0;
  auto* solve_cmd =
      app.add_subcommand("solve-finite", "Solve the weighted N-stage game");
  solve_cmd->add_option("game", solve.game, "Game JSON file")->required();
  solve_cmd->add_option("--stages", solve.stages, "Number of stages N")
      ->required()
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--player", solve.player, "informed | uninformed")
      ->check(CLI::IsMember({"informed", "uninformed"}));
  auto* lambda_opt = solve_cmd->add_option(
      "--lambda", solve_lambda, "Use discounted weights lambda(1-lambda)^(t-1)");
  solve_cmd->add_option("--history-budget", solve.history_budget,
                        "Largest |A|^N accepted");

  BoundsOptions bounds;
  auto* bounds_cmd =
      app.add_subcommand("bounds", "Error bounds and anticipated interval");
  bounds_cmd->add_option("game", bounds.game, "Game JSON file")->required();
  bounds_cmd->add_option("--lambda", bounds.lambda, "Discount factor");
  bounds_cmd->add_option("--truncation", bounds.truncation, "Truncation N");
  bounds_cmd->add_option("--grid", bounds.grid, "Belief grid points");

  SimulateOptions sim;
  std::size_t sim_horizon = 0;
  std::string sim_csv;
  bool no_cache = false;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo self-play");
  sim_cmd->add_option("game", sim.game, "Game JSON file")->required();
  sim_cmd->add_option("--mode", sim.mode, "finite | discounted")
      ->check(CLI::IsMember({"finite", "discounted"}));
  sim_cmd->add_option("--stages", sim.stages, "Stages in finite mode");
  sim_cmd->add_option("--lambda", sim.lambda, "Discount in discounted mode");
  sim_cmd->add_option("--truncation", sim.truncation, "Controller truncation N");
  auto* horizon_opt =
      sim_cmd->add_option("--horizon", sim_horizon, "Episode length (discounted)");
  sim_cmd->add_option("--trials", sim.trials, "Episodes")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim.seed, "Base seed");
  auto* csv_opt = sim_cmd->add_option("--csv", sim_csv, "Per-stage CSV dump");
  sim_cmd->add_flag("--no-cache", no_cache, "Re-solve every controller LP");

  CaseStudyOptions study;
  std::string study_game;
  std::size_t study_dtrials = 0;
  auto* study_cmd =
      app.add_subcommand("case-study", "Network interdiction reproduction");
  auto* study_game_opt =
      study_cmd->add_option("--game", study_game, "Override the built-in game");
  study_cmd->add_option("--trials", study.trials, "Finite-mode episodes (0 skips)");
  auto* dtrials_opt = study_cmd->add_option("--discounted-trials", study_dtrials,
                                            "Discounted episodes");
  study_cmd->add_option("--seed", study.seed, "Base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  CommandResult result;
  if (*validate) {
    result = cmd_validate(validate_game);
  } else if (*solve_cmd) {
    if (*lambda_opt) solve.lambda = solve_lambda;
    result = cmd_solve_finite(solve);
  } else if (*bounds_cmd) {
    result = cmd_bounds(bounds);
  } else if (*sim_cmd) {
    if (*horizon_opt) sim.horizon = sim_horizon;
    if (*csv_opt) sim.csv = sim_csv;
    sim.cache = !no_cache;
    result = cmd_simulate(sim);
  } else if (*study_cmd) {
    if (*study_game_opt) study.game = study_game;
    if (*dtrials_opt) study.discounted_trials = study_dtrials;
    result = cmd_case_study(study);
  }
  out << result.payload;
  if (!result.diagnostics.empty()) err << result.diagnostics << '\n';
  return result.exit_code;
}

}  // namespace repgame::cli
