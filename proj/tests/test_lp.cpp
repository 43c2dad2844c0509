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

#include <doctest.h>

#include <random>

#include "repgame/lp.hpp"

using namespace repgame::lp;

TEST_CASE("single variable maximization") {
  LinearProgram lp(1, Sense::kMaximize);
  lp.set_objective(0, 1.0);
  lp.add_constraint({{0, 1.0}}, Relation::kLessEqual, 1.0);
  lp.add_constraint({{0, 1.0}}, Relation::kLessEqual, 2.0);
  const Solution s = solve(lp);
  REQUIRE(s.optimal());
  CHECK(s.objective == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.primal[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("matching pennies has value 0 at the uniform strategy") {
  const double m[2][2] = {{1, -1}, {-1, 1}};
  LinearProgram lp(3, Sense::kMaximize);  // x1, x2, v
  lp.set_free(2);
  lp.set_objective(2, 1.0);
  for (int j = 0; j < 2; ++j) {
    lp.add_constraint({{0, m[0][j]}, {1, m[1][j]}, {2, -1.0}},
                      Relation::kGreaterEqual, 0.0);
  }
  lp.add_constraint({{0, 1.0}, {1, 1.0}}, Relation::kEqual, 1.0);
  const Solution s = solve(lp);
  REQUIRE(s.optimal());
  CHECK(s.objective == doctest::Approx(0.0));
  CHECK(s.primal[0] == doctest::Approx(0.5));
  CHECK(s.primal[1] == doctest::Approx(0.5));
  CHECK(max_violation(lp, s.primal) <= kFeasibilityTolerance);
}

TEST_CASE("contradictory bounds are infeasible") {
  LinearProgram lp(1, Sense::kMinimize);
  lp.set_free(0);
  lp.add_constraint({{0, 1.0}}, Relation::kGreaterEqual, 1.0);
  lp.add_constraint({{0, 1.0}}, Relation::kLessEqual, 0.0);
  CHECK(solve(lp).status == Status::kInfeasible);
}

TEST_CASE("unbounded objective is reported") {
  LinearProgram lp(2, Sense::kMaximize);
  lp.set_objective(0, 1.0);
  lp.add_constraint({{0, 1.0}, {1, -1.0}}, Relation::kLessEqual, 1.0);
  CHECK(solve(lp).status == Status::kUnbounded);
}

TEST_CASE("finite upper bounds and free variables") {
  LinearProgram lp(2, Sense::kMinimize);
  lp.set_bounds(0, -3.0, 2.0);
  lp.set_free(1);
  lp.set_objective(0, 1.0);
  lp.set_objective(1, 1.0);
  lp.add_constraint({{1, 1.0}, {0, -1.0}}, Relation::kGreaterEqual, 0.5);
  const Solution s = solve(lp);
  REQUIRE(s.optimal());
  CHECK(s.primal[0] == doctest::Approx(-3.0));
  CHECK(s.objective == doctest::Approx(-5.5));
}

TEST_CASE("degenerate problem with redundant equalities") {
  LinearProgram lp(3, Sense::kMaximize);
  for (std::size_t j = 0; j < 3; ++j) lp.set_objective(j, 1.0);
  lp.add_constraint({{0, 1.0}, {1, 1.0}, {2, 1.0}}, Relation::kEqual, 1.0);
  lp.add_constraint({{0, 2.0}, {1, 2.0}, {2, 2.0}}, Relation::kEqual, 2.0);
  lp.add_constraint({{0, 1.0}}, Relation::kLessEqual, 0.0);
  const Solution s = solve(lp);
  REQUIRE(s.optimal());
  CHECK(s.objective == doctest::Approx(1.0));
}

TEST_CASE("random matrix games satisfy strong duality") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> entry(-5.0, 5.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 2 + trial % 4;
    const std::size_t cols = 2 + (trial / 4) % 4;
    std::vector<std::vector<double>> m(rows, std::vector<double>(cols));
    for (auto& r : m)
      for (double& v : r) v = entry(rng);

    LinearProgram primal(rows + 1, Sense::kMaximize);
    primal.set_free(rows);
    primal.set_objective(rows, 1.0);
    for (std::size_t j = 0; j < cols; ++j) {
      std::vector<Term> t;
      for (std::size_t i = 0; i < rows; ++i) t.push_back({i, m[i][j]});
      t.push_back({rows, -1.0});
      primal.add_constraint(t, Relation::kGreaterEqual, 0.0);
    }
    std::vector<Term> simplex;
    for (std::size_t i = 0; i < rows; ++i) simplex.push_back({i, 1.0});
    primal.add_constraint(simplex, Relation::kEqual, 1.0);

    LinearProgram dual(cols + 1, Sense::kMinimize);
    dual.set_free(cols);
    dual.set_objective(cols, 1.0);
    for (std::size_t i = 0; i < rows; ++i) {
      std::vector<Term> t;
      for (std::size_t j = 0; j < cols; ++j) t.push_back({j, m[i][j]});
      t.push_back({cols, -1.0});
      dual.add_constraint(t, Relation::kLessEqual, 0.0);
    }
    std::vector<Term> ysum;
    for (std::size_t j = 0; j < cols; ++j) ysum.push_back({j, 1.0});
    dual.add_constraint(ysum, Relation::kEqual, 1.0);

    const Solution p = solve(primal);
    const Solution d = solve(dual);
    REQUIRE(p.optimal());
    REQUIRE(d.optimal());
    CHECK(p.objective == doctest::Approx(d.objective).epsilon(1e-9));
    CHECK(max_violation(primal, p.primal) <= kFeasibilityTolerance);
    CHECK(max_violation(dual, d.primal) <= kFeasibilityTolerance);
  }
}

TEST_CASE("malformed programs are rejected") {
  LinearProgram lp(1, Sense::kMaximize);
  CHECK_THROWS(lp.set_bounds(0, 2.0, 1.0));
  lp.add_constraint({{3, 1.0}}, Relation::kEqual, 0.0);
  CHECK_THROWS(lp.validate());
  CHECK_THROWS(solve(lp));
}
