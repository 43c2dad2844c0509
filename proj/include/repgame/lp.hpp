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

#ifndef REPGAME_LP_HPP_
#define REPGAME_LP_HPP_

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace repgame::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline constexpr double kFeasibilityTolerance = 1e-8;
inline constexpr double kOptimalityTolerance = 1e-9;
inline constexpr double kPivotTolerance = 1e-10;

enum class Sense { kMaximize, kMinimize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Term {
  std::size_t var;
  double coef;
};

struct Constraint {
  std::vector<Term> terms;
  Relation relation;
  double rhs;
};

struct Bounds {
  double lower = 0.0;
  double upper = kInfinity;
};

// Sparse LP description. Variables default to [0, +inf).
class LinearProgram {
 public:
  LinearProgram(std::size_t num_vars, Sense sense);

  std::size_t num_vars() const { return bounds_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }
  Sense sense() const { return sense_; }

  void set_objective(std::size_t var, double coef);
  void set_bounds(std::size_t var, double lower, double upper);
  void set_free(std::size_t var) { set_bounds(var, -kInfinity, kInfinity); }
  std::size_t add_constraint(std::vector<Term> terms, Relation relation,
                             double rhs);

  const std::vector<double>& objective() const { return objective_; }
  const std::vector<Bounds>& bounds() const { return bounds_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  // Variables carrying a finite bound (each counts as one sign/box
  // constraint when sizing the problem the way textbooks do).
  std::size_t num_bounded_vars() const;

  // Throws ValidationError if an invariant is broken.
  void validate() const;

 private:
  Sense sense_;
  std::vector<double> objective_;
  std::vector<Bounds> bounds_;
  std::vector<Constraint> constraints_;
};

struct Solution {
  Status status = Status::kInfeasible;
  double objective = 0.0;      // meaningful iff optimal
  std::vector<double> primal;  // iff optimal
  // Shadow prices d(objective)/d(rhs_i), one per constraint, iff optimal.
  std::optional<std::vector<double>> dual;
  std::size_t iterations = 0;

  bool optimal() const { return status == Status::kOptimal; }
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual Solution solve(const LinearProgram& lp) const = 0;
  virtual std::string name() const = 0;
};

// Dense revised simplex, two phases (artificial variables, no big-M), Bland's
// rule for both entering and leaving choices. Free variables stay native.
class SimplexBackend final : public Backend {
 public:
  Solution solve(const LinearProgram& lp) const override;
  std::string name() const override { return "bundled-simplex"; }
};

// Solves with the bundled backend. Throws SolverError when no status can be
// certified (iteration cap hit, or the final point fails verification).
Solution solve(const LinearProgram& lp);

// Largest violation of any constraint or bound at x.
double max_violation(const LinearProgram& lp, const std::vector<double>& x);

double evaluate_objective(const LinearProgram& lp,
                          const std::vector<double>& x);

// Plain-text dump, one constraint per line: `coef*xN ... REL rhs`.
std::string dump(const LinearProgram& lp);

const char* to_string(Status status);

}  // namespace repgame::lp

#endif  // REPGAME_LP_HPP_
