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

#include "repgame/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "repgame/errors.hpp"

namespace repgame::lp {

LinearProgram::LinearProgram(std::size_t num_vars, Sense sense)
    : sense_(sense), objective_(num_vars, 0.0), bounds_(num_vars) {
  if (num_vars == 0) throw ValidationError("LP needs at least one variable");
}

void LinearProgram::set_objective(std::size_t var, double coef) {
  objective_.at(var) = coef;
}

void LinearProgram::set_bounds(std::size_t var, double lower, double upper) {
  if (std::isnan(lower) || std::isnan(upper) || lower > upper ||
      lower == kInfinity || upper == -kInfinity) {
    throw ValidationError("invalid variable bounds");
  }
  bounds_.at(var) = {lower, upper};
}

std::size_t LinearProgram::add_constraint(std::vector<Term> terms,
                                          Relation relation, double rhs) {
  constraints_.push_back({std::move(terms), relation, rhs});
  return constraints_.size() - 1;
}

std::size_t LinearProgram::num_bounded_vars() const {
  return static_cast<std::size_t>(
      std::count_if(bounds_.begin(), bounds_.end(), [](const Bounds& b) {
        return std::isfinite(b.lower) || std::isfinite(b.upper);
      }));
}

void LinearProgram::validate() const {
  for (double c : objective_) {
    if (!std::isfinite(c)) throw ValidationError("objective must be finite");
  }
  for (const auto& row : constraints_) {
    if (!std::isfinite(row.rhs)) throw ValidationError("rhs must be finite");
    for (const auto& t : row.terms) {
      if (t.var >= num_vars()) {
        throw ValidationError("constraint references unknown variable");
      }
      if (!std::isfinite(t.coef)) {
        throw ValidationError("constraint coefficients must be finite");
      }
    }
  }
}

double evaluate_objective(const LinearProgram& lp,
                          const std::vector<double>& x) {
  double v = 0.0;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) v += lp.objective()[j] * x[j];
  return v;
}

double max_violation(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    worst = std::max(worst, lp.bounds()[j].lower - x[j]);
    worst = std::max(worst, x[j] - lp.bounds()[j].upper);
  }
  for (const auto& row : lp.constraints()) {
    double lhs = 0.0;
    for (const auto& t : row.terms) lhs += t.coef * x[t.var];
    switch (row.relation) {
      case Relation::kLessEqual:
        worst = std::max(worst, lhs - row.rhs);
        break;
      case Relation::kGreaterEqual:
        worst = std::max(worst, row.rhs - lhs);
        break;
      case Relation::kEqual:
        worst = std::max(worst, std::abs(lhs - row.rhs));
        break;
    }
  }
  return worst;
}

const char* to_string(Status status) {
  switch (status) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

std::string dump(const LinearProgram& lp) {
  std::ostringstream out;
  out.precision(12);
  out << (lp.sense() == Sense::kMaximize ? "maximize" : "minimize");
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (lp.objective()[j] != 0.0) out << ' ' << lp.objective()[j] << "*x" << j;
  }
  out << '\n';
  for (const auto& row : lp.constraints()) {
    for (const auto& t : row.terms) out << t.coef << "*x" << t.var << ' ';
    switch (row.relation) {
      case Relation::kLessEqual:
        out << "<=";
        break;
      case Relation::kEqual:
        out << "=";
        break;
      case Relation::kGreaterEqual:
        out << ">=";
        break;
    }
    out << ' ' << row.rhs << '\n';
  }
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    const auto& b = lp.bounds()[j];
    if (b.lower == 0.0 && b.upper == kInfinity) continue;
    out << "bounds x" << j << ' ' << b.lower << ' ' << b.upper << '\n';
  }
  return out.str();
}

namespace {

// Internal problem: minimize c^T z s.t. A z = b, b >= 0, z_j >= 0 unless
// free. Columns are structural, then slacks, then artificials.
class RevisedSimplex {
 public:
  explicit RevisedSimplex(const LinearProgram& lp) : lp_(lp) { build(); }

  Solution run() {
    Solution out;
    refactor();
    // Phase 1: drive the artificial sum to zero.
    std::vector<double> phase1(num_cols(), 0.0);
    for (std::size_t j = first_art_; j < num_cols(); ++j) phase1[j] = 1.0;
    if (first_art_ < num_cols()) {
      if (iterate(phase1, /*phase_two=*/false) != Status::kOptimal) {
        throw SolverError("phase one did not terminate at an optimum");
      }
      double infeasibility = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] >= first_art_) infeasibility += std::abs(xb_[i]);
      }
      if (infeasibility > kFeasibilityTolerance * (1.0 + b_scale_)) {
        out.status = Status::kInfeasible;
        out.iterations = iterations_;
        return out;
      }
      evict_artificials();
    }
    const Status status = iterate(cost_, /*phase_two=*/true);
    out.iterations = iterations_;
    if (status == Status::kUnbounded) {
      out.status = Status::kUnbounded;
      return out;
    }
    refactor();
    out.status = Status::kOptimal;
    out.primal = recover_primal();
    if (max_violation(lp_, out.primal) > kFeasibilityTolerance) {
      throw SolverError("optimal basis failed primal verification");
    }
    out.objective = evaluate_objective(lp_, out.primal);
    out.dual = recover_duals();
    return out;
  }

 private:
  struct Column {
    std::vector<std::pair<std::size_t, double>> entries;
    bool free = false;
  };

  // x_j = offset_j + sign_j * z_j for each original variable j.
  struct VarMap {
    double offset = 0.0;
    double sign = 1.0;
  };

  std::size_t num_cols() const { return cols_.size(); }

  void build() {
    lp_.validate();
    const std::size_t n = lp_.num_vars();
    map_.resize(n);
    std::vector<std::size_t> box_rows;  // vars needing an explicit upper row
    for (std::size_t j = 0; j < n; ++j) {
      const auto& bd = lp_.bounds()[j];
      if (std::isfinite(bd.lower)) {
        map_[j] = {bd.lower, 1.0};
        if (std::isfinite(bd.upper)) box_rows.push_back(j);
      } else if (std::isfinite(bd.upper)) {
        map_[j] = {bd.upper, -1.0};
      } else {
        map_[j] = {0.0, 1.0};
      }
    }
    num_orig_rows_ = lp_.num_constraints();
    m_ = num_orig_rows_ + box_rows.size();

    // Rows in terms of z, before slack/artificial columns.
    struct Row {
      std::vector<std::pair<std::size_t, double>> entries;
      Relation relation;
      double rhs;
    };
    std::vector<Row> rows;
    rows.reserve(m_);
    for (const auto& c : lp_.constraints()) {
      Row r{{}, c.relation, c.rhs};
      for (const auto& t : c.terms) {
        r.rhs -= t.coef * map_[t.var].offset;
        r.entries.emplace_back(t.var, t.coef * map_[t.var].sign);
      }
      rows.push_back(std::move(r));
    }
    for (std::size_t j : box_rows) {
      const auto& bd = lp_.bounds()[j];
      rows.push_back({{{j, 1.0}}, Relation::kLessEqual, bd.upper - bd.lower});
    }

    cols_.assign(n, Column{});
    for (std::size_t j = 0; j < n; ++j) {
      cols_[j].free = !std::isfinite(lp_.bounds()[j].lower) &&
                      !std::isfinite(lp_.bounds()[j].upper);
    }
    row_sign_.assign(m_, 1.0);
    b_.assign(m_, 0.0);
    std::vector<int> slack_sign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      double sign = rows[i].rhs < 0.0 ? -1.0 : 1.0;
      row_sign_[i] = sign;
      b_[i] = sign * rows[i].rhs;
      for (const auto& [j, a] : rows[i].entries) {
        if (a != 0.0) cols_[j].entries.emplace_back(i, sign * a);
      }
      if (rows[i].relation == Relation::kLessEqual) slack_sign[i] = 1;
      if (rows[i].relation == Relation::kGreaterEqual) slack_sign[i] = -1;
      slack_sign[i] *= static_cast<int>(sign);
    }
    // Merge duplicate (row, var) entries that sparse input may carry.
    for (auto& col : cols_) {
      std::sort(col.entries.begin(), col.entries.end());
      std::vector<std::pair<std::size_t, double>> merged;
      for (const auto& e : col.entries) {
        if (!merged.empty() && merged.back().first == e.first) {
          merged.back().second += e.second;
        } else {
          merged.push_back(e);
        }
      }
      col.entries = std::move(merged);
    }

    basis_.assign(m_, 0);
    std::vector<std::size_t> needs_art;
    for (std::size_t i = 0; i < m_; ++i) {
      if (slack_sign[i] == 0) {
        needs_art.push_back(i);
        continue;
      }
      Column c;
      c.entries.emplace_back(i, static_cast<double>(slack_sign[i]));
      cols_.push_back(std::move(c));
      if (slack_sign[i] > 0) {
        basis_[i] = cols_.size() - 1;
      } else {
        needs_art.push_back(i);
      }
    }
    first_art_ = cols_.size();
    for (std::size_t i : needs_art) {
      Column c;
      c.entries.emplace_back(i, 1.0);
      cols_.push_back(std::move(c));
      basis_[i] = cols_.size() - 1;
    }

    const double sense = lp_.sense() == Sense::kMaximize ? -1.0 : 1.0;
    cost_.assign(num_cols(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      cost_[j] = sense * lp_.objective()[j] * map_[j].sign;
    }
    b_scale_ = 0.0;
    for (double v : b_) b_scale_ = std::max(b_scale_, std::abs(v));
    is_basic_.assign(num_cols(), false);
    for (std::size_t j : basis_) is_basic_[j] = true;
  }

  // Rebuilds B^{-1} from scratch (Gauss-Jordan, partial pivoting) and x_B.
  void refactor() {
    binv_.assign(m_ * m_, 0.0);
    std::vector<double> bmat(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      for (const auto& [r, v] : cols_[basis_[i]].entries) bmat[r * m_ + i] = v;
      binv_[i * m_ + i] = 1.0;
    }
    for (std::size_t c = 0; c < m_; ++c) {
      std::size_t piv = c;
      double best = std::abs(bmat[c * m_ + c]);
      for (std::size_t r = c + 1; r < m_; ++r) {
        if (std::abs(bmat[r * m_ + c]) > best) {
          best = std::abs(bmat[r * m_ + c]);
          piv = r;
        }
      }
      if (best < kPivotTolerance) throw SolverError("singular basis");
      if (piv != c) {
        for (std::size_t k = 0; k < m_; ++k) {
          std::swap(bmat[c * m_ + k], bmat[piv * m_ + k]);
          std::swap(binv_[c * m_ + k], binv_[piv * m_ + k]);
        }
      }
      const double inv = 1.0 / bmat[c * m_ + c];
      for (std::size_t k = 0; k < m_; ++k) {
        bmat[c * m_ + k] *= inv;
        binv_[c * m_ + k] *= inv;
      }
      for (std::size_t r = 0; r < m_; ++r) {
        if (r == c) continue;
        const double f = bmat[r * m_ + c];
        if (f == 0.0) continue;
        for (std::size_t k = 0; k < m_; ++k) {
          bmat[r * m_ + k] -= f * bmat[c * m_ + k];
          binv_[r * m_ + k] -= f * binv_[c * m_ + k];
        }
      }
    }
    xb_.assign(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < m_; ++k) s += binv_[i * m_ + k] * b_[k];
      xb_[i] = s;
    }
    since_refactor_ = 0;
  }

  void ftran(std::size_t j, std::vector<double>& alpha) const {
    alpha.assign(m_, 0.0);
    for (const auto& [r, v] : cols_[j].entries) {
      for (std::size_t i = 0; i < m_; ++i) alpha[i] += binv_[i * m_ + r] * v;
    }
  }

  void prices(const std::vector<double>& cost, std::vector<double>& pi) const {
    pi.assign(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &binv_[i * m_];
      for (std::size_t k = 0; k < m_; ++k) pi[k] += cb * row[k];
    }
  }

  double reduced_cost(const std::vector<double>& cost,
                      const std::vector<double>& pi, std::size_t j) const {
    double d = cost[j];
    for (const auto& [r, v] : cols_[j].entries) d -= pi[r] * v;
    return d;
  }

  void pivot(std::size_t r, std::size_t entering,
             const std::vector<double>& alpha, double step) {
    for (std::size_t i = 0; i < m_; ++i) xb_[i] -= step * alpha[i];
    xb_[r] = step;
    const double inv = 1.0 / alpha[r];
    double* prow = &binv_[r * m_];
    for (std::size_t k = 0; k < m_; ++k) prow[k] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || alpha[i] == 0.0) continue;
      const double f = alpha[i];
      double* row = &binv_[i * m_];
      for (std::size_t k = 0; k < m_; ++k) row[k] -= f * prow[k];
    }
    is_basic_[basis_[r]] = false;
    basis_[r] = entering;
    is_basic_[entering] = true;
    ++iterations_;
    if (++since_refactor_ >= kRefactorInterval) refactor();
  }

  Status iterate(const std::vector<double>& cost, bool phase_two) {
    std::vector<double> pi;
    std::vector<double> alpha;
    const std::size_t cap = 200 * (m_ + num_cols()) + 1000;
    for (std::size_t it = 0;; ++it) {
      if (it > cap) throw SolverError("simplex iteration cap reached");
      prices(cost, pi);
      // Bland: lowest-index improving column.
      std::size_t entering = num_cols();
      double direction = 1.0;
      for (std::size_t j = 0; j < num_cols(); ++j) {
        if (is_basic_[j]) continue;
        if (phase_two && j >= first_art_) continue;
        const double d = reduced_cost(cost, pi, j);
        if (d < -kOptimalityTolerance) {
          entering = j;
          direction = 1.0;
          break;
        }
        if (cols_[j].free && d > kOptimalityTolerance) {
          entering = j;
          direction = -1.0;
          break;
        }
      }
      if (entering == num_cols()) return Status::kOptimal;

      ftran(entering, alpha);
      // Entries far below the column's largest are treated as round-off;
      // pivoting on them drifts B^{-1} towards singularity.
      double alpha_max = 0.0;
      for (double a : alpha) alpha_max = std::max(alpha_max, std::abs(a));
      const double pivot_floor =
          std::max(kPivotTolerance, kRelativePivot * alpha_max);
      // Bland: among minimum ratios, the basic variable of lowest index.
      std::size_t leave = m_;
      double best_ratio = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const std::size_t bj = basis_[i];
        if (cols_[bj].free) continue;
        const double rate = direction * alpha[i];
        double ratio;
        if (bj >= first_art_ && phase_two) {
          // Leftover artificial in a redundant row: pinned at zero.
          if (std::abs(alpha[i]) <= pivot_floor) continue;
          ratio = 0.0;
        } else {
          if (rate <= pivot_floor) continue;
          ratio = std::max(xb_[i], 0.0) / rate;
        }
        const bool better = leave == m_ || ratio < best_ratio - kRatioTie;
        const bool tie = !better && ratio <= best_ratio + kRatioTie &&
                         bj < basis_[leave];
        if (better || tie) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m_) return Status::kUnbounded;
      pivot(leave, entering, alpha, direction * best_ratio);
    }
  }

  // After phase one, swap zero-valued artificials out of the basis where a
  // structural or slack column can take their place.
  void evict_artificials() {
    std::vector<double> alpha;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      for (std::size_t j = 0; j < first_art_; ++j) {
        if (is_basic_[j]) continue;
        ftran(j, alpha);
        if (std::abs(alpha[i]) > 1e-7) {
          pivot(i, j, alpha, xb_[i] / alpha[i]);
          break;
        }
      }
    }
    refactor();
  }

  std::vector<double> recover_primal() const {
    std::vector<double> z(num_cols(), 0.0);
    for (std::size_t i = 0; i < m_; ++i) z[basis_[i]] = xb_[i];
    std::vector<double> x(lp_.num_vars());
    for (std::size_t j = 0; j < lp_.num_vars(); ++j) {
      double zj = z[j];
      if (!cols_[j].free && zj < 0.0 && zj > -kFeasibilityTolerance) zj = 0.0;
      x[j] = map_[j].offset + map_[j].sign * zj;
    }
    return x;
  }

  std::vector<double> recover_duals() const {
    std::vector<double> pi;
    prices(cost_, pi);
    const double sense = lp_.sense() == Sense::kMaximize ? -1.0 : 1.0;
    std::vector<double> dual(num_orig_rows_);
    for (std::size_t i = 0; i < num_orig_rows_; ++i) {
      dual[i] = sense * row_sign_[i] * pi[i];
    }
    return dual;
  }

  static constexpr std::size_t kRefactorInterval = 64;
  static constexpr double kRatioTie = 1e-12;
  static constexpr double kRelativePivot = 1e-9;

  const LinearProgram& lp_;
  std::vector<VarMap> map_;
  std::vector<Column> cols_;
  std::vector<double> cost_;
  std::vector<double> b_;
  std::vector<double> row_sign_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_basic_;
  std::vector<double> binv_;
  std::vector<double> xb_;
  std::size_t m_ = 0;
  std::size_t num_orig_rows_ = 0;
  std::size_t first_art_ = 0;
  std::size_t iterations_ = 0;
  std::size_t since_refactor_ = 0;
  double b_scale_ = 0.0;
};

}  // namespace

Solution SimplexBackend::solve(const LinearProgram& lp) const {
  return RevisedSimplex(lp).run();
}

Solution solve(const LinearProgram& lp) { return SimplexBackend{}.solve(lp); }

}  // namespace repgame::lp
