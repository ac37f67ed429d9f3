// Copyright 2026 The Optscore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "optscore/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "optscore/error.hpp"

namespace optscore::lp {

// -- LinearProgram ----------------------------------------------------------------

LinearProgram::LinearProgram(std::vector<double> objective) : objective_(std::move(objective)) {
  if (objective_.empty()) throw DimensionError("linear program needs at least one variable");
  for (double c : objective_) {
    if (!std::isfinite(c)) throw DomainError("objective coefficient is not finite");
  }
}

void LinearProgram::add_constraint(std::vector<double> coeffs, Relation relation, double rhs) {
  if (coeffs.size() != objective_.size()) {
    throw DimensionError("constraint has " + std::to_string(coeffs.size()) + " coefficients, expected " +
                         std::to_string(objective_.size()));
  }
  for (double a : coeffs) {
    if (!std::isfinite(a)) throw DomainError("constraint coefficient is not finite");
  }
  if (!std::isfinite(rhs)) throw DomainError("constraint right-hand side is not finite");
  constraints_.push_back({std::move(coeffs), relation, rhs});
}

double LinearProgram::evaluate(const std::vector<double>& z) const {
  double v = 0.0;
  for (std::size_t j = 0; j < objective_.size(); ++j) v += objective_[j] * z[j];
  return v;
}

double LinearProgram::max_violation(const std::vector<double>& z) const {
  if (z.size() != objective_.size()) throw DimensionError("max_violation: wrong solution length");
  double worst = 0.0;
  for (const Constraint& c : constraints_) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) lhs += c.coeffs[j] * z[j];
    double v = 0.0;
    switch (c.relation) {
      case Relation::kLessEqual: v = lhs - c.rhs; break;
      case Relation::kGreaterEqual: v = c.rhs - lhs; break;
      case Relation::kEqual: v = std::abs(lhs - c.rhs); break;
    }
    worst = std::max(worst, v);
  }
  return worst;
}

std::string LinearProgram::to_lp_format(const std::vector<std::string>& names) const {
  auto var = [&](std::size_t j) {
    return j < names.size() ? names[j] : "z" + std::to_string(j);
  };
  auto linear = [&](const std::vector<double>& row) {
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] == 0.0) continue;
      if (!first) os << (row[j] < 0 ? " - " : " + ");
      else if (row[j] < 0) os << "-";
      os << std::abs(row[j]) << ' ' << var(j);
      first = false;
    }
    if (first) os << "0 " << var(0);
    return os.str();
  };
  std::ostringstream os;
  os.precision(17);
  os << "maximize\n  obj: " << linear(objective_) << "\nsubject to\n";
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const Constraint& c = constraints_[i];
    const char* rel = c.relation == Relation::kLessEqual ? "<=" : c.relation == Relation::kEqual ? "=" : ">=";
    os << "  c" << i << ": " << linear(c.coeffs) << ' ' << rel << ' ' << c.rhs << '\n';
  }
  os << "bounds\n";
  for (std::size_t j = 0; j < objective_.size(); ++j) os << "  " << var(j) << " free\n";
  os << "end\n";
  return os.str();
}

const char* to_string(Status s) {
  switch (s) {
    case Status::kOptimal: return "optimal";
    case Status::kUnbounded: return "unbounded";
    case Status::kInfeasible: return "infeasible";
  }
  return "unknown";
}

// -- simplex ----------------------------------------------------------------------

namespace {

// Dense tableau for: maximize c.x, A x = b, x >= 0, b >= 0. The last row holds
// the objective in "z - c x = 0" form; the last column holds the right-hand
// side, so the current objective value sits in the bottom-right cell.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_((rows + 1) * (cols + 1), 0.0), basis_(rows), active_(rows, true) {}

  double& at(std::size_t i, std::size_t j) { return cells_[i * (cols_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return cells_[i * (cols_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, cols_); }
  double& cost(std::size_t j) { return at(rows_, j); }
  double value() const { return at(rows_, cols_); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::vector<bool>& active() { return active_; }

  void pivot(std::size_t r, std::size_t c) {
    const std::size_t width = cols_ + 1;
    double* prow = &cells_[r * width];
    const double inv = 1.0 / prow[c];
    for (std::size_t j = 0; j < width; ++j) prow[j] *= inv;
    prow[c] = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r || (i < rows_ && !active_[i])) continue;
      double* row = &cells_[i * width];
      const double f = row[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) row[j] -= f * prow[j];
      row[c] = 0.0;
    }
    basis_[r] = c;
  }

  // Re-expresses the objective row in terms of the current basis.
  void price_out() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!active_[i]) continue;
      const double f = cost(basis_[i]);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(rows_, j) -= f * at(i, j);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> cells_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
};

enum class PhaseOutcome { kOptimal, kUnbounded };

// Dantzig pricing (most negative reduced cost) while the objective moves;
// after kDegenerateRun consecutive zero-length steps, Bland's smallest-index
// entering rule takes over until a step makes progress.
PhaseOutcome run_phase(Tableau& t, std::size_t eligible_cols, double tol, std::size_t cap,
                       std::size_t& iterations) {
  constexpr std::size_t kDegenerateRun = 50;
  constexpr double kHarrisSlack = 1e-9;
  std::size_t degenerate = 0;
  for (std::size_t it = 0;; ++it) {
    if (it >= cap) {
      std::ostringstream os;
      os << "simplex stalled after " << it << " iterations (" << t.rows() << " rows, " << t.cols()
         << " columns, objective " << t.value() << ")";
      throw SolverError(os.str());
    }
    const bool bland = degenerate >= kDegenerateRun;
    std::size_t enter = eligible_cols;
    double most = -tol;
    for (std::size_t j = 0; j < eligible_cols; ++j) {
      if (t.cost(j) < most) {
        enter = j;
        if (bland) break;
        most = t.cost(j);
      }
    }
    if (enter == eligible_cols) return PhaseOutcome::kOptimal;

    // Harris two-pass ratio test: bound the step with a relaxed right-hand
    // side, then take the largest pivot element among rows within the bound.
    double bound = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (!t.active()[i]) continue;
      const double a = t.at(i, enter);
      if (a > tol) bound = std::min(bound, (std::max(0.0, t.rhs(i)) + kHarrisSlack) / a);
    }
    std::size_t leave = t.rows();
    double best = 0.0, pivot = 0.0;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (!t.active()[i]) continue;
      const double a = t.at(i, enter);
      if (a <= tol) continue;
      const double ratio = std::max(0.0, t.rhs(i)) / a;
      if (ratio > bound) continue;
      if (leave == t.rows() || a > pivot || (a == pivot && t.basis()[i] < t.basis()[leave])) {
        leave = i;
        pivot = a;
        best = ratio;
      }
    }
    if (leave == t.rows()) return PhaseOutcome::kUnbounded;
    degenerate = best <= 1e-12 ? degenerate + 1 : 0;
    t.pivot(leave, enter);
    ++iterations;
  }
}

}  // namespace

LpResult SimplexBackend::solve(const LinearProgram& lp) const {
  const std::size_t n = lp.num_vars();
  const std::size_t m = lp.num_constraints();
  const double tol = options_.pivot_tolerance;

  // Normalize rows to b >= 0; a zero right-hand side prefers "<=" so that a
  // slack can start in the basis.
  struct Row {
    std::vector<double> a;
    Relation rel;
    double b;
  };
  std::vector<Row> rows;
  rows.reserve(m);
  std::size_t n_slack = 0, n_art = 0;
  for (const Constraint& c : lp.constraints()) {
    Row r{c.coeffs, c.relation, c.rhs};
    const bool flip = r.b < 0.0 || (r.b == 0.0 && r.rel == Relation::kGreaterEqual);
    if (flip) {
      for (double& x : r.a) x = -x;
      r.b = -r.b;
      if (r.rel == Relation::kLessEqual) r.rel = Relation::kGreaterEqual;
      else if (r.rel == Relation::kGreaterEqual) r.rel = Relation::kLessEqual;
    }
    if (r.rel != Relation::kEqual) ++n_slack;
    if (r.rel != Relation::kLessEqual) ++n_art;
    rows.push_back(std::move(r));
  }

  const std::size_t art_begin = 2 * n + n_slack;
  const std::size_t cols = art_begin + n_art;
  Tableau t(m, cols);
  std::size_t next_slack = 2 * n, next_art = art_begin;
  for (std::size_t i = 0; i < m; ++i) {
    const Row& r = rows[i];
    for (std::size_t j = 0; j < n; ++j) {
      t.at(i, j) = r.a[j];
      t.at(i, n + j) = -r.a[j];
    }
    t.rhs(i) = r.b;
    if (r.rel == Relation::kLessEqual) {
      t.at(i, next_slack) = 1.0;
      t.basis()[i] = next_slack++;
    } else {
      if (r.rel == Relation::kGreaterEqual) t.at(i, next_slack++) = -1.0;
      t.at(i, next_art) = 1.0;
      t.basis()[i] = next_art++;
    }
  }

  LpResult result;
  const std::size_t cap = options_.iteration_factor * (m + cols + 1);

  if (n_art > 0) {
    // Phase 1: maximize -sum(artificials).
    for (std::size_t j = art_begin; j < cols; ++j) t.cost(j) = 1.0;
    t.price_out();
    run_phase(t, cols, tol, cap, result.iterations);
    if (t.value() < -1e-9 * std::max(1.0, static_cast<double>(m))) {
      result.status = Status::kInfeasible;
      return result;
    }
    // Drive remaining (zero-level) artificials out of the basis.
    for (std::size_t i = 0; i < m; ++i) {
      if (!t.active()[i] || t.basis()[i] < art_begin) continue;
      std::size_t col = art_begin;
      double largest = tol;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (std::abs(t.at(i, j)) > largest) {
          largest = std::abs(t.at(i, j));
          col = j;
        }
      }
      if (col == art_begin) {
        t.active()[i] = false;  // redundant row
      } else {
        t.pivot(i, col);
      }
    }
  }

  // Phase 2 over structural and slack columns.
  for (std::size_t j = 0; j <= cols; ++j) t.cost(j) = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    t.cost(j) = -lp.objective()[j];
    t.cost(n + j) = lp.objective()[j];
  }
  t.price_out();
  if (run_phase(t, art_begin, tol, cap, result.iterations) == PhaseOutcome::kUnbounded) {
    result.status = Status::kUnbounded;
    return result;
  }

  std::vector<double> x(cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (t.active()[i]) x[t.basis()[i]] = t.rhs(i);
  }
  result.solution.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) result.solution[j] = x[j] - x[n + j];
  result.value = lp.evaluate(result.solution);
  result.status = Status::kOptimal;

  const double viol = lp.max_violation(result.solution);
  if (viol > tol::kLp) {
    std::ostringstream os;
    os << "simplex returned a solution violating constraints by " << viol << " after "
       << result.iterations << " pivots";
    throw SolverError(os.str());
  }
  return result;
}

LpResult solve(const LinearProgram& lp) { return SimplexBackend().solve(lp); }

}  // namespace optscore::lp
