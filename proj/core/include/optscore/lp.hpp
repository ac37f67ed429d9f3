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

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace optscore::lp {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Constraint {
  std::vector<double> coeffs;
  Relation relation;
  double rhs;
};

/// maximize c . z subject to linear constraints; every variable is free.
class LinearProgram {
 public:
  explicit LinearProgram(std::vector<double> objective);

  void add_constraint(std::vector<double> coeffs, Relation relation, double rhs);

  std::size_t num_vars() const { return objective_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  /// Largest constraint violation of z (0 when feasible).
  double max_violation(const std::vector<double>& z) const;
  double evaluate(const std::vector<double>& z) const;

  /// Plain-text dump in an LP-file style; `names` optionally labels variables.
  std::string to_lp_format(const std::vector<std::string>& names = {}) const;

 private:
  std::vector<double> objective_;
  std::vector<Constraint> constraints_;
};

enum class Status { kOptimal, kUnbounded, kInfeasible };

const char* to_string(Status s);

struct LpResult {
  Status status = Status::kInfeasible;
  std::vector<double> solution;
  double value = 0.0;
  std::size_t iterations = 0;
};

/// Solver strategy. Implementations must be deterministic and must either
/// return a result whose optimal solution satisfies every constraint within
/// 1e-7 or throw SolverError.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual LpResult solve(const LinearProgram& lp) const = 0;
  virtual std::string name() const = 0;
};

/// Dense two-phase primal simplex over the standard form obtained by
/// splitting free variables; Dantzig pricing with a Bland fallback on degenerate runs.
class SimplexBackend final : public Backend {
 public:
  struct Options {
    double pivot_tolerance = 1e-9;
    /// Iteration cap is this factor times (rows + columns) per phase.
    std::size_t iteration_factor = 100;
  };

  SimplexBackend() = default;
  explicit SimplexBackend(Options options) : options_(options) {}

  LpResult solve(const LinearProgram& lp) const override;
  std::string name() const override { return "simplex"; }

 private:
  Options options_;
};

/// Solves with the embedded simplex.
LpResult solve(const LinearProgram& lp);

}  // namespace optscore::lp
