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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "optscore/distribution.hpp"
#include "optscore/geometry.hpp"
#include "optscore/utility.hpp"

namespace optscore {

/// The state-only term kappa(theta) of a canonical scoring rule: a constant,
/// a table over a finite state set, or a closed-form function.
class StateFunction {
 public:
  static StateFunction constant(double c);
  static StateFunction table(std::vector<Point> states, std::vector<double> values);
  static StateFunction closed_form(std::function<double(const Point&)> f, std::string label);

  /// Throws DomainError for a table lookup of a state that is not in the
  /// table (matched within 1e-9 in max-norm).
  double operator()(const Point& state) const;

  std::optional<double> constant_value() const;
  /// Table entries, empty unless this is a table.
  const std::vector<Point>& table_states() const;
  const std::vector<double>& table_values() const;
  std::string describe() const;

 private:
  struct Constant {
    double value;
  };
  struct Table {
    std::vector<Point> states;
    std::vector<double> values;
  };
  struct Closed {
    std::function<double(const Point&)> f;
    std::string label;
  };

  explicit StateFunction(std::variant<Constant, Table, Closed> repr) : repr_(std::move(repr)) {}

  std::variant<Constant, Table, Closed> repr_;
};

/// S(r, theta) = u(r) + xi(r) . (theta - r) + kappa(theta), capped by B.
class CanonicalScoringRule {
 public:
  CanonicalScoringRule(UtilityPtr utility, StateFunction kappa, double bound = 1.0);

  std::size_t dim() const { return utility_->dim(); }
  const ConvexUtility& utility() const { return *utility_; }
  const UtilityPtr& utility_ptr() const { return utility_; }
  const StateFunction& kappa() const { return kappa_; }
  double bound() const { return bound_; }

  double score(const Point& report, const Point& state) const;

  /// E_{theta ~ belief}[S(report, theta)], where the belief is a
  /// distribution over states.
  double expected_score(const Point& report, const FiniteDistribution& belief) const;

 private:
  UtilityPtr utility_;
  StateFunction kappa_;
  double bound_;
};

double score(const CanonicalScoringRule& rule, const Point& report, const Point& state);

/// Obj(u, f) = E_f[u(r)] - u(mean(f)): the forecaster's expected gain from
/// effort under the canonical rule built from u.
double objective(const ConvexUtility& u, const FiniteDistribution& dist);

/// kappa(theta) = -min_r [u(r) + xi(r) . (theta - r)] over the tested
/// reports, as a table over `states`. Throws InfeasibleError naming the worst
/// (report, state) pair when u(theta) - u(r) - xi(r) . (theta - r) exceeds
/// `bound` by more than 1e-9.
StateFunction fit_kappa(const ConvexUtility& u, std::span<const Point> states,
                        std::span<const Point> reports, double bound = 1.0);

struct ProperCheck {
  bool proper = true;
  /// Largest E[S(r', .)] - E[S(mean, .)] over the grid (<= 1e-9 when proper).
  double worst_violation = 0.0;
  std::optional<std::size_t> witness_belief;
  std::optional<Point> witness_report;
};

/// Checks truthful mean reporting against every report in `reports` for every
/// belief (a distribution over states) in `beliefs`.
ProperCheck verify_proper(const CanonicalScoringRule& rule, std::span<const Point> reports,
                          std::span<const FiniteDistribution> beliefs);

struct ScoreRange {
  double min = 0.0;
  double max = 0.0;
};

ScoreRange score_range(const CanonicalScoringRule& rule, std::span<const Point> reports,
                       std::span<const Point> states);

/// Collapses a 1-d distribution to {E[r | r < mu] w.p. P(r < mu),
/// E[r | r >= mu] w.p. P(r >= mu)}. A one-sided distribution (a point mass)
/// is returned as a single point.
FiniteDistribution two_point_reduction(const FiniteDistribution& dist);

}  // namespace optscore
