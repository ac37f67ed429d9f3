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

#include "optscore/distribution.hpp"
#include "optscore/scoring_rule.hpp"
#include "optscore/utility.hpp"

// Optimal and prior-independent scoring rules for a scalar state in [0,1]
// with score bound 1.
namespace optscore::single_dim {

/// Parameters of an optimal V-shaped utility at mu: right slope exceeds the
/// left slope by exactly 1 / max(mu, 1 - mu).
class OptRuleSpec {
 public:
  /// a = -b = -1 / (2 max(mu, 1 - mu)).
  static OptRuleSpec symmetric(double mu);
  /// Any admissible left slope; b = a + 1 / max(mu, 1 - mu).
  static OptRuleSpec with_left_slope(double mu, double a);

  double mu() const { return mu_; }
  double a() const { return a_; }
  double b() const { return b_; }

  VShapedUtility utility() const { return VShapedUtility(mu_, a_, b_); }

  /// The two boundedness conditions u(1) - u(0) - xi(0) <= 1 and
  /// u(0) - u(1) + xi(1) <= 1.
  bool bounded() const;

 private:
  OptRuleSpec(double mu, double a, double b) : mu_(mu), a_(a), b_(b) {}

  double mu_;
  double a_;
  double b_;
};

/// The symmetric optimal rule at prior mean mu with kappa == 1/2. For mu in
/// {0, 1} the zero rule is returned.
CanonicalScoringRule optimal_v_shaped(double mu);

/// OPT(f) = E[max(0, r - mu)] / max(mu, 1 - mu). Support must lie in [0,1].
double opt_value(const FiniteDistribution& dist);

/// S(r, theta) = 1 - (theta - r)^2 via u(r) = r^2, kappa(theta) = 1 - theta^2.
CanonicalScoringRule quadratic_rule();

/// Worst-case objective of the quadratic rule over distributions with
/// OPT = c, which is c^2.
double maxmin_quadratic_value(double c);

struct QuadraticWorstCase {
  double min_objective = 0.0;
  double mu = 0.0;  ///< prior mean of the witness
  double p = 0.0;   ///< mass on the witness's upper point
  double low = 0.0;
  double high = 0.0;
  std::size_t feasible_points = 0;
};

/// Brute force over two-point distributions with OPT = c: for mu and p on
/// the grid {k / grid : 0 < k < grid}, the upper point is
/// mu + c max(mu, 1 - mu) / p and the lower point balances the mean; pairs
/// leaving [0,1] are skipped. Returns the smallest quadratic objective.
QuadraticWorstCase quadratic_worst_case_search(double c, std::size_t grid);

/// min(1/2, 8 c^2 / (1 - 4c)^2): no bounded convex utility guarantees more
/// than this over distributions with OPT = c.
double pi_upper_bound(double c);

/// Uniform two-point distribution on the endpoints of the width-1/d cell of
/// [0,1] in which u gains the least slope (ties go to the rightmost cell).
/// Throws InfeasibleError when u'(1) - u'(0) > 2, i.e. when u is not bounded
/// by 1.
FiniteDistribution pigeonhole_adversary(const UnivariateConvex& u, std::size_t d);

struct VarianceBound {
  double lhs = 0.0;  ///< quadratic objective, i.e. the variance
  double rhs = 0.0;  ///< standard deviation times OPT
  bool holds = true;
};

VarianceBound variance_lower_bound_check(const FiniteDistribution& dist);

struct ExpectedBoundConstruction {
  VShapedUtility utility;
  /// max over tested states of kappa_v(theta) - kappa_u(theta), where kappa_w
  /// is the smallest state function keeping w's scores nonnegative. The
  /// original state function remains valid for the V-shape iff this is <= 0.
  double kappa_excess = 0.0;
  bool feasible = true;
};

/// V-shaped utility at mu = mean(dist) whose expected utility on each side of
/// mu matches that of u:
///   left  slope = -sum_{r<mu} p u(r) / sum_{r<mu} p (mu - r)
///   right slope =  sum_{r>=mu} p u(r) / sum_{r>=mu} p (r - mu)
/// A side without mass gets slope 0. Requires u(mu) = 0 within 1e-9.
ExpectedBoundConstruction expected_bound_v_shape(const UnivariateConvex& u,
                                                 const FiniteDistribution& dist);

}  // namespace optscore::single_dim
