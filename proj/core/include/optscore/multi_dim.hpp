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
#include <optional>
#include <span>
#include <vector>

#include "optscore/distribution.hpp"
#include "optscore/geometry.hpp"
#include "optscore/lp.hpp"
#include "optscore/scoring_rule.hpp"
#include "optscore/utility.hpp"

namespace optscore::multi_dim {

/// Convex weights lambda >= 0 with sum_j lambda_j = 1 and
/// sum_j lambda_j states[j] = r, or nullopt when r is outside the hull.
std::optional<std::vector<double>> hull_weights(const Point& r, const std::vector<Point>& states);

/// Finite state set, distribution over posterior means, and score bound.
///
/// Every mean must lie in the convex hull of the states. When the states are
/// exactly the corners of their bounding box this holds iff the mean lies in
/// the box; otherwise a feasibility LP is solved per support point.
class MeanElicitInstance {
 public:
  MeanElicitInstance(std::vector<Point> states, FiniteDistribution means, double bound = 1.0);

  std::size_t dim() const { return means_.dim(); }
  std::size_t num_states() const { return states_.size(); }
  std::size_t num_means() const { return means_.size(); }
  const std::vector<Point>& states() const { return states_; }
  const FiniteDistribution& means() const { return means_; }
  double bound() const { return bound_; }
  Point prior_mean() const { return means_.mean(); }

  bool states_are_box_corners() const;

  /// Report points r_0 = prior mean, r_1..r_m = means, r_{m+j} = state j.
  std::vector<Point> report_points() const;

 private:
  std::vector<Point> states_;
  FiniteDistribution means_;
  double bound_;
};

/// Allocation/payment menu over the report points; utility
/// u(r) = max_i (x_i . r - p_i).
struct LpScoringSolution {
  std::vector<Point> reports;
  std::vector<Point> allocations;
  std::vector<double> payments;
  std::size_t num_means = 0;
  std::size_t num_states = 0;
  double value = 0.0;
  std::size_t iterations = 0;

  /// x_i . r_i - p_i.
  double utility_at(std::size_t i) const;
  MaxOfAffineUtility utility() const;

  /// Largest violation of x_i . r_i - p_i >= x_j . r_i - p_j.
  double ic_residual() const;
  /// Largest violation of u(theta) - (x_j . theta - p_j) <= bound over states.
  double bound_residual(double bound) const;
  /// |u(r_0)|.
  double anchor_residual() const { return std::abs(utility_at(0)); }
};

/// The linear program over allocations x_i in R^n and payments p_i for
/// i in {0..m+d}: maximize sum_{i=1..m} f_i (x_i . r_i - p_i) subject to
/// x_0 . r_0 - p_0 = 0, pairwise incentive compatibility, and the bounded
/// utility difference at every state index. Variable layout per index i:
/// n allocation coordinates followed by the payment.
lp::LinearProgram build_mean_lp(const MeanElicitInstance& inst);

/// Throws InfeasibleError if the program is infeasible or unbounded (neither
/// can happen for a valid instance: the zero menu is feasible and the
/// objective is capped by the bound).
LpScoringSolution lp_optimal(const MeanElicitInstance& inst,
                             const lp::Backend& backend = lp::SimplexBackend());

/// Canonical rule of an LP solution: kappa(theta) = -min_k (x_k . theta - p_k)
/// tabulated over the instance's states plus `extra_states` (which must lie
/// in their convex hull). Throws InfeasibleError if some utility gap exceeds
/// the bound by more than the LP tolerance.
CanonicalScoringRule lp_rule(const LpScoringSolution& sol, const MeanElicitInstance& inst,
                             std::span<const Point> extra_states = {});

/// Per-dimension V-shaped rules s_i(r_i, theta_i) = 1/2 +- c_i (theta_i - mu_i)
/// (sign by side of mu_i, right branch at mu_i), scored on the dimension
/// i = argmax_j s_j(r_j, r_j) with the smallest index on ties.
class MaxOverSeparateRule {
 public:
  MaxOverSeparateRule(Point mu, std::vector<double> slopes, std::vector<double> betas);

  std::size_t dim() const { return mu_.dim(); }
  const Point& mu() const { return mu_; }
  double slope(std::size_t i) const { return slopes_[i]; }
  double beta(std::size_t i) const { return betas_[i]; }

  /// Dimensions whose mu_i sits on the box boundary.
  const std::vector<std::size_t>& degenerate_dims() const { return degenerate_; }
  void set_degenerate_dims(std::vector<std::size_t> dims) { degenerate_ = std::move(dims); }

  double per_dim_utility(std::size_t i, double r_i) const;
  double per_dim_score(std::size_t i, double r_i, double theta_i) const;
  std::size_t selected(const Point& report) const;
  double score(const Point& report, const Point& state) const;

  /// The per-dimension V-shaped utilities c_i |r_i - mu_i|.
  const std::vector<UnivariatePtr>& parts() const { return parts_; }
  /// max_i c_i |r_i - mu_i|.
  UtilityPtr utility() const;
  /// The same rule in canonical form; requires all betas equal.
  CanonicalScoringRule as_canonical() const;

 private:
  Point mu_;
  std::vector<double> slopes_;
  std::vector<double> betas_;
  std::vector<std::size_t> degenerate_;
  std::vector<UnivariatePtr> parts_;
};

/// Symmetric V-shaped rule on a box: u(r) = max_i |r_i - mu_i| / (b_i - a_i)
/// with kappa = 1/2. `center` must be the box midpoint.
CanonicalScoringRule symmetric_v_shaped(const Box& box, const Point& center);

/// Max-over-separate rule with c_i = 1 / (2 max(mu_i - a_i, b_i - mu_i)) and
/// beta_i = 1/2. A mu on the boundary is flagged in degenerate_dims().
MaxOverSeparateRule max_over_separate_rule(const Point& mu, const Box& box);

/// Score of the indirect implementation where the agent names one dimension
/// and a mean for it.
double choose_and_report_score(const MaxOverSeparateRule& rule, std::size_t chosen_dim, double r_i,
                               const Point& state);

/// S(r, theta) = (1/n) sum_i s_i(r_i, theta_i) with the max-over-separate
/// per-dimension rules.
CanonicalScoringRule separate_rule(const Point& mu, const Box& box);

struct SeparateGap {
  std::size_t n = 0;
  double separate_obj = 0.0;  ///< analytic 1/(2n)
  double mos_obj = 0.0;       ///< analytic (1/2)(1 - (1 - 1/n)^n)
  std::optional<FiniteDistribution> dist;
  std::optional<double> separate_evaluated;
  std::optional<double> mos_evaluated;

  double ratio() const { return mos_obj / separate_obj; }
};

/// Product instance r_i in {0 w.p. 1/(2n), 1/2 w.p. 1 - 1/n, 1 w.p. 1/(2n)} on
/// [0,1]^n. The 3^n support is materialized and evaluated for n <= 12.
SeparateGap separate_gap_instance(std::size_t n);

inline constexpr std::size_t kMaxMaterializedGapDim = 12;

struct PerturbationLoss {
  double obj_at_true_mu = 0.0;
  double obj_at_mu_hat = 0.0;
  double epsilon = 0.0;
  bool within_guarantee = true;  ///< obj_at_mu_hat >= obj_at_true_mu - 3 eps - 1e-9

  double loss() const { return obj_at_true_mu - obj_at_mu_hat; }
};

/// Incentive objective on [0,1]^n of the max-over-separate rule built at an
/// estimated prior mean, against the rule built at the true mean.
PerturbationLoss perturbed_rule_loss(const FiniteDistribution& dist, const Point& mu_hat);

/// ceil(ln(n / delta) / eps^2).
std::size_t sample_count(double epsilon, double delta, std::size_t n);

Point estimate_prior_mean(std::span<const Point> samples);

}  // namespace optscore::multi_dim
