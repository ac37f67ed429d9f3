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

#include "optscore/single_dim.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "optscore/error.hpp"

namespace optscore::single_dim {

namespace {

void require_unit_support(const FiniteDistribution& dist, const char* op) {
  if (dist.dim() != 1) throw DimensionError(std::string(op) + ": distribution must be 1-d");
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double r = dist.value(i);
    if (r < -tol::kFeasibility || r > 1.0 + tol::kFeasibility) {
      std::ostringstream os;
      os << op << ": support point " << r << " outside [0,1]";
      throw DomainError(os.str());
    }
  }
}

void require_c(double c, const char* op) {
  if (!(c > 0.0 && c <= 0.5)) throw DomainError(std::string(op) + ": c must lie in (0, 1/2]");
}

// Smallest kappa keeping scores of w nonnegative on [0,1]; for convex w the
// binding reports are the endpoints.
double min_kappa(const UnivariateConvex& w, double theta) {
  const double from_one = -w.at(1.0) - w.left_slope(1.0) * (theta - 1.0);
  const double from_zero = -w.at(0.0) - w.right_slope(0.0) * theta;
  return std::max(from_one, from_zero);
}

}  // namespace

OptRuleSpec OptRuleSpec::symmetric(double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("optimal V-shape needs mu in (0,1)");
  const double c = 1.0 / (2.0 * std::max(mu, 1.0 - mu));
  return OptRuleSpec(mu, -c, c);
}

OptRuleSpec OptRuleSpec::with_left_slope(double mu, double a) {
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("optimal V-shape needs mu in (0,1)");
  return OptRuleSpec(mu, a, a + 1.0 / std::max(mu, 1.0 - mu));
}

bool OptRuleSpec::bounded() const {
  const VShapedUtility u = utility();
  const double lhs0 = u.at(1.0) - u.at(0.0) - u.right_slope(0.0);
  const double lhs1 = u.at(0.0) - u.at(1.0) + u.left_slope(1.0);
  return lhs0 <= 1.0 + tol::kFeasibility && lhs1 <= 1.0 + tol::kFeasibility;
}

CanonicalScoringRule optimal_v_shaped(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("optimal_v_shaped: mu outside [0,1]");
  if (mu == 0.0 || mu == 1.0) {
    return CanonicalScoringRule(std::make_shared<ZeroUtility>(1), StateFunction::constant(0.0));
  }
  const OptRuleSpec spec = OptRuleSpec::symmetric(mu);
  return CanonicalScoringRule(std::make_shared<VShapedUtility>(spec.utility()),
                              StateFunction::constant(0.5));
}

double opt_value(const FiniteDistribution& dist) {
  require_unit_support(dist, "opt_value");
  const double mu = dist.mean()[0];
  double upper = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    upper += dist.prob(i) * std::max(0.0, dist.value(i) - mu);
  }
  return upper / std::max(mu, 1.0 - mu);
}

CanonicalScoringRule quadratic_rule() {
  return CanonicalScoringRule(
      std::make_shared<SquareUtility>(),
      StateFunction::closed_form([](const Point& t) { return 1.0 - t[0] * t[0]; }, "1 - theta^2"));
}

double maxmin_quadratic_value(double c) {
  require_c(c, "maxmin_quadratic_value");
  return c * c;
}

QuadraticWorstCase quadratic_worst_case_search(double c, std::size_t grid) {
  require_c(c, "quadratic_worst_case_search");
  if (grid < 2) throw DomainError("quadratic_worst_case_search: grid must be at least 2");
  QuadraticWorstCase best;
  best.min_objective = INFINITY;
  const double g = static_cast<double>(grid);
  for (std::size_t i = 1; i < grid; ++i) {
    const double mu = static_cast<double>(i) / g;
    const double reach = std::max(mu, 1.0 - mu);
    for (std::size_t j = 1; j < grid; ++j) {
      const double p = static_cast<double>(j) / g;
      const double up = c * reach / p;
      const double high = mu + up;
      const double low = mu - p * up / (1.0 - p);
      if (high > 1.0 + tol::kFeasibility || low < -tol::kFeasibility) continue;
      ++best.feasible_points;
      const double var = p * up * up / (1.0 - p);
      if (var < best.min_objective) {
        best.min_objective = var;
        best.mu = mu;
        best.p = p;
        best.low = low;
        best.high = high;
      }
    }
  }
  if (best.feasible_points == 0) throw InfeasibleError("quadratic_worst_case_search: no feasible grid point");
  return best;
}

double pi_upper_bound(double c) {
  require_c(c, "pi_upper_bound");
  const double denom = (1.0 - 4.0 * c) * (1.0 - 4.0 * c);
  if (denom == 0.0) return 0.5;
  return std::min(0.5, 8.0 * c * c / denom);
}

FiniteDistribution pigeonhole_adversary(const UnivariateConvex& u, std::size_t d) {
  if (d == 0) throw DomainError("pigeonhole_adversary: d must be positive");
  const double total = u.left_slope(1.0) - u.right_slope(0.0);
  if (total > 2.0 + tol::kFeasibility) {
    std::ostringstream os;
    os << "pigeonhole_adversary: derivative increase " << total << " exceeds 2 (utility not bounded)";
    throw InfeasibleError(os.str());
  }
  const double width = 1.0 / static_cast<double>(d);
  std::size_t pick = 0;
  double least = INFINITY;
  for (std::size_t k = 0; k < d; ++k) {
    const double lo = static_cast<double>(k) * width;
    const double hi = k + 1 == d ? 1.0 : static_cast<double>(k + 1) * width;
    const double gain = u.left_slope(hi) - u.right_slope(lo);
    if (gain <= least + 1e-12) {
      least = std::min(least, gain);
      pick = k;
    }
  }
  const double lo = static_cast<double>(pick) * width;
  const double hi = pick + 1 == d ? 1.0 : static_cast<double>(pick + 1) * width;
  return FiniteDistribution::scalar({lo, hi}, {0.5, 0.5});
}

VarianceBound variance_lower_bound_check(const FiniteDistribution& dist) {
  require_unit_support(dist, "variance_lower_bound_check");
  VarianceBound out;
  out.lhs = objective(SquareUtility(), dist);
  const double sigma = std::sqrt(std::max(0.0, dist.total_variance()));
  out.rhs = sigma * opt_value(dist);
  out.holds = out.lhs >= out.rhs - tol::kFeasibility;
  return out;
}

ExpectedBoundConstruction expected_bound_v_shape(const UnivariateConvex& u,
                                                 const FiniteDistribution& dist) {
  require_unit_support(dist, "expected_bound_v_shape");
  const double mu = dist.mean()[0];
  if (std::abs(u.at(mu)) > tol::kFeasibility) {
    std::ostringstream os;
    os << "expected_bound_v_shape: utility must vanish at the prior mean, u(" << mu << ") = " << u.at(mu);
    throw DomainError(os.str());
  }
  double left_u = 0.0, left_d = 0.0, right_u = 0.0, right_d = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double r = dist.value(i);
    const double p = dist.prob(i);
    if (r < mu) {
      left_u += p * u.at(r);
      left_d += p * (mu - r);
    } else {
      right_u += p * u.at(r);
      right_d += p * (r - mu);
    }
  }
  double a = left_d > 0.0 ? -left_u / left_d : 0.0;
  double b = right_d > 0.0 ? right_u / right_d : 0.0;
  if (a > b) {
    // u lies above its tangent at mu, so this is rounding unless the gap is large.
    if (a - b > tol::kFeasibility) {
      const double mid = 0.5 * (a + b);
      return {VShapedUtility(mu, mid, mid), a - b, false};
    }
    a = b = 0.5 * (a + b);
  }
  ExpectedBoundConstruction out{VShapedUtility(mu, a, b), -INFINITY, true};
  if (left_d == 0.0 || right_d == 0.0) {
    out.kappa_excess = 0.0;  // point mass: the zero utility with kappa = 0
    return out;
  }
  constexpr std::size_t kGrid = 1001;
  for (std::size_t k = 0; k < kGrid; ++k) {
    const double theta = static_cast<double>(k) / static_cast<double>(kGrid - 1);
    out.kappa_excess = std::max(out.kappa_excess, min_kappa(out.utility, theta) - min_kappa(u, theta));
  }
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double theta = dist.value(i);
    out.kappa_excess = std::max(out.kappa_excess, min_kappa(out.utility, theta) - min_kappa(u, theta));
  }
  out.feasible = out.kappa_excess <= tol::kFeasibility;
  return out;
}

}  // namespace optscore::single_dim
