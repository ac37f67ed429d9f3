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

#include "optscore/multi_dim.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "optscore/error.hpp"

namespace optscore::multi_dim {

std::optional<std::vector<double>> hull_weights(const Point& r, const std::vector<Point>& states) {
  if (states.empty()) return std::nullopt;
  for (const Point& s : states) require_same_dim(s, r, "hull_weights");
  const std::size_t d = states.size();
  const std::size_t n = r.dim();
  lp::LinearProgram prog(std::vector<double>(d, 0.0));
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> row(d, 0.0);
    row[j] = 1.0;
    prog.add_constraint(std::move(row), lp::Relation::kGreaterEqual, 0.0);
  }
  prog.add_constraint(std::vector<double>(d, 1.0), lp::Relation::kEqual, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> row(d);
    for (std::size_t j = 0; j < d; ++j) row[j] = states[j][k];
    prog.add_constraint(std::move(row), lp::Relation::kEqual, r[k]);
  }
  lp::LpResult res = lp::solve(prog);
  if (res.status != lp::Status::kOptimal) return std::nullopt;
  for (double& l : res.solution) l = std::max(0.0, l);
  return res.solution;
}

// -- MeanElicitInstance -----------------------------------------------------------

MeanElicitInstance::MeanElicitInstance(std::vector<Point> states, FiniteDistribution means, double bound)
    : states_(std::move(states)), means_(std::move(means)), bound_(bound) {
  if (states_.empty()) throw DomainError("mean instance needs at least one state");
  for (const Point& s : states_) require_same_dim(s, means_.point(0), "mean instance state");
  if (!(bound_ > 0.0) || !std::isfinite(bound_)) throw DomainError("score bound must be positive");
  if (states_are_box_corners()) {
    const Box box = Box::bounding(states_);
    for (const Point& r : means_.support()) {
      if (!box.contains(r, tol::kFeasibility)) {
        std::ostringstream os;
        os << "posterior mean " << r << " lies outside the state box";
        throw DomainError(os.str());
      }
    }
  } else {
    for (const Point& r : means_.support()) {
      if (!hull_weights(r, states_)) {
        std::ostringstream os;
        os << "posterior mean " << r << " lies outside the convex hull of the states";
        throw DomainError(os.str());
      }
    }
  }
}

bool MeanElicitInstance::states_are_box_corners() const {
  const std::size_t n = dim();
  if (n >= 8 * sizeof(std::size_t) || states_.size() != (std::size_t{1} << n)) return false;
  const Box box = Box::bounding(states_);
  for (const Point& c : box.corners()) {
    const bool found = std::any_of(states_.begin(), states_.end(),
                                   [&](const Point& s) { return s.distance_inf(c) <= 1e-12; });
    if (!found) return false;
  }
  return true;
}

std::vector<Point> MeanElicitInstance::report_points() const {
  std::vector<Point> out;
  out.reserve(1 + num_means() + num_states());
  out.push_back(prior_mean());
  for (const Point& r : means_.support()) out.push_back(r);
  for (const Point& s : states_) out.push_back(s);
  return out;
}

// -- LP ---------------------------------------------------------------------------

double LpScoringSolution::utility_at(std::size_t i) const {
  return allocations[i].dot(reports[i]) - payments[i];
}

MaxOfAffineUtility LpScoringSolution::utility() const {
  return MaxOfAffineUtility(allocations, payments);
}

double LpScoringSolution::ic_residual() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const double own = utility_at(i);
    for (std::size_t j = 0; j < reports.size(); ++j) {
      worst = std::max(worst, allocations[j].dot(reports[i]) - payments[j] - own);
    }
  }
  return worst;
}

double LpScoringSolution::bound_residual(double bound) const {
  double worst = 0.0;
  for (std::size_t i = 1 + num_means; i < reports.size(); ++i) {
    const double own = utility_at(i);
    for (std::size_t j = 0; j < reports.size(); ++j) {
      worst = std::max(worst, own - (allocations[j].dot(reports[i]) - payments[j]) - bound);
    }
  }
  return worst;
}

lp::LinearProgram build_mean_lp(const MeanElicitInstance& inst) {
  const std::vector<Point> reports = inst.report_points();
  const std::size_t n = inst.dim();
  const std::size_t k_total = reports.size();
  const std::size_t stride = n + 1;
  const std::size_t nv = stride * k_total;
  auto x = [&](std::size_t i, std::size_t k) { return i * stride + k; };
  auto p = [&](std::size_t i) { return i * stride + n; };

  std::vector<double> obj(nv, 0.0);
  for (std::size_t i = 1; i <= inst.num_means(); ++i) {
    const double f = inst.means().prob(i - 1);
    for (std::size_t k = 0; k < n; ++k) obj[x(i, k)] += f * reports[i][k];
    obj[p(i)] -= f;
  }
  lp::LinearProgram prog(std::move(obj));

  // (x_i . r_i - p_i) - (x_j . r_i - p_j) as a row.
  auto deviation_row = [&](std::size_t i, std::size_t j) {
    std::vector<double> row(nv, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      row[x(i, k)] += reports[i][k];
      row[x(j, k)] -= reports[i][k];
    }
    row[p(i)] -= 1.0;
    row[p(j)] += 1.0;
    return row;
  };

  {
    std::vector<double> row(nv, 0.0);
    for (std::size_t k = 0; k < n; ++k) row[x(0, k)] = reports[0][k];
    row[p(0)] = -1.0;
    prog.add_constraint(std::move(row), lp::Relation::kEqual, 0.0);
  }
  for (std::size_t i = 0; i < k_total; ++i) {
    for (std::size_t j = 0; j < k_total; ++j) {
      if (i != j) prog.add_constraint(deviation_row(i, j), lp::Relation::kGreaterEqual, 0.0);
    }
  }
  for (std::size_t i = 1 + inst.num_means(); i < k_total; ++i) {
    for (std::size_t j = 0; j < k_total; ++j) {
      if (i != j) prog.add_constraint(deviation_row(i, j), lp::Relation::kLessEqual, inst.bound());
    }
  }
  return prog;
}

LpScoringSolution lp_optimal(const MeanElicitInstance& inst, const lp::Backend& backend) {
  const lp::LinearProgram prog = build_mean_lp(inst);
  const lp::LpResult res = backend.solve(prog);
  if (res.status != lp::Status::kOptimal) {
    throw InfeasibleError(std::string("optimal scoring LP is ") + lp::to_string(res.status) +
                          " (the zero rule should always be feasible)");
  }
  const std::size_t n = inst.dim();
  LpScoringSolution sol;
  sol.reports = inst.report_points();
  sol.num_means = inst.num_means();
  sol.num_states = inst.num_states();
  sol.value = res.value;
  sol.iterations = res.iterations;
  for (std::size_t i = 0; i < sol.reports.size(); ++i) {
    const auto first = res.solution.begin() + static_cast<std::ptrdiff_t>(i * (n + 1));
    sol.allocations.emplace_back(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(n)));
    sol.payments.push_back(res.solution[i * (n + 1) + n]);
  }
  return sol;
}

CanonicalScoringRule lp_rule(const LpScoringSolution& sol, const MeanElicitInstance& inst,
                             std::span<const Point> extra_states) {
  auto u = std::make_shared<MaxOfAffineUtility>(sol.utility());
  std::vector<Point> states = inst.states();
  for (const Point& s : extra_states) {
    require_same_dim(s, states.front(), "lp_rule extra state");
    const bool known = std::any_of(states.begin(), states.end(),
                                   [&](const Point& t) { return t.distance_inf(s) <= tol::kFeasibility; });
    if (!known) states.push_back(s);
  }
  std::vector<double> kappa;
  kappa.reserve(states.size());
  for (const Point& theta : states) {
    double lowest = INFINITY;
    for (std::size_t k = 0; k < sol.allocations.size(); ++k) {
      lowest = std::min(lowest, sol.allocations[k].dot(theta) - sol.payments[k]);
    }
    const double gap = u->value(theta) - lowest;
    if (gap > inst.bound() + tol::kLp) {
      std::ostringstream os;
      os << "LP rule: utility gap " << gap << " at state " << theta << " exceeds the bound " << inst.bound();
      throw InfeasibleError(os.str());
    }
    kappa.push_back(-lowest);
  }
  return CanonicalScoringRule(std::move(u), StateFunction::table(std::move(states), std::move(kappa)),
                              inst.bound());
}

// -- max-over-separate ------------------------------------------------------------

MaxOverSeparateRule::MaxOverSeparateRule(Point mu, std::vector<double> slopes, std::vector<double> betas)
    : mu_(std::move(mu)), slopes_(std::move(slopes)), betas_(std::move(betas)) {
  if (slopes_.size() != mu_.dim() || betas_.size() != mu_.dim()) {
    throw DimensionError("max-over-separate rule needs one slope and one constant per dimension");
  }
  parts_.reserve(mu_.dim());
  for (std::size_t i = 0; i < mu_.dim(); ++i) {
    if (slopes_[i] < 0.0) throw DomainError("max-over-separate slopes must be nonnegative");
    parts_.push_back(std::make_shared<VShapedUtility>(mu_[i], -slopes_[i], slopes_[i]));
  }
}

double MaxOverSeparateRule::per_dim_utility(std::size_t i, double r_i) const {
  return parts_.at(i)->at(r_i);
}

double MaxOverSeparateRule::per_dim_score(std::size_t i, double r_i, double theta_i) const {
  const UnivariateConvex& u = *parts_.at(i);
  return u.at(r_i) + u.right_slope(r_i) * (theta_i - r_i) + betas_[i];
}

std::size_t MaxOverSeparateRule::selected(const Point& report) const {
  if (report.dim() != dim()) throw DimensionError("max-over-separate: report dimension mismatch");
  std::size_t pick = 0;
  double best = per_dim_utility(0, report[0]) + betas_[0];
  for (std::size_t i = 1; i < dim(); ++i) {
    const double v = per_dim_utility(i, report[i]) + betas_[i];
    if (v > best) {
      best = v;
      pick = i;
    }
  }
  return pick;
}

double MaxOverSeparateRule::score(const Point& report, const Point& state) const {
  if (state.dim() != dim()) throw DimensionError("max-over-separate: state dimension mismatch");
  const std::size_t i = selected(report);
  return per_dim_score(i, report[i], state[i]);
}

UtilityPtr MaxOverSeparateRule::utility() const {
  return std::make_shared<MaxOverCoordinatesUtility>(parts_);
}

CanonicalScoringRule MaxOverSeparateRule::as_canonical() const {
  for (double b : betas_) {
    if (b != betas_.front()) throw DomainError("canonical form needs a common state constant");
  }
  return CanonicalScoringRule(utility(), StateFunction::constant(betas_.front()));
}

MaxOverSeparateRule max_over_separate_rule(const Point& mu, const Box& box) {
  if (mu.dim() != box.dim()) throw DimensionError("max_over_separate_rule: mu and box dimension differ");
  std::vector<double> slopes(mu.dim());
  std::vector<std::size_t> degenerate;
  for (std::size_t i = 0; i < mu.dim(); ++i) {
    const double lo = box.lower(i), hi = box.upper(i);
    if (mu[i] < lo - tol::kFeasibility || mu[i] > hi + tol::kFeasibility) {
      std::ostringstream os;
      os << "max_over_separate_rule: mu " << mu << " outside the box in dimension " << i;
      throw DomainError(os.str());
    }
    if (mu[i] <= lo + 1e-12 || mu[i] >= hi - 1e-12) degenerate.push_back(i);
    const double reach = std::max(mu[i] - lo, hi - mu[i]);
    slopes[i] = std::min(1.0 / (hi - lo), 1.0 / (2.0 * reach));
  }
  MaxOverSeparateRule rule(mu, std::move(slopes), std::vector<double>(mu.dim(), 0.5));
  rule.set_degenerate_dims(std::move(degenerate));
  return rule;
}

CanonicalScoringRule symmetric_v_shaped(const Box& box, const Point& center) {
  if (center.dim() != box.dim()) throw DimensionError("symmetric_v_shaped: center and box dimension differ");
  if (center.distance_inf(box.midpoint()) > tol::kFeasibility) {
    throw DomainError("symmetric_v_shaped: center must be the box midpoint (use max_over_separate_rule)");
  }
  return max_over_separate_rule(center, box).as_canonical();
}

double choose_and_report_score(const MaxOverSeparateRule& rule, std::size_t chosen_dim, double r_i,
                               const Point& state) {
  if (chosen_dim >= rule.dim()) {
    throw DimensionError("choose_and_report_score: dimension index " + std::to_string(chosen_dim) +
                         " out of range");
  }
  if (state.dim() != rule.dim()) throw DimensionError("choose_and_report_score: state dimension mismatch");
  return rule.per_dim_score(chosen_dim, r_i, state[chosen_dim]);
}

CanonicalScoringRule separate_rule(const Point& mu, const Box& box) {
  const MaxOverSeparateRule mos = max_over_separate_rule(mu, box);
  return CanonicalScoringRule(std::make_shared<AverageOverCoordinatesUtility>(mos.parts()),
                              StateFunction::constant(0.5));
}

// -- experiments ------------------------------------------------------------------

SeparateGap separate_gap_instance(std::size_t n) {
  if (n == 0) throw DomainError("separate_gap_instance: n must be positive");
  const double nd = static_cast<double>(n);
  SeparateGap out;
  out.n = n;
  out.separate_obj = 1.0 / (2.0 * nd);
  out.mos_obj = 0.5 * (1.0 - std::pow(1.0 - 1.0 / nd, nd));
  if (n > kMaxMaterializedGapDim) return out;

  const double values[3] = {0.0, 0.5, 1.0};
  const double probs[3] = {1.0 / (2.0 * nd), 1.0 - 1.0 / nd, 1.0 / (2.0 * nd)};
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  std::vector<Point> pts;
  std::vector<double> ws;
  pts.reserve(total);
  ws.reserve(total);
  std::vector<std::size_t> digit(n, 0);
  for (std::size_t k = 0; k < total; ++k) {
    std::vector<double> c(n);
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = values[digit[i]];
      w *= probs[digit[i]];
    }
    if (w > 0.0) {
      pts.emplace_back(std::move(c));
      ws.push_back(w);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (++digit[i] < 3) break;
      digit[i] = 0;
    }
  }
  out.dist.emplace(std::move(pts), std::move(ws), Box::unit(n));

  const Box box = Box::unit(n);
  const Point center = box.midpoint();
  out.mos_evaluated = objective(*max_over_separate_rule(center, box).utility(), *out.dist);
  out.separate_evaluated = objective(separate_rule(center, box).utility(), *out.dist);
  return out;
}

PerturbationLoss perturbed_rule_loss(const FiniteDistribution& dist, const Point& mu_hat) {
  require_same_dim(dist.point(0), mu_hat, "perturbed_rule_loss");
  const Box box = Box::unit(dist.dim());
  const Point mu = dist.mean();
  PerturbationLoss out;
  out.obj_at_true_mu = objective(*max_over_separate_rule(mu, box).utility(), dist);
  out.obj_at_mu_hat = objective(*max_over_separate_rule(mu_hat, box).utility(), dist);
  out.epsilon = mu_hat.distance_inf(mu);
  out.within_guarantee = out.obj_at_mu_hat >= out.obj_at_true_mu - 3.0 * out.epsilon - tol::kFeasibility;
  return out;
}

std::size_t sample_count(double epsilon, double delta, std::size_t n) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("sample_count: epsilon must lie in (0, 1]");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("sample_count: delta must lie in (0, 1)");
  if (n == 0) throw DomainError("sample_count: n must be positive");
  return static_cast<std::size_t>(
      std::ceil(std::log(static_cast<double>(n) / delta) / (epsilon * epsilon)));
}

Point estimate_prior_mean(std::span<const Point> samples) {
  if (samples.empty()) throw DomainError("estimate_prior_mean: no samples");
  std::vector<double> m(samples.front().dim(), 0.0);
  for (const Point& s : samples) {
    require_same_dim(s, samples.front(), "estimate_prior_mean");
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += s[i];
  }
  for (double& v : m) v /= static_cast<double>(samples.size());
  return Point(std::move(m));
}

}  // namespace optscore::multi_dim
