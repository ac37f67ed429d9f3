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

#include "optscore/scoring_rule.hpp"

#include <cmath>
#include <sstream>

#include "compensated_sum.hpp"
#include "optscore/error.hpp"

namespace optscore {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const std::vector<Point> kNoStates;
const std::vector<double> kNoValues;

}  // namespace

// -- StateFunction ----------------------------------------------------------------

StateFunction StateFunction::constant(double c) { return StateFunction(Constant{c}); }

StateFunction StateFunction::table(std::vector<Point> states, std::vector<double> values) {
  if (states.empty() || states.size() != values.size()) {
    throw DimensionError("kappa table needs one value per state");
  }
  return StateFunction(Table{std::move(states), std::move(values)});
}

StateFunction StateFunction::closed_form(std::function<double(const Point&)> f, std::string label) {
  return StateFunction(Closed{std::move(f), std::move(label)});
}

double StateFunction::operator()(const Point& state) const {
  return std::visit(
      Overloaded{
          [](const Constant& c) { return c.value; },
          [&](const Table& t) {
            for (std::size_t i = 0; i < t.states.size(); ++i) {
              if (t.states[i].dim() == state.dim() &&
                  t.states[i].distance_inf(state) <= tol::kFeasibility) {
                return t.values[i];
              }
            }
            std::ostringstream os;
            os << "kappa table has no entry for state " << state;
            throw DomainError(os.str());
          },
          [&](const Closed& c) { return c.f(state); },
      },
      repr_);
}

std::optional<double> StateFunction::constant_value() const {
  if (const auto* c = std::get_if<Constant>(&repr_)) return c->value;
  return std::nullopt;
}

const std::vector<Point>& StateFunction::table_states() const {
  if (const auto* t = std::get_if<Table>(&repr_)) return t->states;
  return kNoStates;
}

const std::vector<double>& StateFunction::table_values() const {
  if (const auto* t = std::get_if<Table>(&repr_)) return t->values;
  return kNoValues;
}

std::string StateFunction::describe() const {
  return std::visit(Overloaded{
                        [](const Constant& c) {
                          std::ostringstream os;
                          os << "constant " << c.value;
                          return os.str();
                        },
                        [](const Table& t) {
                          return "table over " + std::to_string(t.states.size()) + " states";
                        },
                        [](const Closed& c) { return c.label; },
                    },
                    repr_);
}

// -- CanonicalScoringRule ---------------------------------------------------------

CanonicalScoringRule::CanonicalScoringRule(UtilityPtr utility, StateFunction kappa, double bound)
    : utility_(std::move(utility)), kappa_(std::move(kappa)), bound_(bound) {
  if (!utility_) throw DomainError("scoring rule needs a utility");
  if (!(bound_ > 0.0) || !std::isfinite(bound_)) throw DomainError("score bound must be positive");
}

double CanonicalScoringRule::score(const Point& report, const Point& state) const {
  if (report.dim() != dim() || state.dim() != dim()) {
    throw DimensionError("score: rule has dimension " + std::to_string(dim()) + ", report " +
                         std::to_string(report.dim()) + ", state " + std::to_string(state.dim()));
  }
  return utility_->value(report) + utility_->subgradient(report).dot(state - report) + kappa_(state);
}

double CanonicalScoringRule::expected_score(const Point& report,
                                            const FiniteDistribution& belief) const {
  double s = 0.0;
  for (std::size_t k = 0; k < belief.size(); ++k) s += belief.prob(k) * score(report, belief.point(k));
  return s;
}

double score(const CanonicalScoringRule& rule, const Point& report, const Point& state) {
  return rule.score(report, state);
}

double objective(const ConvexUtility& u, const FiniteDistribution& dist) {
  if (dist.dim() != u.dim()) {
    throw DimensionError("objective: utility dimension " + std::to_string(u.dim()) +
                         ", distribution dimension " + std::to_string(dist.dim()));
  }
  detail::CompensatedSum e;
  for (std::size_t i = 0; i < dist.size(); ++i) e.add(dist.prob(i) * u.value(dist.point(i)));
  return e.value() - u.value(dist.mean());
}

StateFunction fit_kappa(const ConvexUtility& u, std::span<const Point> states,
                        std::span<const Point> reports, double bound) {
  if (states.empty() || reports.empty()) throw DomainError("fit_kappa needs states and reports");
  std::vector<double> sub_values(reports.size());
  std::vector<Point> subgrads;
  subgrads.reserve(reports.size());
  for (std::size_t j = 0; j < reports.size(); ++j) {
    sub_values[j] = u.value(reports[j]);
    subgrads.push_back(u.subgradient(reports[j]));
  }
  std::vector<double> kappa(states.size());
  double worst = -INFINITY;
  std::size_t worst_state = 0, worst_report = 0;
  for (std::size_t s = 0; s < states.size(); ++s) {
    const Point& theta = states[s];
    const double u_theta = u.value(theta);
    double lowest = INFINITY;
    for (std::size_t j = 0; j < reports.size(); ++j) {
      const double tangent = sub_values[j] + subgrads[j].dot(theta - reports[j]);
      lowest = std::min(lowest, tangent);
      const double gap = u_theta - tangent;
      if (gap > worst) {
        worst = gap;
        worst_state = s;
        worst_report = j;
      }
    }
    kappa[s] = -lowest;
  }
  if (worst > bound + tol::kFeasibility) {
    std::ostringstream os;
    os << "score bound " << bound << " violated by " << worst - bound << " at report "
       << reports[worst_report] << ", state " << states[worst_state];
    throw InfeasibleError(os.str());
  }
  return StateFunction::table(std::vector<Point>(states.begin(), states.end()), std::move(kappa));
}

ProperCheck verify_proper(const CanonicalScoringRule& rule, std::span<const Point> reports,
                          std::span<const FiniteDistribution> beliefs) {
  ProperCheck out;
  out.worst_violation = -INFINITY;
  for (std::size_t b = 0; b < beliefs.size(); ++b) {
    const FiniteDistribution& g = beliefs[b];
    const double truthful = rule.expected_score(g.mean(), g);
    for (const Point& r : reports) {
      const double gain = rule.expected_score(r, g) - truthful;
      if (gain > out.worst_violation) {
        out.worst_violation = gain;
        if (gain > tol::kFeasibility) {
          out.witness_belief = b;
          out.witness_report = r;
        }
      }
    }
  }
  if (beliefs.empty() || reports.empty()) out.worst_violation = 0.0;
  out.proper = out.worst_violation <= tol::kFeasibility;
  return out;
}

ScoreRange score_range(const CanonicalScoringRule& rule, std::span<const Point> reports,
                       std::span<const Point> states) {
  if (reports.empty() || states.empty()) throw DomainError("score_range needs reports and states");
  ScoreRange out{INFINITY, -INFINITY};
  for (const Point& r : reports) {
    for (const Point& t : states) {
      const double s = rule.score(r, t);
      out.min = std::min(out.min, s);
      out.max = std::max(out.max, s);
    }
  }
  return out;
}

FiniteDistribution two_point_reduction(const FiniteDistribution& dist) {
  if (dist.dim() != 1) throw DimensionError("two_point_reduction needs a 1-d distribution");
  const double mu = dist.mean()[0];
  double p_lo = 0.0, s_lo = 0.0, p_hi = 0.0, s_hi = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double r = dist.value(i);
    if (r < mu) {
      p_lo += dist.prob(i);
      s_lo += dist.prob(i) * r;
    } else {
      p_hi += dist.prob(i);
      s_hi += dist.prob(i) * r;
    }
  }
  if (p_lo == 0.0 || p_hi == 0.0) return FiniteDistribution::point_mass(Point{mu});
  const double total = p_lo + p_hi;
  return FiniteDistribution::scalar({s_lo / p_lo, s_hi / p_hi}, {p_lo / total, p_hi / total});
}

}  // namespace optscore
