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


#include "optscore/full_dist.hpp"

#include <cmath>

#include "optscore/error.hpp"
#include "optscore/single_dim.hpp"

namespace optscore::full_dist {

namespace {

void require_epsilon(double eps) {
  if (!(eps > 0.0 && eps <= 0.5)) throw DomainError("gap instance: epsilon must lie in (0, 1/2]");
}

}  // namespace

FullDistInstance::FullDistInstance(std::vector<std::string> labels,
                                   std::vector<std::vector<double>> posteriors,
                                   std::vector<double> probs)
    : labels_(std::move(labels)), posteriors_(std::move(posteriors)), probs_(std::move(probs)) {
  if (labels_.empty()) throw DomainError("full-distribution instance needs at least one state");
  if (posteriors_.empty()) throw DomainError("full-distribution instance needs at least one posterior");
  if (posteriors_.size() != probs_.size()) {
    throw DimensionError("full-distribution instance: " + std::to_string(posteriors_.size()) +
                         " posteriors but " + std::to_string(probs_.size()) + " probabilities");
  }
  for (std::size_t k = 0; k < posteriors_.size(); ++k) {
    const auto& g = posteriors_[k];
    if (g.size() != labels_.size()) {
      throw DimensionError("posterior " + std::to_string(k) + " has " + std::to_string(g.size()) +
                           " entries for " + std::to_string(labels_.size()) + " states");
    }
    double total = 0.0;
    for (double q : g) {
      if (!(q >= 0.0) || !std::isfinite(q)) {
        throw DomainError("posterior " + std::to_string(k) + " has a negative entry");
      }
      total += q;
    }
    if (std::abs(total - 1.0) > tol::kProbability) {
      throw DomainError("posterior " + std::to_string(k) + " sums to " + std::to_string(total));
    }
  }
  double mass = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("posterior probabilities must be nonnegative");
    mass += p;
  }
  if (std::abs(mass - 1.0) > tol::kProbability) {
    throw DomainError("posterior probabilities sum to " + std::to_string(mass));
  }
}

multi_dim::MeanElicitInstance to_mean_instance(const FullDistInstance& inst, double bound) {
  const std::size_t d = inst.num_states();
  std::vector<Point> states;
  states.reserve(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> e(d, 0.0);
    e[j] = 1.0;
    states.emplace_back(std::move(e));
  }
  std::vector<Point> pts;
  pts.reserve(inst.num_posteriors());
  for (const auto& g : inst.posteriors()) pts.emplace_back(g);
  return multi_dim::MeanElicitInstance(
      std::move(states), FiniteDistribution::merged(pts, inst.probs(), 0.0), bound);
}

multi_dim::LpScoringSolution optimal_full_dist(const FullDistInstance& inst, double bound) {
  return multi_dim::lp_optimal(to_mean_instance(inst, bound));
}

FullDistInstance gap_full_instance(double epsilon) {
  require_epsilon(epsilon);
  std::vector<std::vector<double>> posteriors(4, std::vector<double>(4, 0.0));
  for (std::size_t j = 0; j < 4; ++j) posteriors[j][j] = 1.0;
  const double tail = epsilon / 2.0, body = 0.5 - tail;
  return FullDistInstance({"0", "1/2-eps", "1/2+eps", "1"}, std::move(posteriors),
                          {tail, body, body, tail});
}

FiniteDistribution gap_mean_distribution(double epsilon) {
  require_epsilon(epsilon);
  const double tail = epsilon / 2.0, body = 0.5 - tail;
  return FiniteDistribution::merged({Point{0.0}, Point{0.5 - epsilon}, Point{0.5 + epsilon}, Point{1.0}},
                                    {tail, body, body, tail}, 0.0);
}

MaxOfAffineUtility high_low_indicator_utility() {
  return MaxOfAffineUtility({Point{0.0, 0.0, 1.0, 1.0}, Point{0.0, 0.0, -1.0, -1.0}}, {0.5, -0.5});
}

FullGap mean_vs_full_gap(double epsilon) {
  require_epsilon(epsilon);
  FullGap out;
  out.epsilon = epsilon;
  out.mean_opt = single_dim::opt_value(gap_mean_distribution(epsilon));
  const multi_dim::MeanElicitInstance encoded = to_mean_instance(gap_full_instance(epsilon));
  out.full_opt_lower = objective(high_low_indicator_utility(), encoded.means());
  return out;
}

}  // namespace optscore::full_dist
