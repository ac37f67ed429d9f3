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

#include "optscore/bayes.hpp"

#include <cmath>
#include <string>

#include "optscore/error.hpp"

namespace optscore {

namespace {

void require_simplex(const std::vector<double>& p, const std::string& what) {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError(what + " has a negative entry");
    total += x;
  }
  if (std::abs(total - 1.0) > tol::kProbability) {
    throw DomainError(what + " sums to " + std::to_string(total));
  }
}

}  // namespace

SignalModel::SignalModel(std::vector<Point> theta_grid, std::vector<double> prior,
                         std::vector<std::vector<double>> likelihood)
    : theta_grid_(std::move(theta_grid)), prior_(std::move(prior)), likelihood_(std::move(likelihood)) {
  if (theta_grid_.empty()) throw DomainError("signal model needs at least one state");
  if (prior_.size() != theta_grid_.size() || likelihood_.size() != theta_grid_.size()) {
    throw DimensionError("signal model: prior and likelihood need one entry per state");
  }
  require_simplex(prior_, "prior");
  const std::size_t signals = likelihood_.front().size();
  if (signals == 0) throw DimensionError("signal model needs at least one signal");
  for (std::size_t k = 0; k < likelihood_.size(); ++k) {
    if (theta_grid_[k].dim() != theta_grid_.front().dim()) {
      throw DimensionError("signal model: mixed state dimensions");
    }
    if (likelihood_[k].size() != signals) throw DimensionError("signal model: ragged likelihood");
    require_simplex(likelihood_[k], "likelihood row " + std::to_string(k));
  }
}

SignalModel SignalModel::bernoulli_on_uniform_grid(double lo, double hi, std::size_t points) {
  if (points < 2 || !(lo < hi) || lo < 0.0 || hi > 1.0) {
    throw DomainError("Bernoulli grid needs 0 <= lo < hi <= 1 and at least two points");
  }
  std::vector<Point> grid;
  std::vector<std::vector<double>> lik;
  grid.reserve(points);
  for (std::size_t k = 0; k < points; ++k) {
    const double theta = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
    grid.push_back(Point{theta});
    lik.push_back({1.0 - theta, theta});
  }
  return SignalModel(std::move(grid), std::vector<double>(points, 1.0 / static_cast<double>(points)),
                     std::move(lik));
}

FiniteDistribution SignalModel::prior_distribution() const {
  return FiniteDistribution::merged(theta_grid_, prior_, 0.0);
}

FiniteDistribution posterior(const SignalModel& model, std::size_t signal) {
  if (signal >= model.num_signals()) throw DomainError("posterior: signal index out of range");
  std::vector<double> joint(model.num_states());
  double marginal = 0.0;
  for (std::size_t k = 0; k < model.num_states(); ++k) {
    joint[k] = model.prior()[k] * model.likelihood()[k][signal];
    marginal += joint[k];
  }
  if (marginal <= 0.0) throw DomainError("posterior: signal " + std::to_string(signal) + " has probability 0");
  for (double& j : joint) j /= marginal;
  return FiniteDistribution::merged(model.theta_grid(), joint, 0.0);
}

FiniteDistribution posterior_mean_distribution(const SignalModel& model) {
  const std::size_t n = model.dim();
  std::vector<Point> means;
  std::vector<double> weights;
  for (std::size_t s = 0; s < model.num_signals(); ++s) {
    double marginal = 0.0;
    std::vector<double> weighted(n, 0.0);
    for (std::size_t k = 0; k < model.num_states(); ++k) {
      const double joint = model.prior()[k] * model.likelihood()[k][s];
      marginal += joint;
      for (std::size_t i = 0; i < n; ++i) weighted[i] += joint * model.theta_grid()[k][i];
    }
    if (marginal <= 0.0) continue;
    for (double& w : weighted) w /= marginal;
    means.emplace_back(std::move(weighted));
    weights.push_back(marginal);
  }
  return FiniteDistribution::merged(means, weights, tol::kFeasibility);
}

}  // namespace optscore
