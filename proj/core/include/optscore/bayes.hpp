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
#include <vector>

#include "optscore/distribution.hpp"
#include "optscore/geometry.hpp"

namespace optscore {

/// Discrete prior over states plus a signal channel P(signal | state).
///
/// likelihood[k][s] is the probability of signal s in state theta_grid[k];
/// the prior and every likelihood row sum to one within 1e-12.
class SignalModel {
 public:
  SignalModel(std::vector<Point> theta_grid, std::vector<double> prior,
              std::vector<std::vector<double>> likelihood);

  /// Prior uniform on `points` equally spaced values in [lo, hi] with a
  /// Bernoulli(theta) signal: signal 1 with probability theta.
  static SignalModel bernoulli_on_uniform_grid(double lo, double hi, std::size_t points);

  std::size_t num_states() const { return theta_grid_.size(); }
  std::size_t num_signals() const { return likelihood_.front().size(); }
  std::size_t dim() const { return theta_grid_.front().dim(); }

  const std::vector<Point>& theta_grid() const { return theta_grid_; }
  const std::vector<double>& prior() const { return prior_; }
  const std::vector<std::vector<double>>& likelihood() const { return likelihood_; }

  /// The prior as a distribution over states (duplicates merged).
  FiniteDistribution prior_distribution() const;

 private:
  std::vector<Point> theta_grid_;
  std::vector<double> prior_;
  std::vector<std::vector<double>> likelihood_;
};

/// P(theta | s) over the grid, zero-probability states dropped. Throws
/// DomainError when the signal has zero marginal probability.
FiniteDistribution posterior(const SignalModel& model, std::size_t signal);

/// Distribution of E[theta | s] under s ~ P(s). Signals with zero marginal
/// probability are dropped; posterior means within 1e-9 are merged.
FiniteDistribution posterior_mean_distribution(const SignalModel& model);

}  // namespace optscore
