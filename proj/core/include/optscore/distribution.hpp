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
#include <vector>

#include "optscore/geometry.hpp"

namespace optscore {

/// A distribution with finite support over posterior means.
///
/// The support is nonempty, points are pairwise distinct and share one
/// dimension, and the probabilities are nonnegative and sum to one within
/// 1e-12. An enclosing box may be attached, in which case every support
/// point must lie inside it.
class FiniteDistribution {
 public:
  FiniteDistribution(std::vector<Point> support, std::vector<double> probs,
                     std::optional<Box> box = std::nullopt);

  /// Builds a distribution from possibly repeated points, merging points
  /// within `merge_tolerance` (max-norm) and summing their weights. Zero
  /// weights are dropped. Weights are used as given; they must already sum
  /// to one within 1e-12.
  static FiniteDistribution merged(const std::vector<Point>& points,
                                   const std::vector<double>& weights,
                                   double merge_tolerance = 1e-9,
                                   std::optional<Box> box = std::nullopt);

  static FiniteDistribution point_mass(const Point& p);

  /// 1-d convenience constructor.
  static FiniteDistribution scalar(const std::vector<double>& values,
                                   const std::vector<double>& probs);

  std::size_t size() const { return support_.size(); }
  std::size_t dim() const { return support_.front().dim(); }
  const std::vector<Point>& support() const { return support_; }
  const std::vector<double>& probs() const { return probs_; }
  const Point& point(std::size_t i) const { return support_[i]; }
  double prob(std::size_t i) const { return probs_[i]; }
  const std::optional<Box>& box() const { return box_; }

  Point mean() const;

  /// Covariance trace, i.e. the sum over coordinates of the variance.
  double total_variance() const;

  /// Scalar value of support point i; requires dim() == 1.
  double value(std::size_t i) const;

 private:
  std::vector<Point> support_;
  std::vector<double> probs_;
  std::optional<Box> box_;
};

}  // namespace optscore
