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

#include "optscore/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "compensated_sum.hpp"
#include "optscore/error.hpp"

namespace optscore {

namespace {

bool lex_less(const Point& a, const Point& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<std::size_t> lex_order(const std::vector<Point>& pts) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return lex_less(pts[a], pts[b]); });
  return order;
}

}  // namespace

FiniteDistribution::FiniteDistribution(std::vector<Point> support, std::vector<double> probs,
                                       std::optional<Box> box)
    : support_(std::move(support)), probs_(std::move(probs)), box_(std::move(box)) {
  if (support_.empty()) throw DomainError("distribution has empty support");
  if (support_.size() != probs_.size()) {
    throw DimensionError("distribution: " + std::to_string(support_.size()) + " points but " +
                         std::to_string(probs_.size()) + " probabilities");
  }
  const std::size_t n = support_.front().dim();
  // Large product supports must still normalize to 1e-12.
  detail::CompensatedSum total;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (support_[i].dim() != n) throw DimensionError("distribution: mixed support dimensions");
    if (!(probs_[i] >= 0.0) || !std::isfinite(probs_[i])) {
      throw DomainError("distribution: probability " + std::to_string(i) + " is negative");
    }
    total.add(probs_[i]);
  }
  if (std::abs(total.value() - 1.0) > tol::kProbability) {
    throw DomainError("distribution: probabilities sum to " + std::to_string(total.value()));
  }
  if (box_) {
    if (box_->dim() != n) throw DimensionError("distribution: box dimension mismatch");
    for (const Point& p : support_) {
      if (!box_->contains(p, tol::kFeasibility)) throw DomainError("distribution: support point outside box");
    }
  }
  const auto order = lex_order(support_);
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (support_[order[k]] == support_[order[k - 1]]) {
      throw DomainError("distribution: duplicate support point");
    }
  }
}

FiniteDistribution FiniteDistribution::merged(const std::vector<Point>& points,
                                              const std::vector<double>& weights,
                                              double merge_tolerance, std::optional<Box> box) {
  if (points.size() != weights.size()) throw DimensionError("merged: size mismatch");
  std::vector<Point> kept_pts;
  std::vector<double> kept_w;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (weights[i] < 0.0) throw DomainError("merged: negative weight");
    if (weights[i] > 0.0) {
      kept_pts.push_back(points[i]);
      kept_w.push_back(weights[i]);
    }
  }
  if (kept_pts.empty()) throw DomainError("distribution has empty support");
  const auto order = lex_order(kept_pts);
  std::vector<Point> out_pts;
  std::vector<double> out_w;
  for (std::size_t k : order) {
    if (!out_pts.empty() && out_pts.back().distance_inf(kept_pts[k]) <= merge_tolerance) {
      out_w.back() += kept_w[k];
    } else {
      out_pts.push_back(kept_pts[k]);
      out_w.push_back(kept_w[k]);
    }
  }
  return FiniteDistribution(std::move(out_pts), std::move(out_w), std::move(box));
}

FiniteDistribution FiniteDistribution::point_mass(const Point& p) {
  return FiniteDistribution({p}, {1.0});
}

FiniteDistribution FiniteDistribution::scalar(const std::vector<double>& values,
                                              const std::vector<double>& probs) {
  std::vector<Point> pts;
  pts.reserve(values.size());
  for (double v : values) pts.push_back(Point{v});
  return FiniteDistribution(std::move(pts), probs);
}

Point FiniteDistribution::mean() const {
  std::vector<detail::CompensatedSum> sums(dim());
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < sums.size(); ++j) sums[j].add(probs_[i] * support_[i][j]);
  }
  std::vector<double> m(dim());
  for (std::size_t j = 0; j < m.size(); ++j) m[j] = sums[j].value();
  return Point(std::move(m));
}

double FiniteDistribution::total_variance() const {
  const Point mu = mean();
  double v = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) {
      const double d = support_[i][j] - mu[j];
      v += probs_[i] * d * d;
    }
  }
  return v;
}

double FiniteDistribution::value(std::size_t i) const {
  if (dim() != 1) throw DimensionError("scalar value requested from a multi-dimensional distribution");
  return support_[i][0];
}

}  // namespace optscore
