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
#include <memory>
#include <vector>

#include "optscore/geometry.hpp"

namespace optscore {

/// Convex utility u(r) of a canonical scoring rule together with a
/// subgradient selection xi(r).
///
/// At kinks `subgradient` returns the right-branch gradient: the right
/// derivative in one dimension, and for max-type utilities the gradient of
/// the selected branch.
class ConvexUtility {
 public:
  virtual ~ConvexUtility() = default;

  virtual std::size_t dim() const = 0;
  virtual double value(const Point& r) const = 0;
  virtual Point subgradient(const Point& r) const = 0;
};

using UtilityPtr = std::shared_ptr<const ConvexUtility>;

/// One-dimensional convex utility with one-sided derivatives.
class UnivariateConvex : public ConvexUtility {
 public:
  std::size_t dim() const final { return 1; }
  double value(const Point& r) const final;
  Point subgradient(const Point& r) const final;

  virtual double at(double x) const = 0;
  virtual double left_slope(double x) const = 0;
  virtual double right_slope(double x) const = 0;
};

using UnivariatePtr = std::shared_ptr<const UnivariateConvex>;

/// Continuous piecewise-linear convex function on [lo, hi] (evaluated by
/// linear extension outside). `slopes[k]` is the slope on the k-th segment;
/// there is one more slope than breakpoints. The additive constant is fixed
/// by requiring value `anchor_value` at `anchor_x`.
class PiecewiseLinearConvexUtility final : public UnivariateConvex {
 public:
  PiecewiseLinearConvexUtility(double lo, double hi, std::vector<double> breakpoints,
                               std::vector<double> slopes, double anchor_x, double anchor_value);

  /// Interpolates (xs[k], ys[k]); the xs must be strictly increasing and the
  /// resulting slopes nondecreasing. The domain is [xs.front(), xs.back()].
  static PiecewiseLinearConvexUtility interpolate(const std::vector<double>& xs,
                                                  const std::vector<double>& ys);

  double at(double x) const override;
  double left_slope(double x) const override;
  double right_slope(double x) const override;

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& slopes() const { return slopes_; }

  /// u(x) + offset + slope * x.
  PiecewiseLinearConvexUtility plus_affine(double offset, double slope) const;

 private:
  std::size_t segment_of(double x) const;

  double lo_;
  double hi_;
  std::vector<double> breakpoints_;
  std::vector<double> slopes_;
  std::vector<double> values_at_breaks_;
  double value_at_lo_;
};

/// u(r) = a (r - mu) for r <= mu and b (r - mu) for r >= mu, with a <= b.
class VShapedUtility final : public UnivariateConvex {
 public:
  VShapedUtility(double mu, double left_slope, double right_slope);

  double at(double x) const override;
  double left_slope(double x) const override;
  double right_slope(double x) const override;

  double mu() const { return mu_; }
  double a() const { return a_; }
  double b() const { return b_; }

  PiecewiseLinearConvexUtility to_piecewise(double lo, double hi) const;

 private:
  double mu_;
  double a_;
  double b_;
};

/// u(r) = r^2.
class SquareUtility final : public UnivariateConvex {
 public:
  double at(double x) const override { return x * x; }
  double left_slope(double x) const override { return 2.0 * x; }
  double right_slope(double x) const override { return 2.0 * x; }
};

/// u(r) = (1/n) sum_i ((r_i - lower_i) / width_i)^2 on a box; reduces to
/// r^2 on [0,1].
class QuadraticUtility final : public ConvexUtility {
 public:
  explicit QuadraticUtility(Box box);

  std::size_t dim() const override { return box_.dim(); }
  double value(const Point& r) const override;
  Point subgradient(const Point& r) const override;

 private:
  Box box_;
};

/// u(r) = max_i (x_i . r - p_i). The selected branch is the maximizer; ties
/// within 1e-12 go to the lexicographically largest slope vector, which in
/// one dimension is the right derivative.
class MaxOfAffineUtility final : public ConvexUtility {
 public:
  MaxOfAffineUtility(std::vector<Point> slopes, std::vector<double> intercepts);

  std::size_t dim() const override { return slopes_.front().dim(); }
  double value(const Point& r) const override;
  Point subgradient(const Point& r) const override;

  std::size_t active_branch(const Point& r) const;
  const std::vector<Point>& slopes() const { return slopes_; }
  const std::vector<double>& intercepts() const { return intercepts_; }

 private:
  std::vector<Point> slopes_;
  std::vector<double> intercepts_;
};

/// u(r) = max_i u_i(r_i) for univariate u_i. The selected coordinate is the
/// argmax with the smallest index on ties; the gradient is that
/// coordinate's right derivative along e_i.
class MaxOverCoordinatesUtility final : public ConvexUtility {
 public:
  explicit MaxOverCoordinatesUtility(std::vector<UnivariatePtr> parts);

  std::size_t dim() const override { return parts_.size(); }
  double value(const Point& r) const override;
  Point subgradient(const Point& r) const override;

  std::size_t selected(const Point& r) const;
  const UnivariateConvex& part(std::size_t i) const { return *parts_[i]; }

 private:
  std::vector<UnivariatePtr> parts_;
};

/// u(r) = (1/n) sum_i u_i(r_i).
class AverageOverCoordinatesUtility final : public ConvexUtility {
 public:
  explicit AverageOverCoordinatesUtility(std::vector<UnivariatePtr> parts);

  std::size_t dim() const override { return parts_.size(); }
  double value(const Point& r) const override;
  Point subgradient(const Point& r) const override;

  const UnivariateConvex& part(std::size_t i) const { return *parts_[i]; }

 private:
  std::vector<UnivariatePtr> parts_;
};

/// u == 0 in dimension n.
class ZeroUtility final : public ConvexUtility {
 public:
  explicit ZeroUtility(std::size_t n) : n_(n) {}

  std::size_t dim() const override { return n_; }
  double value(const Point&) const override { return 0.0; }
  Point subgradient(const Point&) const override { return Point::zeros(n_); }

 private:
  std::size_t n_;
};

}  // namespace optscore
