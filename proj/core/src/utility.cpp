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

#include "optscore/utility.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "optscore/error.hpp"

namespace optscore {

namespace {

constexpr double kTieTolerance = 1e-12;

void require_dim(const ConvexUtility& u, const Point& r) {
  if (r.dim() != u.dim()) {
    throw DimensionError("utility of dimension " + std::to_string(u.dim()) +
                         " evaluated at a point of dimension " + std::to_string(r.dim()));
  }
}

void require_parts(const std::vector<UnivariatePtr>& parts) {
  if (parts.empty()) throw DimensionError("coordinate utility needs at least one part");
  for (const auto& p : parts) {
    if (!p) throw DomainError("coordinate utility has a null part");
  }
}

}  // namespace

double UnivariateConvex::value(const Point& r) const {
  require_dim(*this, r);
  return at(r[0]);
}

Point UnivariateConvex::subgradient(const Point& r) const {
  require_dim(*this, r);
  return Point{right_slope(r[0])};
}

// -- PiecewiseLinearConvexUtility --------------------------------------------

PiecewiseLinearConvexUtility::PiecewiseLinearConvexUtility(double lo, double hi,
                                                           std::vector<double> breakpoints,
                                                           std::vector<double> slopes,
                                                           double anchor_x, double anchor_value)
    : lo_(lo), hi_(hi), breakpoints_(std::move(breakpoints)), slopes_(std::move(slopes)) {
  if (!(lo_ < hi_)) throw DomainError("piecewise-linear utility needs lo < hi");
  if (slopes_.size() != breakpoints_.size() + 1) {
    throw DimensionError("piecewise-linear utility needs one more slope than breakpoints");
  }
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    if (breakpoints_[k] < lo_ || breakpoints_[k] > hi_) {
      throw DomainError("breakpoint outside [lo, hi]");
    }
    if (k > 0 && !(breakpoints_[k - 1] < breakpoints_[k])) {
      throw DomainError("breakpoints must be strictly increasing");
    }
  }
  for (std::size_t k = 1; k < slopes_.size(); ++k) {
    const double scale = std::max(1.0, std::abs(slopes_[k]));
    if (slopes_[k] < slopes_[k - 1] - kTieTolerance * scale) {
      throw DomainError("slopes must be nondecreasing (convexity violated at segment " +
                        std::to_string(k) + ")");
    }
  }
  values_at_breaks_.resize(breakpoints_.size());
  double prev_x = lo_;
  double prev_v = 0.0;
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    prev_v += slopes_[k] * (breakpoints_[k] - prev_x);
    prev_x = breakpoints_[k];
    values_at_breaks_[k] = prev_v;
  }
  value_at_lo_ = 0.0;
  const double shift = anchor_value - at(anchor_x);
  value_at_lo_ = shift;
  for (double& v : values_at_breaks_) v += shift;
}

PiecewiseLinearConvexUtility PiecewiseLinearConvexUtility::interpolate(
    const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() < 2 || xs.size() != ys.size()) {
    throw DimensionError("interpolation needs at least two (x, y) pairs");
  }
  std::vector<double> breaks(xs.begin() + 1, xs.end() - 1);
  std::vector<double> slopes;
  slopes.reserve(xs.size() - 1);
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    if (!(xs[k] < xs[k + 1])) throw DomainError("interpolation abscissae must increase");
    slopes.push_back((ys[k + 1] - ys[k]) / (xs[k + 1] - xs[k]));
  }
  return PiecewiseLinearConvexUtility(xs.front(), xs.back(), std::move(breaks), std::move(slopes),
                                      xs.front(), ys.front());
}

std::size_t PiecewiseLinearConvexUtility::segment_of(double x) const {
  return static_cast<std::size_t>(
      std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin());
}

double PiecewiseLinearConvexUtility::at(double x) const {
  const std::size_t s = segment_of(x);
  if (s == 0) return value_at_lo_ + slopes_[0] * (x - lo_);
  return values_at_breaks_[s - 1] + slopes_[s] * (x - breakpoints_[s - 1]);
}

double PiecewiseLinearConvexUtility::left_slope(double x) const {
  const auto s = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin();
  return slopes_[static_cast<std::size_t>(s)];
}

double PiecewiseLinearConvexUtility::right_slope(double x) const { return slopes_[segment_of(x)]; }

PiecewiseLinearConvexUtility PiecewiseLinearConvexUtility::plus_affine(double offset,
                                                                       double slope) const {
  std::vector<double> s(slopes_);
  for (double& v : s) v += slope;
  return PiecewiseLinearConvexUtility(lo_, hi_, breakpoints_, std::move(s), lo_,
                                      at(lo_) + offset + slope * lo_);
}

// -- VShapedUtility ---------------------------------------------------------------

VShapedUtility::VShapedUtility(double mu, double left_slope, double right_slope)
    : mu_(mu), a_(left_slope), b_(right_slope) {
  if (!std::isfinite(mu_) || !std::isfinite(a_) || !std::isfinite(b_)) {
    throw DomainError("V-shaped utility parameters must be finite");
  }
  if (a_ > b_) throw DomainError("V-shaped utility needs left slope <= right slope");
}

double VShapedUtility::at(double x) const { return x < mu_ ? a_ * (x - mu_) : b_ * (x - mu_); }

double VShapedUtility::left_slope(double x) const { return x <= mu_ ? a_ : b_; }

double VShapedUtility::right_slope(double x) const { return x < mu_ ? a_ : b_; }

PiecewiseLinearConvexUtility VShapedUtility::to_piecewise(double lo, double hi) const {
  if (mu_ > lo && mu_ < hi) {
    return PiecewiseLinearConvexUtility(lo, hi, {mu_}, {a_, b_}, mu_, 0.0);
  }
  const double s = mu_ <= lo ? b_ : a_;
  return PiecewiseLinearConvexUtility(lo, hi, {}, {s}, lo, at(lo));
}

// -- QuadraticUtility -------------------------------------------------------------

QuadraticUtility::QuadraticUtility(Box box) : box_(std::move(box)) {}

double QuadraticUtility::value(const Point& r) const {
  require_dim(*this, r);
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    const double z = (r[i] - box_.lower(i)) / box_.width(i);
    s += z * z;
  }
  return s / static_cast<double>(dim());
}

Point QuadraticUtility::subgradient(const Point& r) const {
  require_dim(*this, r);
  std::vector<double> g(dim());
  const double n = static_cast<double>(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    g[i] = 2.0 * (r[i] - box_.lower(i)) / (box_.width(i) * box_.width(i) * n);
  }
  return Point(std::move(g));
}

// -- MaxOfAffineUtility -----------------------------------------------------------

MaxOfAffineUtility::MaxOfAffineUtility(std::vector<Point> slopes, std::vector<double> intercepts)
    : slopes_(std::move(slopes)), intercepts_(std::move(intercepts)) {
  if (slopes_.empty() || slopes_.size() != intercepts_.size()) {
    throw DimensionError("max-of-affine utility needs matching nonempty slopes and intercepts");
  }
  for (const Point& x : slopes_) require_same_dim(x, slopes_.front(), "max-of-affine slopes");
}

std::size_t MaxOfAffineUtility::active_branch(const Point& r) const {
  require_dim(*this, r);
  double best = -INFINITY;
  for (std::size_t i = 0; i < slopes_.size(); ++i) {
    best = std::max(best, slopes_[i].dot(r) - intercepts_[i]);
  }
  std::size_t pick = slopes_.size();
  for (std::size_t i = 0; i < slopes_.size(); ++i) {
    if (slopes_[i].dot(r) - intercepts_[i] < best - kTieTolerance) continue;
    if (pick == slopes_.size() ||
        std::lexicographical_compare(slopes_[pick].begin(), slopes_[pick].end(),
                                     slopes_[i].begin(), slopes_[i].end())) {
      pick = i;
    }
  }
  return pick;
}

double MaxOfAffineUtility::value(const Point& r) const {
  require_dim(*this, r);
  double best = -INFINITY;
  for (std::size_t i = 0; i < slopes_.size(); ++i) {
    best = std::max(best, slopes_[i].dot(r) - intercepts_[i]);
  }
  return best;
}

Point MaxOfAffineUtility::subgradient(const Point& r) const { return slopes_[active_branch(r)]; }

// -- coordinate-wise compositions -------------------------------------------------

MaxOverCoordinatesUtility::MaxOverCoordinatesUtility(std::vector<UnivariatePtr> parts)
    : parts_(std::move(parts)) {
  require_parts(parts_);
}

std::size_t MaxOverCoordinatesUtility::selected(const Point& r) const {
  require_dim(*this, r);
  std::size_t pick = 0;
  double best = parts_[0]->at(r[0]);
  for (std::size_t i = 1; i < parts_.size(); ++i) {
    const double v = parts_[i]->at(r[i]);
    if (v > best) {
      best = v;
      pick = i;
    }
  }
  return pick;
}

double MaxOverCoordinatesUtility::value(const Point& r) const {
  const std::size_t i = selected(r);
  return parts_[i]->at(r[i]);
}

Point MaxOverCoordinatesUtility::subgradient(const Point& r) const {
  const std::size_t i = selected(r);
  std::vector<double> g(dim(), 0.0);
  g[i] = parts_[i]->right_slope(r[i]);
  return Point(std::move(g));
}

AverageOverCoordinatesUtility::AverageOverCoordinatesUtility(std::vector<UnivariatePtr> parts)
    : parts_(std::move(parts)) {
  require_parts(parts_);
}

double AverageOverCoordinatesUtility::value(const Point& r) const {
  require_dim(*this, r);
  double s = 0.0;
  for (std::size_t i = 0; i < parts_.size(); ++i) s += parts_[i]->at(r[i]);
  return s / static_cast<double>(parts_.size());
}

Point AverageOverCoordinatesUtility::subgradient(const Point& r) const {
  require_dim(*this, r);
  std::vector<double> g(dim());
  const double n = static_cast<double>(parts_.size());
  for (std::size_t i = 0; i < parts_.size(); ++i) g[i] = parts_[i]->right_slope(r[i]) / n;
  return Point(std::move(g));
}

}  // namespace optscore
