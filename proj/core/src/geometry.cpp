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

#include "optscore/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "optscore/error.hpp"

namespace optscore {

namespace {

void validate_coords(const std::vector<double>& c) {
  if (c.empty()) throw DomainError("point must have at least one coordinate");
  for (double x : c) {
    if (!std::isfinite(x)) throw DomainError("point coordinate is not finite");
  }
}

}  // namespace

Point::Point(std::initializer_list<double> coords) : coords_(coords) {
  validate_coords(coords_);
}

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  validate_coords(coords_);
}

Point Point::zeros(std::size_t n) { return Point(std::vector<double>(n, 0.0)); }

double Point::dot(const Point& other) const {
  require_same_dim(*this, other, "dot product");
  double s = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) s += coords_[i] * other.coords_[i];
  return s;
}

Point Point::operator+(const Point& other) const {
  require_same_dim(*this, other, "point addition");
  std::vector<double> c(coords_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.coords_[i];
  return Point(std::move(c));
}

Point Point::operator-(const Point& other) const {
  require_same_dim(*this, other, "point subtraction");
  std::vector<double> c(coords_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= other.coords_[i];
  return Point(std::move(c));
}

Point Point::operator*(double s) const {
  std::vector<double> c(coords_);
  for (double& x : c) x *= s;
  return Point(std::move(c));
}

double Point::distance_inf(const Point& other) const {
  require_same_dim(*this, other, "distance");
  double d = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    d = std::max(d, std::abs(coords_[i] - other.coords_[i]));
  }
  return d;
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
  os << '(';
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) os << ", ";
    os << p[i];
  }
  return os << ')';
}

void require_same_dim(const Point& a, const Point& b, const char* context) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(context) + ": dimension " + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()));
  }
}

Box::Box(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty() || lower_.size() != upper_.size()) {
    throw DimensionError("box bounds must be nonempty and of equal length");
  }
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(std::isfinite(lower_[i]) && std::isfinite(upper_[i]) && lower_[i] < upper_[i])) {
      throw DomainError("box requires finite lower < upper in dimension " + std::to_string(i));
    }
  }
}

Box Box::unit(std::size_t n) {
  return Box(std::vector<double>(n, 0.0), std::vector<double>(n, 1.0));
}

Point Box::midpoint() const {
  std::vector<double> c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = 0.5 * (lower_[i] + upper_[i]);
  return Point(std::move(c));
}

bool Box::contains(const Point& p, double tolerance) const {
  if (p.dim() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (p[i] < lower_[i] - tolerance || p[i] > upper_[i] + tolerance) return false;
  }
  return true;
}

std::vector<Point> Box::corners() const {
  const std::size_t n = dim();
  std::vector<Point> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = (mask >> i) & 1U ? upper_[i] : lower_[i];
    out.emplace_back(std::move(c));
  }
  return out;
}

std::vector<Point> Box::grid(std::size_t per_dim) const {
  if (per_dim < 2) throw DomainError("grid needs at least two points per axis");
  const std::size_t n = dim();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= per_dim;
  std::vector<Point> out;
  out.reserve(total);
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t k = 0; k < total; ++k) {
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(idx[i]) / static_cast<double>(per_dim - 1);
      c[i] = idx[i] + 1 == per_dim ? upper_[i] : lower_[i] + t * width(i);
    }
    out.emplace_back(std::move(c));
    for (std::size_t i = 0; i < n; ++i) {
      if (++idx[i] < per_dim) break;
      idx[i] = 0;
    }
  }
  return out;
}

Box Box::bounding(std::span<const Point> points) {
  if (points.empty()) throw DomainError("bounding box of an empty point set");
  const std::size_t n = points.front().dim();
  std::vector<double> lo(points.front().vec()), hi(points.front().vec());
  for (const Point& p : points) {
    if (p.dim() != n) throw DimensionError("bounding box: mixed point dimensions");
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lo[i] < hi[i])) hi[i] = lo[i] + 1.0;
  }
  return Box(std::move(lo), std::move(hi));
}

}  // namespace optscore
