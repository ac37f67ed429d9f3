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
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace optscore {

/// A report or a state: a finite vector in R^n with n >= 1.
class Point {
 public:
  Point(std::initializer_list<double> coords);
  explicit Point(std::vector<double> coords);

  /// The origin of R^n.
  static Point zeros(std::size_t n);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  const std::vector<double>& vec() const { return coords_; }

  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  double dot(const Point& other) const;
  Point operator+(const Point& other) const;
  Point operator-(const Point& other) const;
  Point operator*(double s) const;

  /// Max-norm distance.
  double distance_inf(const Point& other) const;

  bool operator==(const Point& other) const = default;

 private:
  std::vector<double> coords_;
};

std::ostream& operator<<(std::ostream& os, const Point& p);

// Throws DimensionError unless a and b have equal dimension.
void require_same_dim(const Point& a, const Point& b, const char* context);

/// Axis-aligned rectangle prod_i [lower_i, upper_i] with lower_i < upper_i.
class Box {
 public:
  Box(std::vector<double> lower, std::vector<double> upper);

  static Box unit(std::size_t n);

  std::size_t dim() const { return lower_.size(); }
  double lower(std::size_t i) const { return lower_[i]; }
  double upper(std::size_t i) const { return upper_[i]; }
  double width(std::size_t i) const { return upper_[i] - lower_[i]; }

  Point midpoint() const;
  bool contains(const Point& p, double tolerance = 0.0) const;

  /// All 2^n corners, first coordinate varying fastest.
  std::vector<Point> corners() const;

  /// Tensor grid with `per_dim` equally spaced points per axis (endpoints
  /// included), first coordinate varying fastest.
  std::vector<Point> grid(std::size_t per_dim) const;

  /// Bounding box of a nonempty point set; degenerate axes are widened
  /// to [x, x + 1].
  static Box bounding(std::span<const Point> points);

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

}  // namespace optscore
