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


#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <sstream>

#include "optscore/distribution.hpp"
#include "optscore/error.hpp"
#include "optscore/geometry.hpp"
#include "optscore/scoring_rule.hpp"
#include "optscore/utility.hpp"
#include "support/generators.hpp"

namespace optscore {
namespace {

// Posterior means of the uniform-prior Bernoulli example in closed form:
// E[theta] = 0.8, E[theta^2] = 49/75.
constexpr double kSecondMoment = 49.0 / 75.0;
const double kHighMean = kSecondMoment / 0.8;
const double kLowMean = (0.8 - kSecondMoment) / 0.2;

FiniteDistribution intro_distribution() { return FiniteDistribution::scalar({kLowMean, kHighMean}, {0.2, 0.8}); }

CanonicalScoringRule quadratic() {
  return CanonicalScoringRule(std::make_shared<SquareUtility>(),
                              StateFunction::closed_form([](const Point& t) { return 1.0 - t[0] * t[0]; }, "q"));
}

// u(r) = -r^2 with its gradient: concave, so the canonical rule is improper.
class ConcaveUtility final : public ConvexUtility {
 public:
  std::size_t dim() const override { return 1; }
  double value(const Point& r) const override { return -r[0] * r[0]; }
  Point subgradient(const Point& r) const override { return Point{-2.0 * r[0]}; }
};

std::vector<FiniteDistribution> bernoulli_beliefs(std::size_t count) {
  std::vector<FiniteDistribution> out;
  for (std::size_t k = 1; k < count; ++k) {
    const double p = static_cast<double>(k) / static_cast<double>(count);
    out.push_back(FiniteDistribution::scalar({0.0, 1.0}, {1.0 - p, p}));
  }
  return out;
}

std::vector<Point> unit_grid(std::size_t per_dim, std::size_t n = 1) { return Box::unit(n).grid(per_dim); }

TEST(Point, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(Point(std::vector<double>{}), DomainError);
  EXPECT_THROW((Point{0.0, NAN}), DomainError);
  EXPECT_THROW((Point{INFINITY}), DomainError);
}

TEST(Point, Arithmetic) {
  const Point a{1.0, 2.0}, b{0.5, -1.0};
  EXPECT_DOUBLE_EQ(a.dot(b), -1.5);
  EXPECT_EQ(a + b, (Point{1.5, 1.0}));
  EXPECT_EQ(a - b, (Point{0.5, 3.0}));
  EXPECT_EQ(a * 2.0, (Point{2.0, 4.0}));
  EXPECT_DOUBLE_EQ(a.distance_inf(b), 3.0);
  EXPECT_THROW(a.dot(Point{1.0}), DimensionError);
  std::ostringstream os;
  os << a;
  EXPECT_EQ(os.str(), "(1, 2)");
}

TEST(Box, ValidatesAndEnumerates) {
  EXPECT_THROW(Box({0.0}, {0.0}), DomainError);
  EXPECT_THROW(Box({0.0, 0.0}, {1.0}), DimensionError);
  const Box b({0.0, 2.0}, {1.0, 4.0});
  EXPECT_EQ(b.midpoint(), (Point{0.5, 3.0}));
  const auto corners = b.corners();
  ASSERT_EQ(corners.size(), 4u);
  EXPECT_EQ(corners[0], (Point{0.0, 2.0}));
  EXPECT_EQ(corners[1], (Point{1.0, 2.0}));
  EXPECT_EQ(corners[3], (Point{1.0, 4.0}));
  const auto grid = b.grid(3);
  ASSERT_EQ(grid.size(), 9u);
  EXPECT_EQ(grid.back(), (Point{1.0, 4.0}));
  EXPECT_TRUE(b.contains(Point{1.0 + 1e-12, 3.0}, 1e-9));
  EXPECT_FALSE(b.contains(Point{1.1, 3.0}));
}

TEST(Box, BoundingWidensDegenerateAxes) {
  const std::vector<Point> pts{Point{0.2, 1.0}, Point{0.7, 1.0}};
  const Box b = Box::bounding(pts);
  EXPECT_DOUBLE_EQ(b.lower(0), 0.2);
  EXPECT_DOUBLE_EQ(b.upper(0), 0.7);
  EXPECT_DOUBLE_EQ(b.lower(1), 1.0);
  EXPECT_DOUBLE_EQ(b.upper(1), 2.0);
}

TEST(FiniteDistribution, Invariants) {
  EXPECT_THROW(FiniteDistribution({}, {}), DomainError);
  EXPECT_THROW(FiniteDistribution::scalar({0.0, 1.0}, {0.5, 0.6}), DomainError);
  EXPECT_THROW(FiniteDistribution::scalar({0.0, 1.0}, {-0.5, 1.5}), DomainError);
  EXPECT_THROW(FiniteDistribution::scalar({0.5, 0.5}, {0.5, 0.5}), DomainError);
  EXPECT_THROW(FiniteDistribution({Point{0.0}, Point{1.0, 1.0}}, {0.5, 0.5}), DimensionError);
  EXPECT_THROW(FiniteDistribution({Point{2.0}}, {1.0}, Box::unit(1)), DomainError);
  EXPECT_NO_THROW(FiniteDistribution::scalar({0.0, 1.0}, {0.5, 0.5 + 5e-13}));
}

TEST(FiniteDistribution, MeanAndVariance) {
  const auto f = FiniteDistribution::scalar({0.0, 1.0}, {0.25, 0.75});
  EXPECT_DOUBLE_EQ(f.mean()[0], 0.75);
  EXPECT_DOUBLE_EQ(f.total_variance(), 0.1875);
  EXPECT_THROW(FiniteDistribution::point_mass(Point{0.0, 1.0}).value(0), DimensionError);
}

TEST(FiniteDistribution, MergedCombinesNearbyPointsAndDropsZeros) {
  const auto f = FiniteDistribution::merged({Point{0.3}, Point{0.3 + 1e-12}, Point{0.9}, Point{0.5}},
                                            {0.25, 0.25, 0.5, 0.0});
  ASSERT_EQ(f.size(), 2u);
  EXPECT_DOUBLE_EQ(f.prob(0), 0.5);
  EXPECT_DOUBLE_EQ(f.value(1), 0.9);
}

TEST(PiecewiseLinear, ConvexityEnforced) {
  EXPECT_THROW(PiecewiseLinearConvexUtility(0.0, 1.0, {0.5}, {1.0, 0.0}, 0.0, 0.0), DomainError);
  EXPECT_THROW(PiecewiseLinearConvexUtility(0.0, 1.0, {0.5}, {0.0}, 0.0, 0.0), DimensionError);
}

TEST(PiecewiseLinear, ContinuousWithOneSidedSlopes) {
  const PiecewiseLinearConvexUtility u(0.0, 1.0, {0.25, 0.75}, {-1.0, 0.0, 2.0}, 0.5, 0.1);
  EXPECT_NEAR(u.at(0.5), 0.1, 1e-15);
  EXPECT_NEAR(u.at(0.25), 0.1, 1e-15);
  EXPECT_NEAR(u.at(0.0), 0.35, 1e-15);
  EXPECT_NEAR(u.at(1.0), 0.6, 1e-15);
  EXPECT_DOUBLE_EQ(u.left_slope(0.25), -1.0);
  EXPECT_DOUBLE_EQ(u.right_slope(0.25), 0.0);
  EXPECT_DOUBLE_EQ(u.left_slope(0.75), 0.0);
  EXPECT_DOUBLE_EQ(u.right_slope(0.75), 2.0);
  EXPECT_EQ(u.subgradient(Point{0.75}), Point{2.0});
  for (double b : u.breakpoints()) {
    EXPECT_NEAR(u.at(b - 1e-9), u.at(b + 1e-9), 1e-8);
  }
}

TEST(PiecewiseLinear, InterpolateAndShift) {
  const auto u = PiecewiseLinearConvexUtility::interpolate({0.0, 0.5, 1.0}, {0.5, 0.0, 0.5});
  EXPECT_DOUBLE_EQ(u.left_slope(0.5), -1.0);
  EXPECT_DOUBLE_EQ(u.right_slope(0.5), 1.0);
  const auto v = u.plus_affine(0.25, -1.0);
  EXPECT_NEAR(v.at(1.0), 0.5 + 0.25 - 1.0, 1e-15);
  EXPECT_THROW(PiecewiseLinearConvexUtility::interpolate({0.0, 0.5, 1.0}, {0.0, 0.5, 0.0}), DomainError);
}

TEST(VShaped, KinkUsesRightSlope) {
  const VShapedUtility u(0.8, -0.625, 0.625);
  EXPECT_DOUBLE_EQ(u.at(0.8), 0.0);
  EXPECT_DOUBLE_EQ(u.left_slope(0.8), -0.625);
  EXPECT_DOUBLE_EQ(u.right_slope(0.8), 0.625);
  EXPECT_THROW(VShapedUtility(0.5, 1.0, -1.0), DomainError);
  const auto pw = u.to_piecewise(0.0, 1.0);
  for (double x : {0.0, 0.3, 0.8, 0.9, 1.0}) EXPECT_NEAR(pw.at(x), u.at(x), 1e-15);
}

TEST(MaxOfAffine, TieGoesToLargestSlope) {
  const MaxOfAffineUtility u({Point{-1.0}, Point{1.0}}, {-0.5, 0.5});
  EXPECT_DOUBLE_EQ(u.value(Point{0.5}), 0.0);
  EXPECT_EQ(u.subgradient(Point{0.5}), Point{1.0});
  EXPECT_EQ(u.active_branch(Point{0.2}), 0u);
}

TEST(MaxOverCoordinates, SmallestIndexOnTies) {
  auto v = std::make_shared<VShapedUtility>(0.5, -1.0, 1.0);
  const MaxOverCoordinatesUtility u({v, v});
  EXPECT_EQ(u.selected(Point{0.9, 0.1}), 0u);
  EXPECT_EQ(u.selected(Point{0.6, 0.1}), 1u);
  EXPECT_EQ(u.subgradient(Point{0.6, 0.1}), (Point{0.0, -1.0}));
  EXPECT_DOUBLE_EQ(u.value(Point{0.75, 0.5}), 0.25);
}

TEST(Score, QuadraticRuleExample) {
  EXPECT_DOUBLE_EQ(score(quadratic(), Point{0.5}, Point{1.0}), 0.75);
}

TEST(Score, VShapeAffineBranch) {
  const CanonicalScoringRule rule(std::make_shared<VShapedUtility>(0.8, -0.625, 0.625), StateFunction::constant(0.5));
  EXPECT_DOUBLE_EQ(score(rule, Point{1.0}, Point{1.0}), 0.625);
}

TEST(Score, TruthfulOnRealizedStateIsMaximal) {
  const auto rule = quadratic();
  for (double theta : {0.0, 0.3, 1.0}) {
    const double truthful = score(rule, Point{theta}, Point{theta});
    for (const Point& r : unit_grid(21)) EXPECT_LE(score(rule, r, Point{theta}), truthful + 1e-12);
  }
}

TEST(Score, DimensionMismatch) {
  EXPECT_THROW(score(quadratic(), Point{0.5, 0.5}, Point{1.0}), DimensionError);
  EXPECT_THROW(score(quadratic(), Point{0.5}, Point{1.0, 0.0}), DimensionError);
}

TEST(Objective, Examples) {
  EXPECT_DOUBLE_EQ(objective(VShapedUtility(0.5, -1.0, 1.0), FiniteDistribution::scalar({0.0, 1.0}, {0.5, 0.5})),
                   0.5);
  EXPECT_DOUBLE_EQ(objective(SquareUtility(), FiniteDistribution::point_mass(Point{0.3})), 0.0);
  EXPECT_NEAR(objective(VShapedUtility(0.8, -0.625, 0.625), intro_distribution()), 1.0 / 60.0, 1e-6);
}

TEST(Objective, EqualsExpectedScoreGain) {
  // For the canonical rule, Obj equals the gain of an informed forecaster
  // over one who reports the prior mean.
  testing::Gen gen(11);
  const auto rule = quadratic();
  for (int t = 0; t < 20; ++t) {
    const auto f = gen.scalar_distribution(6);
    const double mu = f.mean()[0];
    double informed = 0.0, uninformed = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double r = f.value(i);
      const auto belief = FiniteDistribution::scalar({0.0, 1.0}, {1.0 - r, r});
      informed += f.prob(i) * rule.expected_score(Point{r}, belief);
      uninformed += f.prob(i) * rule.expected_score(Point{mu}, belief);
    }
    EXPECT_NEAR(informed - uninformed, objective(rule.utility(), f), 1e-12);
  }
}

TEST(FitKappa, QuadraticMatchesOnCorners) {
  const std::vector<Point> states{Point{0.0}, Point{1.0}};
  const auto kappa = fit_kappa(SquareUtility(), states, unit_grid(101));
  EXPECT_NEAR(kappa(Point{0.0}), 1.0, 1e-12);
  EXPECT_NEAR(kappa(Point{1.0}), 0.0, 1e-12);
  EXPECT_THROW(kappa(Point{0.5}), DomainError);
}

TEST(FitKappa, ZeroUtility) {
  const std::vector<Point> states{Point{0.0}, Point{0.4}, Point{1.0}};
  const auto kappa = fit_kappa(ZeroUtility(1), states, unit_grid(11));
  for (const Point& s : states) EXPECT_DOUBLE_EQ(kappa(s), 0.0);
}

TEST(FitKappa, SymmetricVShape) {
  const std::vector<Point> states{Point{0.0}, Point{1.0}};
  const auto kappa = fit_kappa(VShapedUtility(0.5, -1.0, 1.0), states, unit_grid(21));
  EXPECT_DOUBLE_EQ(kappa(Point{0.0}), 0.5);
  EXPECT_DOUBLE_EQ(kappa(Point{1.0}), 0.5);
}

TEST(FitKappa, RejectsUnboundedUtility) {
  const std::vector<Point> states{Point{0.0}, Point{1.0}};
  const PiecewiseLinearConvexUtility steep(0.0, 1.0, {0.5}, {-2.0, 2.0}, 0.5, 0.0);
  try {
    fit_kappa(steep, states, unit_grid(21));
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    EXPECT_NE(std::string(e.what()).find("state"), std::string::npos);
  }
}

TEST(VerifyProper, QuadraticOnBernoulliBeliefs) {
  const auto beliefs = bernoulli_beliefs(20);
  const auto check = verify_proper(quadratic(), unit_grid(21), beliefs);
  EXPECT_TRUE(check.proper);
  EXPECT_LE(check.worst_violation, 1e-12);
}

TEST(VerifyProper, ConcaveUtilityFailsWithWitness) {
  const CanonicalScoringRule rule(std::make_shared<ConcaveUtility>(),
                                  StateFunction::closed_form([](const Point& t) { return t[0] * t[0]; }, "t^2"));
  const auto beliefs = bernoulli_beliefs(10);
  const auto check = verify_proper(rule, unit_grid(21), beliefs);
  EXPECT_FALSE(check.proper);
  ASSERT_TRUE(check.witness_belief.has_value());
  ASSERT_TRUE(check.witness_report.has_value());
  const auto& g = beliefs[*check.witness_belief];
  EXPECT_GT(rule.expected_score(*check.witness_report, g), rule.expected_score(g.mean(), g) + 1e-9);
}

TEST(ScoreRange, QuadraticSpansUnitInterval) {
  const std::vector<Point> states{Point{0.0}, Point{1.0}};
  const auto range = score_range(quadratic(), unit_grid(21), states);
  EXPECT_DOUBLE_EQ(range.min, 0.0);
  EXPECT_DOUBLE_EQ(range.max, 1.0);
}

TEST(TwoPointReduction, Examples) {
  const auto f = FiniteDistribution::scalar({0.0, 0.5, 1.0}, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  const auto g = two_point_reduction(f);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_NEAR(g.value(0), 0.0, 1e-15);
  EXPECT_NEAR(g.value(1), 0.75, 1e-15);
  EXPECT_NEAR(g.prob(1), 2.0 / 3, 1e-15);
  const auto pm = two_point_reduction(FiniteDistribution::point_mass(Point{0.4}));
  EXPECT_EQ(pm.size(), 1u);
  const auto coin = two_point_reduction(FiniteDistribution::scalar({0.0, 1.0}, {0.5, 0.5}));
  EXPECT_EQ(coin.support(), (std::vector<Point>{Point{0.0}, Point{1.0}}));
}

// -- properties ------------------------------------------------------------------

TEST(CoreProperty, AffineShiftInvariance) {
  testing::Gen gen(1);
  for (int t = 0; t < 200; ++t) {
    const auto u = gen.bounded_convex(4);
    const double a = gen.uniform(-1, 1), b = gen.uniform(-1, 1);
    const auto f = gen.scalar_distribution(8, true);
    EXPECT_NEAR(objective(u.plus_affine(a, b), f), objective(u, f), 1e-9);
  }
}

TEST(CoreProperty, JensenUnderTwoPointReduction) {
  testing::Gen gen(2);
  for (int t = 0; t < 200; ++t) {
    const auto u = gen.bounded_convex(5);
    const auto f = gen.scalar_distribution(8, true);
    const auto g = two_point_reduction(f);
    EXPECT_NEAR(g.mean()[0], f.mean()[0], 1e-12);
    EXPECT_LE(objective(u, g), objective(u, f) + 1e-9);
  }
}

TEST(CoreProperty, SubgradientSupportsUtility) {
  testing::Gen gen(3);
  const auto grid = unit_grid(41);
  for (int t = 0; t < 100; ++t) {
    const auto u = gen.bounded_convex(5);
    for (const Point& r : grid) {
      const Point xi = u.subgradient(r);
      for (const Point& s : grid) EXPECT_GE(u.value(s), u.value(r) + xi.dot(s - r) - 1e-12);
    }
  }
}

TEST(CoreProperty, FittedKappaGivesZeroMinimumScore) {
  testing::Gen gen(4);
  const std::vector<Point> states = unit_grid(11);
  const std::vector<Point> reports = unit_grid(21);
  for (int t = 0; t < 100; ++t) {
    const auto u = std::make_shared<PiecewiseLinearConvexUtility>(gen.bounded_convex(4));
    const CanonicalScoringRule rule(u, fit_kappa(*u, states, reports));
    for (const Point& s : states) {
      double lowest = INFINITY;
      for (const Point& r : reports) lowest = std::min(lowest, rule.score(r, s));
      EXPECT_NEAR(lowest, 0.0, 1e-9);
    }
    const auto range = score_range(rule, reports, states);
    EXPECT_LE(range.max, 1.0 + 1e-9);
    EXPECT_TRUE(verify_proper(rule, reports, bernoulli_beliefs(10)).proper);
  }
}

}  // namespace
}  // namespace optscore
