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


// Acceptance run: one PASS/FAIL line per criterion with its runtime.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "optscore/bayes.hpp"
#include "optscore/full_dist.hpp"
#include "optscore/multi_dim.hpp"
#include "optscore/single_dim.hpp"
#include "support/generators.hpp"

namespace optscore {
namespace {

using testing::Gen;

struct Verdict {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Verdict()> check;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
  return buf;
}

multi_dim::MeanElicitInstance unit_instance(const FiniteDistribution& f) {
  return multi_dim::MeanElicitInstance(Box::unit(f.dim()).corners(), f);
}

double upside_benchmark(const FiniteDistribution& f) {
  const double mu = f.mean()[0];
  double total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) total += f.prob(i) * std::max(0.0, f.value(i) - mu);
  return 2.0 * total;
}

std::vector<FiniteDistribution> beliefs_on(Gen& gen, const std::vector<Point>& states, std::size_t count) {
  std::vector<FiniteDistribution> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t m = 1 + gen.index(4);
    std::vector<Point> pts;
    for (std::size_t k = 0; k < m; ++k) pts.push_back(states[gen.index(states.size())]);
    out.push_back(FiniteDistribution::merged(pts, gen.simplex(m), 0.0));
  }
  return out;
}

Verdict intro_example() {
  const auto model = SignalModel::bernoulli_on_uniform_grid(0.6, 1.0, 401);
  const auto means = posterior_mean_distribution(model);
  const double opt = single_dim::opt_value(means);
  const auto quad = single_dim::quadratic_rule();
  const double quad_obj = objective(quad.utility(), means);
  const auto prior = model.prior_distribution();
  const double prior_score = quad.expected_score(prior.mean(), prior);
  Verdict v;
  v.pass = std::abs(opt - 0.016667) <= 1e-4 && std::abs(quad_obj - 0.001111) <= 1e-4 &&
           std::abs(prior_score - 0.986667) <= 1e-4;
  v.detail = fmt("opt %.6f, quadratic %.6f, prior-report score %.6f", opt, quad_obj, prior_score);
  return v;
}

Verdict single_dim_optimum() {
  const double coin = single_dim::opt_value(FiniteDistribution::scalar({0.0, 1.0}, {0.5, 0.5}));
  Gen gen(1002);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) worst = std::max(worst, single_dim::opt_value(gen.scalar_distribution(10, true)));
  return {coin == 0.5 && worst <= 0.5, fmt("opt(uniform{0,1}) = %.17g, max over 1000 random = %.6f", coin, worst)};
}

Verdict lp_vs_formula() {
  Gen gen(1003);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto f = gen.scalar_distribution(10, true);
    worst = std::max(worst, std::abs(multi_dim::lp_optimal(unit_instance(f)).value - single_dim::opt_value(f)));
  }
  return {worst <= 1e-6, fmt("max |lp - formula| = %.3g over 50 instances", worst)};
}

Verdict symmetric_multi_dim() {
  Gen gen(1004);
  const Box box = Box::unit(2);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto f = gen.symmetric_distribution(2, 1 + gen.index(4));
    const double lp = multi_dim::lp_optimal(unit_instance(f)).value;
    worst = std::max(worst, std::abs(lp - objective(multi_dim::symmetric_v_shaped(box, f.mean()).utility(), f)));
  }
  return {worst <= 1e-6, fmt("max |lp - symmetric V| = %.3g over 20 instances", worst)};
}

Verdict eighth_approximation() {
  Gen gen(1005);
  double worst_ratio = INFINITY;
  int above_half = 0;
  bool ok = true;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + gen.index(2);
    const auto f = gen.distribution(n, 5, true);
    const double lp = multi_dim::lp_optimal(unit_instance(f)).value;
    const double mos = objective(*multi_dim::max_over_separate_rule(f.mean(), Box::unit(n)).utility(), f);
    ok &= mos >= lp / 8.0 - 1e-12;
    above_half += mos >= lp / 2.0 - 1e-12;
    if (lp > 1e-9) worst_ratio = std::min(worst_ratio, mos / lp);
  }
  return {ok, fmt("min mos/lp = %.4f; mos >= lp/2 on %.0f of 50", worst_ratio, above_half)};
}

Verdict separate_gap() {
  bool ok = true;
  std::ostringstream os;
  for (std::size_t n : {2u, 5u, 10u}) {
    const auto gap = multi_dim::separate_gap_instance(n);
    const double nn = static_cast<double>(n);
    const double mos_formula = 0.5 * (1.0 - std::pow(1.0 - 1.0 / nn, nn));
    ok &= gap.separate_obj == 1.0 / (2.0 * nn);
    ok &= std::abs(gap.mos_obj - mos_formula) <= 1e-9;
    ok &= gap.separate_evaluated && std::abs(*gap.separate_evaluated - gap.separate_obj) <= 1e-9;
    ok &= gap.mos_evaluated && std::abs(*gap.mos_evaluated - gap.mos_obj) <= 1e-9;
    os << "n=" << n << ": " << fmt("%.6f vs %.6f (ratio %.4f); ", gap.separate_obj, gap.mos_obj, gap.ratio());
  }
  return {ok, os.str()};
}

Verdict quadratic_worst_case() {
  bool ok = true;
  std::ostringstream os;
  for (double c : {0.1, 0.25, 0.5}) {
    const auto res = single_dim::quadratic_worst_case_search(c, 200);
    ok &= std::abs(res.min_objective - c * c) <= 2e-3;
    os << fmt("c=%.2f: %.6f vs %.6f; ", c, res.min_objective, c * c);
  }
  return {ok, os.str()};
}

Verdict prior_independent_adversary() {
  Gen gen(1008);
  std::vector<std::shared_ptr<UnivariateConvex>> utilities{std::make_shared<SquareUtility>()};
  for (int k = 0; k < 5; ++k) {
    const double mu = gen.uniform(0.05, 0.95);
    const double span = gen.uniform(0.1, 1.0) / std::max(mu, 1.0 - mu);
    const double a = gen.uniform(-1.0, 1.0);
    utilities.push_back(std::make_shared<VShapedUtility>(mu, a, a + span));
  }
  bool ok = true;
  double worst_slack = INFINITY;
  for (const auto& u : utilities) {
    for (std::size_t d : {2u, 4u, 8u}) {
      const auto f = single_dim::pigeonhole_adversary(*u, d);
      const double dd = static_cast<double>(d);
      const double cap = 1.0 / (2.0 * dd * dd);
      const double obj = objective(*u, f);
      ok &= obj <= cap + 1e-9;
      ok &= std::abs(upside_benchmark(f) - 1.0 / (2.0 * dd)) <= 1e-12;
      worst_slack = std::min(worst_slack, cap - obj);
    }
  }
  return {ok, fmt("18 (utility, d) pairs; min cap - objective = %.3g", worst_slack)};
}

Verdict variance_bound() {
  Gen gen(1009);
  double worst = INFINITY;
  for (int t = 0; t < 200; ++t) {
    const auto check = single_dim::variance_lower_bound_check(gen.scalar_distribution(10, true));
    worst = std::min(worst, check.lhs - check.rhs);
  }
  return {worst >= -1e-9, fmt("min variance - sigma*opt = %.3g over 200", worst)};
}

Verdict robustness() {
  Gen gen(1010);
  bool ok = true;
  double worst_margin = INFINITY;
  for (double eps : {0.01, 0.05, 0.1}) {
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 1 + gen.index(3);
      const auto f = gen.distribution(n, 6);
      const Point mu = f.mean();
      std::vector<double> hat(mu.begin(), mu.end());
      for (double& x : hat) x = std::clamp(x + gen.uniform(-eps, eps), 0.0, 1.0);
      const std::size_t pinned = gen.index(n);
      hat[pinned] = mu[pinned] + eps <= 1.0 ? mu[pinned] + eps : mu[pinned] - eps;
      for (std::size_t i = 0; i < n; ++i) {
        hat[i] = std::clamp(hat[i], mu[i] - eps, mu[i] + eps);
      }
      const auto loss = multi_dim::perturbed_rule_loss(f, Point(hat));
      ok &= std::abs(loss.epsilon - eps) <= 1e-12;
      ok &= loss.loss() <= 3.0 * eps + 1e-9;
      worst_margin = std::min(worst_margin, 3.0 * eps - loss.loss());
    }
  }
  return {ok, fmt("300 pairs; min 3*eps - loss = %.4f", worst_margin)};
}

Verdict sampling() {
  const std::size_t k = multi_dim::sample_count(0.1, 0.05, 4);
  std::mt19937_64 rng(1011);
  std::bernoulli_distribution bit(0.5);
  int failures = 0;
  std::vector<Point> samples(k, Point::zeros(4));
  for (int trial = 0; trial < 1000; ++trial) {
    for (Point& s : samples) s = Point{double(bit(rng)), double(bit(rng)), double(bit(rng)), double(bit(rng))};
    failures += multi_dim::estimate_prior_mean(samples).distance_inf(Point{0.5, 0.5, 0.5, 0.5}) > 0.1;
  }
  return {k == 439 && failures <= 50, fmt("k = %.0f, failures %.0f / 1000", double(k), failures)};
}

Verdict full_distribution_gap() {
  bool ok = true;
  std::ostringstream os;
  for (double eps : {0.5, 0.1, 0.05, 0.01}) {
    const auto gap = full_dist::mean_vs_full_gap(eps);
    // The support points 1/2 +- eps are themselves rounded, so agreement is
    // to representation error of the instance.
    ok &= std::abs(gap.mean_opt - (1.5 * eps - eps * eps)) <= 1e-15 && gap.full_opt_lower == 0.5;
    os << fmt("eps=%.2f: mean %.6f, full >= %.3f", eps, gap.mean_opt, gap.full_opt_lower);
    if (eps == 0.05 || eps == 0.1) {
      const double lp = full_dist::optimal_full_dist(full_dist::gap_full_instance(eps)).value;
      ok &= lp >= 0.25;
      os << fmt(", lp %.6f", lp);
    }
    os << "; ";
  }
  return {ok, os.str()};
}

Verdict reduction_identity() {
  Gen gen(1013);
  int identical = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = 2 + gen.index(3), m = 1 + gen.index(5);
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < d; ++j) labels.push_back("s" + std::to_string(j));
    std::vector<std::vector<double>> posts;
    for (std::size_t i = 0; i < m; ++i) posts.push_back(gen.simplex(d));
    const full_dist::FullDistInstance inst(labels, posts, gen.simplex(m));
    const auto a = full_dist::optimal_full_dist(inst);
    const auto b = multi_dim::lp_optimal(full_dist::to_mean_instance(inst));
    identical += a.value == b.value && a.allocations == b.allocations && a.payments == b.payments;
  }
  return {identical == 20, fmt("%.0f of 20 bit-identical", identical)};
}

Verdict expected_bound_variant() {
  Gen gen(1014);
  double worst_gap = 0.0, worst_excess = -INFINITY;
  bool ok = true;
  for (int t = 0; t < 50; ++t) {
    const auto f = gen.scalar_distribution(8, true);
    const double mu = f.mean()[0];
    const auto raw = gen.bounded_convex(5);
    const double slope = raw.right_slope(mu);
    const auto u = raw.plus_affine(-raw.at(mu) + slope * mu, -slope);
    const auto res = single_dim::expected_bound_v_shape(u, f);
    const double gap = std::abs(objective(res.utility, f) - objective(u, f));
    worst_gap = std::max(worst_gap, gap);
    worst_excess = std::max(worst_excess, res.kappa_excess);
    ok &= gap <= 1e-9 && res.feasible;
  }
  return {ok, fmt("max objective change %.3g, max kappa excess %.3g", worst_gap, worst_excess)};
}

Verdict properness_suite() {
  Gen gen(1015);
  struct Case {
    std::string name;
    CanonicalScoringRule rule;
    std::vector<Point> reports;
    std::vector<Point> states;
    double tol;
  };
  std::vector<Case> cases;
  const auto line = Box::unit(1).grid(21);
  const auto square = Box::unit(2).grid(21);
  cases.push_back({"quadratic", single_dim::quadratic_rule(), line, line, 1e-12});
  for (double mu : {0.2, 0.5, 0.8}) {
    cases.push_back({fmt("optimal V at %.1f", mu), single_dim::optimal_v_shaped(mu), line, line, 1e-12});
  }
  cases.push_back({"symmetric V 2-d", multi_dim::symmetric_v_shaped(Box::unit(2), Point{0.5, 0.5}), square,
                   square, 1e-12});
  for (int k = 0; k < 4; ++k) {
    const Point mu{gen.coordinate(), gen.coordinate()};
    cases.push_back({"max-over-separate", multi_dim::max_over_separate_rule(mu, Box::unit(2)).as_canonical(),
                     square, square, 1e-12});
    cases.push_back({"separate", multi_dim::separate_rule(mu, Box::unit(2)), square, square, 1e-12});
  }
  for (std::size_t n : {1u, 2u}) {
    for (int k = 0; k < 3; ++k) {
      const auto inst = unit_instance(gen.distribution(n, 5, true));
      const auto& grid = n == 1 ? line : square;
      cases.push_back({"lp " + std::to_string(n) + "-d", multi_dim::lp_rule(multi_dim::lp_optimal(inst), inst, grid),
                       grid, grid, 1e-7});
    }
  }
  {
    const auto inst = full_dist::to_mean_instance(full_dist::gap_full_instance(0.1));
    const auto rule = multi_dim::lp_rule(multi_dim::lp_optimal(inst), inst);
    cases.push_back({"lp full-distribution gap", rule, Box::unit(4).grid(21), inst.states(), 1e-7});
  }
  bool ok = true;
  std::string failed;
  for (const auto& c : cases) {
    const auto beliefs = beliefs_on(gen, c.states, 20);
    const auto proper = verify_proper(c.rule, c.reports, beliefs);
    const auto range = score_range(c.rule, c.reports, c.states);
    const bool good = proper.proper && range.min >= -c.tol && range.max <= 1.0 + c.tol;
    if (!good) failed += c.name + "; ";
    ok &= good;
  }
  return {ok, std::to_string(cases.size()) + " rules checked" + (failed.empty() ? "" : ", failed: " + failed)};
}

}  // namespace
}  // namespace optscore

int main() {
  using namespace optscore;
  const std::vector<Criterion> criteria{
      {1, "intro example reproduction", 1.0, intro_example},
      {2, "single-dimensional optimum", 1.0, single_dim_optimum},
      {3, "LP versus closed form", 10.0, lp_vs_formula},
      {4, "symmetric multi-dimensional optimum", 30.0, symmetric_multi_dim},
      {5, "max-over-separate 1/8 approximation", 60.0, eighth_approximation},
      {6, "separate scoring gap", 10.0, separate_gap},
      {7, "quadratic worst case", 30.0, quadratic_worst_case},
      {8, "prior-independent adversary", 5.0, prior_independent_adversary},
      {9, "variance bound", 5.0, variance_bound},
      {10, "robustness to mean error", 10.0, robustness},
      {11, "sample complexity", 30.0, sampling},
      {12, "full-distribution gap", 10.0, full_distribution_gap},
      {13, "full-distribution reduction identity", 10.0, reduction_identity},
      {14, "expected-bound variant", 5.0, expected_bound_variant},
      {15, "properness and boundedness suite", 30.0, properness_suite},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = v.pass && in_time;
    failures += !pass;
    std::printf("%s %2d %s: %s [%.3fs / %.0fs%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), secs,
                c.limit_seconds, in_time ? "" : " exceeded");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
