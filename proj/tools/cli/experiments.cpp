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


#include "experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include "optscore/error.hpp"
#include "optscore/full_dist.hpp"
#include "optscore/multi_dim.hpp"
#include "optscore/single_dim.hpp"

namespace optscore::cli {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Random distribution on [0,1]^n with 2..8 support points.
FiniteDistribution random_box_distribution(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t m = 2 + rng() % 7;
  std::vector<Point> pts;
  std::vector<double> w;
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> c(n);
    for (double& x : c) x = unit(rng);
    pts.emplace_back(std::move(c));
    w.push_back(unit(rng) + 0.05);
    total += w.back();
  }
  for (double& x : w) x /= total;
  return FiniteDistribution::merged(pts, w, 0.0);
}

}  // namespace

std::uint64_t row_seed(std::uint64_t seed, std::uint64_t row) {
  return splitmix64(splitmix64(seed) ^ row);
}

std::vector<std::vector<Cell>> run_rows(std::size_t count, std::size_t jobs,
                                        const std::function<std::vector<Cell>(std::size_t)>& fn) {
  std::vector<std::vector<Cell>> rows(count);
  const std::size_t workers = std::max<std::size_t>(1, std::min(jobs, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) rows[i] = fn(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          rows[i] = fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

ResultTable experiment_sep_gap(const std::vector<std::size_t>& ns, const RunOptions& opt) {
  ResultTable table({"n", "separate", "max_over_separate", "ratio", "separate_computed", "mos_computed",
                     "abs_deviation"});
  for (auto& row : run_rows(ns.size(), opt.jobs, [&](std::size_t i) -> std::vector<Cell> {
         const multi_dim::SeparateGap g = multi_dim::separate_gap_instance(ns[i]);
         Cell sep_c, mos_c, dev;
         if (g.separate_evaluated && g.mos_evaluated) {
           sep_c = *g.separate_evaluated;
           mos_c = *g.mos_evaluated;
           dev = std::max(std::abs(*g.separate_evaluated - g.separate_obj), std::abs(*g.mos_evaluated - g.mos_obj));
         }
         return {static_cast<long long>(g.n), g.separate_obj, g.mos_obj, g.ratio(), sep_c, mos_c, dev};
       })) {
    table.add_row(std::move(row));
  }
  return table;
}

ResultTable experiment_full_gap(const std::vector<double>& epsilons, const RunOptions& opt) {
  ResultTable table({"epsilon", "mean_opt_formula", "mean_opt", "full_lower", "full_lp", "ratio", "abs_deviation"});
  for (auto& row : run_rows(epsilons.size(), opt.jobs, [&](std::size_t i) -> std::vector<Cell> {
         const double e = epsilons[i];
         const full_dist::FullGap g = full_dist::mean_vs_full_gap(e);
         const double formula = 1.5 * e - e * e;
         const double lp = full_dist::optimal_full_dist(full_dist::gap_full_instance(e)).value;
         return {e, formula, g.mean_opt, g.full_opt_lower, lp, g.ratio(), std::abs(g.mean_opt - formula)};
       })) {
    table.add_row(std::move(row));
  }
  return table;
}

ResultTable experiment_quad_worstcase(const std::vector<double>& cs, std::size_t grid, const RunOptions& opt) {
  ResultTable table({"c", "c_squared", "min_objective", "abs_deviation", "witness_mu", "witness_p",
                     "pi_upper_bound"});
  for (auto& row : run_rows(cs.size(), opt.jobs, [&](std::size_t i) -> std::vector<Cell> {
         const double c = cs[i];
         const single_dim::QuadraticWorstCase w = single_dim::quadratic_worst_case_search(c, grid);
         const double theory = single_dim::maxmin_quadratic_value(c);
         return {c, theory, w.min_objective, std::abs(w.min_objective - theory), w.mu, w.p,
                 single_dim::pi_upper_bound(c)};
       })) {
    table.add_row(std::move(row));
  }
  return table;
}

ResultTable experiment_pi_adversary(const std::vector<std::size_t>& ds, std::size_t random_shapes,
                                    const RunOptions& opt) {
  struct Shape {
    std::string label;
    std::shared_ptr<const UnivariateConvex> u;
  };
  std::vector<Shape> shapes{{"quadratic", std::make_shared<SquareUtility>()}};
  for (std::size_t k = 0; k < random_shapes; ++k) {
    std::mt19937_64 rng(row_seed(opt.seed, k));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double mu = 0.05 + 0.9 * unit(rng);
    const double gap = 2.0 * (1.0 - unit(rng));  // in (0, 2]
    const double a = -gap * unit(rng);
    shapes.push_back({"v-shape-" + std::to_string(k), std::make_shared<VShapedUtility>(mu, a, a + gap)});
  }
  ResultTable table({"utility", "d", "objective", "cap", "benchmark", "low", "high", "within_cap"});
  const std::size_t count = shapes.size() * ds.size();
  for (auto& row : run_rows(count, opt.jobs, [&](std::size_t i) -> std::vector<Cell> {
         const Shape& s = shapes[i / ds.size()];
         const std::size_t d = ds[i % ds.size()];
         const FiniteDistribution adv = single_dim::pigeonhole_adversary(*s.u, d);
         const double obj = objective(*s.u, adv);
         const double dd = static_cast<double>(d);
         const double cap = 1.0 / (2.0 * dd * dd);
         const double mu = adv.mean()[0];
         double benchmark = 0.0;
         for (std::size_t k = 0; k < adv.size(); ++k) benchmark += 2.0 * adv.prob(k) * std::max(0.0, adv.value(k) - mu);
         return {s.label, static_cast<long long>(d), obj, cap, benchmark, adv.value(0), adv.value(1),
                 static_cast<long long>(obj <= cap + tol::kFeasibility)};
       })) {
    table.add_row(std::move(row));
  }
  return table;
}

ResultTable experiment_robustness(const std::vector<double>& epsilons, std::size_t trials, std::size_t dim,
                                  const RunOptions& opt) {
  for (double e : epsilons) {
    if (!(e > 0.0 && e <= 0.5)) throw DomainError("robustness: epsilon must lie in (0, 1/2]");
  }
  if (dim == 0) throw DomainError("robustness: dim must be positive");
  ResultTable table({"epsilon", "trials", "max_loss", "guarantee", "violations"});
  for (auto& row : run_rows(epsilons.size(), opt.jobs, [&](std::size_t i) -> std::vector<Cell> {
         const double e = epsilons[i];
         std::mt19937_64 rng(row_seed(opt.seed, i));
         std::uniform_real_distribution<double> unit(0.0, 1.0);
         double worst = -INFINITY;
         long long violations = 0;
         for (std::size_t t = 0; t < trials; ++t) {
           const FiniteDistribution f = random_box_distribution(rng, dim);
           const Point mu = f.mean();
           std::vector<double> hat(dim);
           for (std::size_t k = 0; k < dim; ++k) {
             const double lo = std::max(0.0, mu[k] - e), hi = std::min(1.0, mu[k] + e);
             hat[k] = lo + (hi - lo) * unit(rng);
           }
           // Pin one coordinate at distance exactly e.
           const std::size_t k = rng() % dim;
           const bool up = mu[k] + e <= 1.0 && (mu[k] - e < 0.0 || rng() % 2 == 0);
           hat[k] = up ? mu[k] + e : mu[k] - e;
           const multi_dim::PerturbationLoss loss = multi_dim::perturbed_rule_loss(f, Point(std::move(hat)));
           worst = std::max(worst, loss.loss());
           if (loss.loss() > 3.0 * e + tol::kFeasibility) ++violations;
         }
         return {e, static_cast<long long>(trials), worst, 3.0 * e, violations};
       })) {
    table.add_row(std::move(row));
  }
  return table;
}

ResultTable experiment_sampling(const std::vector<double>& epsilons, double delta, std::size_t dim,
                                std::size_t trials, const RunOptions& opt) {
  ResultTable table({"epsilon", "delta", "n", "sample_count", "trials", "failures", "failure_rate"});
  for (auto& row : run_rows(epsilons.size(), opt.jobs, [&](std::size_t i) -> std::vector<Cell> {
         const double e = epsilons[i];
         const std::size_t k = multi_dim::sample_count(e, delta, dim);
         std::mt19937_64 rng(row_seed(opt.seed, i));
         std::bernoulli_distribution coin(0.5);
         long long failures = 0;
         std::vector<Point> samples;
         samples.reserve(k);
         for (std::size_t t = 0; t < trials; ++t) {
           samples.clear();
           for (std::size_t s = 0; s < k; ++s) {
             std::vector<double> c(dim);
             for (double& x : c) x = coin(rng) ? 1.0 : 0.0;
             samples.emplace_back(std::move(c));
           }
           const Point est = multi_dim::estimate_prior_mean(samples);
           if (est.distance_inf(Point(std::vector<double>(dim, 0.5))) > e) ++failures;
         }
         const double rate = trials ? static_cast<double>(failures) / static_cast<double>(trials) : 0.0;
         return {e, delta, static_cast<long long>(dim), static_cast<long long>(k), static_cast<long long>(trials),
                 failures, rate};
       })) {
    table.add_row(std::move(row));
  }
  return table;
}

}  // namespace optscore::cli
