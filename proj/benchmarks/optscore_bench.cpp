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


#include <benchmark/benchmark.h>

#include <random>

#include "optscore/bayes.hpp"
#include "optscore/multi_dim.hpp"
#include "optscore/single_dim.hpp"

namespace optscore {
namespace {

FiniteDistribution random_distribution(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> pts;
  std::vector<double> w;
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> c(n);
    for (double& x : c) x = unit(rng);
    pts.emplace_back(std::move(c));
    w.push_back(unit(rng) + 1e-3);
    total += w.back();
  }
  for (double& x : w) x /= total;
  return FiniteDistribution::merged(pts, w, 0.0);
}

void BM_LpOptimal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  const multi_dim::MeanElicitInstance inst(Box::unit(n).corners(), random_distribution(n, m, 7));
  for (auto _ : state) benchmark::DoNotOptimize(multi_dim::lp_optimal(inst).value);
}
BENCHMARK(BM_LpOptimal)->Args({1, 10})->Args({2, 5})->Args({2, 10})->Args({3, 10})->Unit(benchmark::kMillisecond);

void BM_PosteriorMeans(benchmark::State& state) {
  const auto model = SignalModel::bernoulli_on_uniform_grid(0.6, 1.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(posterior_mean_distribution(model).size());
}
BENCHMARK(BM_PosteriorMeans)->Arg(401)->Arg(4001);

void BM_OptValue(benchmark::State& state) {
  const auto f = random_distribution(1, static_cast<std::size_t>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(single_dim::opt_value(f));
}
BENCHMARK(BM_OptValue)->Arg(10)->Arg(1000);

void BM_VerifyProper(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Box box = Box::unit(n);
  const auto rule = multi_dim::max_over_separate_rule(Point(std::vector<double>(n, 0.3)), box).as_canonical();
  const auto grid = box.grid(21);
  std::vector<FiniteDistribution> beliefs;
  for (std::uint64_t s = 0; s < 20; ++s) beliefs.push_back(random_distribution(n, 4, s));
  for (auto _ : state) benchmark::DoNotOptimize(verify_proper(rule, grid, beliefs).proper);
}
BENCHMARK(BM_VerifyProper)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_SeparateGap(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(multi_dim::separate_gap_instance(n).mos_evaluated);
}
BENCHMARK(BM_SeparateGap)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace optscore

BENCHMARK_MAIN();
