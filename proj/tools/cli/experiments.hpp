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

#include <cstdint>
#include <functional>
#include <vector>

#include "result_table.hpp"

namespace optscore::cli {

struct RunOptions {
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

/// Seed of an experiment row; independent of the number of worker threads.
std::uint64_t row_seed(std::uint64_t seed, std::uint64_t row);

/// Evaluates fn(row) for every row on up to `jobs` threads and returns the
/// rows in index order.
std::vector<std::vector<Cell>> run_rows(std::size_t count, std::size_t jobs,
                                        const std::function<std::vector<Cell>(std::size_t)>& fn);

ResultTable experiment_sep_gap(const std::vector<std::size_t>& ns, const RunOptions& opt);
ResultTable experiment_full_gap(const std::vector<double>& epsilons, const RunOptions& opt);
ResultTable experiment_quad_worstcase(const std::vector<double>& cs, std::size_t grid, const RunOptions& opt);
/// The quadratic rule plus `random_shapes` random bounded V-shapes, against
/// the pigeonhole adversary for every d.
ResultTable experiment_pi_adversary(const std::vector<std::size_t>& ds, std::size_t random_shapes,
                                    const RunOptions& opt);
ResultTable experiment_robustness(const std::vector<double>& epsilons, std::size_t trials, std::size_t dim,
                                  const RunOptions& opt);
/// Empirical mean of sample_count(eps, delta, dim) draws from the uniform
/// distribution on {0,1}^dim; a trial fails when the max-norm error exceeds eps.
ResultTable experiment_sampling(const std::vector<double>& epsilons, double delta, std::size_t dim,
                                std::size_t trials, const RunOptions& opt);

}  // namespace optscore::cli
