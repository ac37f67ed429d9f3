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

#include <string>
#include <vector>

#include "optscore/distribution.hpp"
#include "optscore/multi_dim.hpp"

// Eliciting a whole distribution over finitely many states, encoded as mean
// elicitation over the indicator vectors of the states.
namespace optscore::full_dist {

/// d state labels and m posteriors (probability vectors over the states)
/// with their probabilities. Every posterior and the posterior weights sum
/// to one within 1e-12.
class FullDistInstance {
 public:
  FullDistInstance(std::vector<std::string> labels, std::vector<std::vector<double>> posteriors,
                   std::vector<double> probs);

  std::size_t num_states() const { return labels_.size(); }
  std::size_t num_posteriors() const { return posteriors_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<double>>& posteriors() const { return posteriors_; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<double>> posteriors_;
  std::vector<double> probs_;
};

/// States become the standard basis e_1..e_d of R^d and each posterior its
/// own probability vector; identical posteriors are merged.
multi_dim::MeanElicitInstance to_mean_instance(const FullDistInstance& inst, double bound = 1.0);

/// lp_optimal on the indicator encoding.
multi_dim::LpScoringSolution optimal_full_dist(const FullDistInstance& inst, double bound = 1.0);

struct FullGap {
  double epsilon = 0.0;
  double mean_opt = 0.0;        ///< optimal mean elicitation, (3/2) eps - eps^2
  double full_opt_lower = 0.0;  ///< objective of the high/low indicator rule, 1/2

  double ratio() const { return full_opt_lower / mean_opt; }
};

/// States {0, 1/2 - eps, 1/2 + eps, 1} with point-mass posteriors of
/// probability eps/2, (1-eps)/2, (1-eps)/2, eps/2.
FullDistInstance gap_full_instance(double epsilon);

/// The same instance seen through its scalar posterior means.
FiniteDistribution gap_mean_distribution(double epsilon);

/// The high/low indicator utility max(x . (0,0,1,1) - 1/2, x . (0,0,-1,-1) + 1/2).
MaxOfAffineUtility high_low_indicator_utility();

/// Requires 0 < eps <= 1/2.
FullGap mean_vs_full_gap(double epsilon);

}  // namespace optscore::full_dist
