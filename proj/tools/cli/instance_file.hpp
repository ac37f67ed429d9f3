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

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "optscore/bayes.hpp"
#include "optscore/distribution.hpp"
#include "optscore/full_dist.hpp"
#include "optscore/geometry.hpp"
#include "optscore/multi_dim.hpp"

namespace optscore::cli {

/// Malformed instance document; the message names the offending field.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct MeanSpec {
  std::vector<Point> states;
  std::vector<Point> means;
  std::vector<double> probs;
  double bound = 1.0;
};

struct FullDistSpec {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> posteriors;
  std::vector<double> probs;
  double bound = 1.0;
};

struct SignalModelSpec {
  std::vector<Point> theta_grid;
  std::vector<double> prior;
  std::vector<std::vector<double>> likelihood;
  /// State space; defaults to the unit box when the grid lies inside it
  /// and to the grid's bounding box otherwise.
  std::optional<Box> state_box;
  double bound = 1.0;
};

using InstanceSpec = std::variant<MeanSpec, FullDistSpec, SignalModelSpec>;

struct LoadedInstance {
  InstanceSpec spec;
  std::vector<std::string> warnings;
};

/// Probability vectors off by more than 1e-12 but at most 1e-9 are
/// renormalized and reported in `warnings`; larger errors are SchemaErrors.
LoadedInstance parse_instance(const nlohmann::json& doc);
LoadedInstance load_instance(const std::string& path);

nlohmann::json to_json(const InstanceSpec& spec);
void save_instance(const std::string& path, const InstanceSpec& spec);

const char* kind_name(const InstanceSpec& spec);

/// Everything the optimizers and evaluators need, derived from any kind.
struct Prepared {
  std::vector<Point> states;          ///< LP states
  FiniteDistribution means;           ///< distribution of posterior means
  Box box;                            ///< state box used by box-based rules
  double bound = 1.0;
  /// State prior when the document determines it (signal models, full
  /// distributions).
  std::optional<FiniteDistribution> state_prior;
  /// Beliefs over `states`, one per mean support point, when available.
  std::vector<FiniteDistribution> beliefs;
};

Prepared prepare(const InstanceSpec& spec);

multi_dim::MeanElicitInstance mean_instance(const Prepared& p);

}  // namespace optscore::cli
