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

#include <iosfwd>
#include <optional>
#include <string>

#include "instance_file.hpp"
#include "result_table.hpp"

namespace optscore::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kInfeasible = 3, kSolverFailure = 4 };

enum class Method { kAuto, kClosedForm, kLp };

struct OptimizeOptions {
  Method method = Method::kAuto;
  std::optional<double> bound;
  std::string dump_lp;  ///< write the LP here when nonempty
};

ResultTable cmd_optimize(const InstanceSpec& spec, const OptimizeOptions& opt);

struct EvaluateOptions {
  std::string rule;  ///< quadratic, v-shaped, max-over-separate, separate, lp, zero
  std::optional<double> bound;
  std::size_t grid = 21;  ///< report grid points per dimension
};

ResultTable cmd_evaluate(const InstanceSpec& spec, const EvaluateOptions& opt);

/// Posterior-mean distribution of a signal model; optionally writes it as a
/// mean instance.
ResultTable cmd_bayes(const InstanceSpec& spec, const std::string& emit_path);

/// Full command line entry point. Tables go to `out` (or --out), warnings
/// and errors to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace optscore::cli
