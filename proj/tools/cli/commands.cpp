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


#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "experiments.hpp"
#include "optscore/error.hpp"
#include "optscore/multi_dim.hpp"
#include "optscore/scoring_rule.hpp"
#include "optscore/single_dim.hpp"
#include "optscore/utility.hpp"

namespace optscore::cli {

namespace {

constexpr double kNa = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kMaxReportGrid = 50000;

std::string point_label(const Point& p) {
  std::ostringstream os;
  os.precision(9);
  os << p;
  return os.str();
}

double resolve_bound(const Prepared& p, const std::optional<double>& flag) {
  const double b = flag.value_or(p.bound);
  if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("--bound: must be positive");
  return b;
}

std::vector<std::string> lp_variable_names(const multi_dim::MeanElicitInstance& inst) {
  std::vector<std::string> names;
  const std::size_t k_total = 1 + inst.num_means() + inst.num_states();
  for (std::size_t i = 0; i < k_total; ++i) {
    for (std::size_t k = 0; k < inst.dim(); ++k) names.push_back("x" + std::to_string(i) + "_" + std::to_string(k));
    names.push_back("p" + std::to_string(i));
  }
  return names;
}

// States at which kappa must be defined: the LP states plus every state some
// belief or the prior puts mass on.
std::vector<Point> kappa_states(const Prepared& p) {
  std::vector<Point> out = p.states;
  auto add = [&](const Point& s) {
    const bool known = std::any_of(out.begin(), out.end(),
                                   [&](const Point& t) { return t.distance_inf(s) <= tol::kFeasibility; });
    if (!known) out.push_back(s);
  };
  for (const auto& b : p.beliefs) {
    for (const Point& s : b.support()) add(s);
  }
  if (p.state_prior) {
    for (const Point& s : p.state_prior->support()) add(s);
  }
  return out;
}

}  // namespace

ResultTable cmd_optimize(const InstanceSpec& spec, const OptimizeOptions& opt) {
  Prepared p = prepare(spec);
  p.bound = resolve_bound(p, opt.bound);
  const std::size_t n = p.means.dim();
  Method method = opt.method;
  if (method == Method::kAuto) method = n == 1 ? Method::kClosedForm : Method::kLp;
  if (method == Method::kClosedForm && n != 1) {
    throw std::invalid_argument("--closed-form needs a 1-d instance (this one has dimension " +
                                std::to_string(n) + "); use --lp");
  }
  const double quad = p.bound * objective(QuadraticUtility(p.box), p.means);

  ResultTable table({"quantity", "value"});
  if (method == Method::kClosedForm) {
    const double lo = p.box.lower(0), w = p.box.width(0);
    std::vector<double> values, probs;
    for (std::size_t i = 0; i < p.means.size(); ++i) {
      values.push_back(std::clamp((p.means.value(i) - lo) / w, 0.0, 1.0));
      probs.push_back(p.means.prob(i));
    }
    const FiniteDistribution scaled = FiniteDistribution::merged(
        [&] {
          std::vector<Point> pts;
          for (double v : values) pts.push_back(Point{v});
          return pts;
        }(),
        probs, 0.0);
    const double mu = scaled.mean()[0];
    const double value = p.bound * single_dim::opt_value(scaled);
    double slope = 0.0, kappa = 0.0;
    if (mu > 0.0 && mu < 1.0) {
      slope = p.bound * single_dim::OptRuleSpec::symmetric(mu).b() / w;
      kappa = 0.5 * p.bound;
    }
    table.add_row({std::string("method"), std::string("closed-form")});
    table.add_row({std::string("opt_value"), value});
    table.add_row({std::string("prior_mean"), p.means.mean()[0]});
    table.add_row({std::string("left_slope"), -slope});
    table.add_row({std::string("right_slope"), slope});
    table.add_row({std::string("kappa"), kappa});
    table.add_row({std::string("quadratic_objective"), quad});
    return table;
  }

  const multi_dim::MeanElicitInstance inst = mean_instance(p);
  if (!opt.dump_lp.empty()) {
    std::ofstream dump(opt.dump_lp);
    if (!dump) throw std::invalid_argument("--dump-lp: cannot write " + opt.dump_lp);
    dump << multi_dim::build_mean_lp(inst).to_lp_format(lp_variable_names(inst));
  }
  const multi_dim::LpScoringSolution sol = multi_dim::lp_optimal(inst);
  table.add_row({std::string("method"), std::string("lp")});
  table.add_row({std::string("opt_value"), sol.value});
  table.add_row({std::string("lp_iterations"), static_cast<long long>(sol.iterations)});
  table.add_row({std::string("quadratic_objective"), quad});
  for (std::size_t i = 0; i < sol.reports.size(); ++i) {
    const std::string tag = "[" + std::to_string(i) + "]";
    table.add_row({"report" + tag, point_label(sol.reports[i])});
    for (std::size_t k = 0; k < n; ++k) {
      table.add_row({"x" + tag + "[" + std::to_string(k) + "]", sol.allocations[i][k]});
    }
    table.add_row({"p" + tag, sol.payments[i]});
  }
  return table;
}

ResultTable cmd_evaluate(const InstanceSpec& spec, const EvaluateOptions& opt) {
  Prepared p = prepare(spec);
  p.bound = resolve_bound(p, opt.bound);
  const std::size_t n = p.means.dim();
  const Point mu = p.means.mean();
  const std::vector<Point> states = kappa_states(p);

  // Box-based rules are built with bound 1 and scaled; the LP rule carries
  // its own bound.
  double scale = p.bound;
  std::optional<CanonicalScoringRule> rule;
  if (opt.rule == "quadratic") {
    auto u = std::make_shared<QuadraticUtility>(p.box);
    rule.emplace(u, StateFunction::closed_form([u](const Point& t) { return 1.0 - u->value(t); },
                                               "1 - u(theta)"));
  } else if (opt.rule == "v-shaped") {
    rule.emplace(n == 1 ? multi_dim::max_over_separate_rule(mu, p.box).as_canonical()
                        : multi_dim::symmetric_v_shaped(p.box, p.box.midpoint()));
  } else if (opt.rule == "max-over-separate") {
    rule.emplace(multi_dim::max_over_separate_rule(mu, p.box).as_canonical());
  } else if (opt.rule == "separate") {
    rule.emplace(multi_dim::separate_rule(mu, p.box));
  } else if (opt.rule == "zero") {
    rule.emplace(std::make_shared<ZeroUtility>(n), StateFunction::constant(0.0));
  } else if (opt.rule == "lp") {
    const multi_dim::MeanElicitInstance inst = mean_instance(p);
    rule.emplace(multi_dim::lp_rule(multi_dim::lp_optimal(inst), inst, states));
    scale = 1.0;
  } else {
    throw std::invalid_argument("--rule: unknown rule '" + opt.rule + "'");
  }

  std::size_t per = std::max<std::size_t>(2, opt.grid);
  while (per > 2 && std::pow(static_cast<double>(per), static_cast<double>(n)) > kMaxReportGrid) --per;
  std::vector<Point> reports = p.box.grid(per);
  for (const Point& r : p.means.support()) reports.push_back(r);
  std::vector<FiniteDistribution> beliefs = p.beliefs;
  for (const Point& s : p.states) beliefs.push_back(FiniteDistribution::point_mass(s));

  const ProperCheck proper = verify_proper(*rule, reports, beliefs);
  const ScoreRange range = score_range(*rule, reports, states);
  const double smin = scale * range.min, smax = scale * range.max;
  const double prior_score = p.state_prior ? scale * rule->expected_score(mu, *p.state_prior) : kNa;

  ResultTable table({"quantity", "value"});
  table.add_row({std::string("rule"), opt.rule});
  table.add_row({std::string("objective"), scale * objective(rule->utility(), p.means)});
  table.add_row({std::string("prior_report_score"), prior_score});
  table.add_row({std::string("proper"), static_cast<long long>(proper.proper)});
  table.add_row({std::string("worst_violation"), scale * proper.worst_violation});
  table.add_row({std::string("score_min"), smin});
  table.add_row({std::string("score_max"), smax});
  table.add_row({std::string("bounded"),
                 static_cast<long long>(smin >= -tol::kFeasibility && smax <= p.bound + tol::kFeasibility)});
  table.add_row({std::string("report_grid"), static_cast<long long>(reports.size())});
  return table;
}

ResultTable cmd_bayes(const InstanceSpec& spec, const std::string& emit_path) {
  const auto* s = std::get_if<SignalModelSpec>(&spec);
  if (!s) throw SchemaError(std::string("kind: bayes needs a signal_model instance, got ") + kind_name(spec));
  const Prepared p = prepare(spec);
  const std::size_t n = p.means.dim();
  std::vector<std::string> headers{"index"};
  if (n == 1) headers.push_back("mean");
  for (std::size_t k = 0; n > 1 && k < n; ++k) headers.push_back("mean_" + std::to_string(k));
  headers.push_back("prob");
  ResultTable table(headers);
  for (std::size_t i = 0; i < p.means.size(); ++i) {
    std::vector<Cell> row{static_cast<long long>(i)};
    for (std::size_t k = 0; k < n; ++k) row.push_back(p.means.point(i)[k]);
    row.push_back(p.means.prob(i));
    table.add_row(std::move(row));
  }
  if (!emit_path.empty()) {
    save_instance(emit_path, MeanSpec{p.states, p.means.support(), p.means.probs(), p.bound});
  }
  return table;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal bounded scoring rules for eliciting means"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "csv";
  std::string out_path;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "table"}));
  app.add_option("--out", out_path, "Write the table to this file instead of stdout");
  app.add_option("--seed", seed, "Seed for randomized experiments");
  app.add_option("--jobs", jobs, "Worker threads for experiment rows")->check(CLI::PositiveNumber);

  std::string instance_path;
  std::optional<double> bound;

  auto* optimize = app.add_subcommand("optimize", "Optimal rule for an instance");
  OptimizeOptions oopt;
  bool closed_form = false, use_lp = false;
  optimize->add_option("instance", instance_path, "Instance file (JSON)")->required();
  auto* cf = optimize->add_flag("--closed-form", closed_form, "1-d closed form");
  optimize->add_flag("--lp", use_lp, "Solve the linear program")->excludes(cf);
  optimize->add_option("--bound", bound, "Score bound B");
  optimize->add_option("--dump-lp", oopt.dump_lp, "Write the linear program to this file");

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a rule on an instance");
  EvaluateOptions eopt;
  evaluate->add_option("instance", instance_path, "Instance file (JSON)")->required();
  evaluate->add_option("--rule", eopt.rule, "Rule to evaluate")
      ->required()
      ->check(CLI::IsMember({"quadratic", "v-shaped", "max-over-separate", "separate", "lp", "zero"}));
  evaluate->add_option("--bound", bound, "Score bound B");
  evaluate->add_option("--grid", eopt.grid, "Report grid points per dimension")->check(CLI::Range(2, 1000));

  auto* experiment = app.add_subcommand("experiment", "Reproduce a numerical experiment");
  std::string name;
  std::vector<std::size_t> ns, ds;
  std::vector<double> epsilons, cs;
  double delta = 0.05;
  std::optional<std::size_t> dim, trials;
  std::size_t grid = 200, shapes = 5;
  experiment->add_option("name", name, "Experiment")
      ->required()
      ->check(CLI::IsMember({"sep-gap", "full-gap", "quad-worstcase", "pi-adversary", "robustness", "sampling"}));
  experiment->add_option("--n", ns, "Dimensions (sep-gap)")->delimiter(',');
  experiment->add_option("--epsilon", epsilons, "Epsilon values")->delimiter(',');
  experiment->add_option("--c", cs, "OPT levels (quad-worstcase)")->delimiter(',');
  experiment->add_option("--d", ds, "Cell counts (pi-adversary)")->delimiter(',');
  experiment->add_option("--delta", delta, "Failure probability (sampling)");
  experiment->add_option("--dim", dim, "Dimension (robustness, sampling)");
  experiment->add_option("--trials", trials, "Trials per row (robustness, sampling)");
  experiment->add_option("--grid", grid, "Grid resolution (quad-worstcase)");
  experiment->add_option("--shapes", shapes, "Random V-shapes (pi-adversary)");

  auto* bayes = app.add_subcommand("bayes", "Posterior-mean distribution of a signal model");
  std::string emit;
  bayes->add_option("instance", instance_path, "Instance file (JSON)")->required();
  bayes->add_option("--emit", emit, "Write the distribution as a mean instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    ResultTable table({});
    auto load = [&] {
      LoadedInstance li = load_instance(instance_path);
      for (const std::string& w : li.warnings) err << "warning: " << w << '\n';
      return std::move(li.spec);
    };
    if (optimize->parsed()) {
      oopt.method = closed_form ? Method::kClosedForm : use_lp ? Method::kLp : Method::kAuto;
      oopt.bound = bound;
      table = cmd_optimize(load(), oopt);
    } else if (evaluate->parsed()) {
      eopt.bound = bound;
      table = cmd_evaluate(load(), eopt);
    } else if (bayes->parsed()) {
      table = cmd_bayes(load(), emit);
    } else {
      const RunOptions ropt{seed, jobs};
      if (name == "sep-gap") {
        table = experiment_sep_gap(ns.empty() ? std::vector<std::size_t>{2, 5, 10} : ns, ropt);
      } else if (name == "full-gap") {
        table = experiment_full_gap(epsilons.empty() ? std::vector<double>{0.5, 0.1, 0.05, 0.01} : epsilons, ropt);
      } else if (name == "quad-worstcase") {
        table = experiment_quad_worstcase(cs.empty() ? std::vector<double>{0.1, 0.25, 0.5} : cs, grid, ropt);
      } else if (name == "pi-adversary") {
        table = experiment_pi_adversary(ds.empty() ? std::vector<std::size_t>{2, 4, 8} : ds, shapes, ropt);
      } else if (name == "robustness") {
        table = experiment_robustness(epsilons.empty() ? std::vector<double>{0.01, 0.05, 0.1} : epsilons,
                                      trials.value_or(100), dim.value_or(2), ropt);
      } else {
        table = experiment_sampling(epsilons.empty() ? std::vector<double>{0.1} : epsilons, delta, dim.value_or(4),
                                    trials.value_or(1000), ropt);
      }
    }
    const Format f = format == "table" ? Format::kTable : Format::kCsv;
    if (out_path.empty()) {
      write_table(out, table, f);
    } else {
      std::ofstream file(out_path);
      if (!file) throw std::invalid_argument("--out: cannot write " + out_path);
      write_table(file, table, f);
    }
    return kOk;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kSolverFailure;
  }
}

}  // namespace optscore::cli
