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


#include "instance_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "optscore/error.hpp"

namespace optscore::cli {

using nlohmann::json;

namespace {

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + "." + key + ": missing");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw SchemaError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw SchemaError(where + ": not finite");
  return x;
}

std::vector<double> numbers(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw SchemaError(where + ": expected a nonempty array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Point point(const json& v, const std::string& where) {
  if (v.is_number()) return Point{number(v, where)};
  return Point(numbers(v, where));
}

std::vector<Point> points(const json& v, const std::string& where, std::optional<std::size_t> dim) {
  if (!v.is_array() || v.empty()) throw SchemaError(where + ": expected a nonempty array");
  std::vector<Point> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    out.push_back(point(v[i], at));
    if (!dim) dim = out.back().dim();
    if (out.back().dim() != *dim) {
      throw SchemaError(at + ": has dimension " + std::to_string(out.back().dim()) + ", expected " +
                        std::to_string(*dim));
    }
  }
  return out;
}

double optional_bound(const json& doc) {
  if (!doc.contains("bound")) return 1.0;
  const double b = number(doc["bound"], "bound");
  if (!(b > 0.0)) throw SchemaError("bound: must be positive");
  return b;
}

// Renormalizes a probability vector in place; errors beyond 1e-9 are fatal.
void normalize(std::vector<double>& probs, const std::string& where, std::vector<std::string>& warnings) {
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] < 0.0) throw SchemaError(where + "[" + std::to_string(i) + "]: negative probability");
    total += probs[i];
  }
  const double err = std::abs(total - 1.0);
  if (err > tol::kFeasibility) {
    std::ostringstream os;
    os << where << ": probabilities sum to " << total;
    throw SchemaError(os.str());
  }
  if (err > tol::kProbability) {
    for (double& p : probs) p /= total;
    std::ostringstream os;
    os.precision(17);
    os << where << ": probabilities summed to " << total << "; renormalized";
    warnings.push_back(os.str());
  }
}

MeanSpec parse_mean(const json& doc, std::vector<std::string>& warnings) {
  MeanSpec spec;
  std::optional<std::size_t> dim;
  if (doc.contains("dim")) {
    const json& d = doc["dim"];
    if (!d.is_number_integer() || d.get<long long>() < 1) throw SchemaError("dim: expected a positive integer");
    dim = d.get<std::size_t>();
  }
  spec.states = points(field(doc, "states", "mean"), "states", dim);
  dim = spec.states.front().dim();
  const json& means = field(doc, "means", "mean");
  if (!means.is_array() || means.empty()) throw SchemaError("means: expected a nonempty array");
  for (std::size_t i = 0; i < means.size(); ++i) {
    const std::string at = "means[" + std::to_string(i) + "]";
    Point p = point(field(means[i], "point", at), at + ".point");
    if (p.dim() != *dim) throw SchemaError(at + ".point: dimension does not match the states");
    spec.means.push_back(std::move(p));
    spec.probs.push_back(number(field(means[i], "prob", at), at + ".prob"));
  }
  normalize(spec.probs, "means.prob", warnings);
  spec.bound = optional_bound(doc);
  return spec;
}

FullDistSpec parse_full(const json& doc, std::vector<std::string>& warnings) {
  FullDistSpec spec;
  const json& states = field(doc, "states", "full_dist");
  if (!states.is_array() || states.empty()) throw SchemaError("states: expected a nonempty array of labels");
  for (std::size_t j = 0; j < states.size(); ++j) {
    if (states[j].is_string()) spec.labels.push_back(states[j].get<std::string>());
    else if (states[j].is_number()) spec.labels.push_back(states[j].dump());
    else throw SchemaError("states[" + std::to_string(j) + "]: expected a label");
  }
  const json& post = field(doc, "posteriors", "full_dist");
  if (!post.is_array() || post.empty()) throw SchemaError("posteriors: expected a nonempty array");
  for (std::size_t i = 0; i < post.size(); ++i) {
    const std::string at = "posteriors[" + std::to_string(i) + "]";
    std::vector<double> g = numbers(field(post[i], "vector", at), at + ".vector");
    if (g.size() != spec.labels.size()) {
      throw SchemaError(at + ".vector: has " + std::to_string(g.size()) + " entries for " +
                        std::to_string(spec.labels.size()) + " states");
    }
    normalize(g, at + ".vector", warnings);
    spec.posteriors.push_back(std::move(g));
    spec.probs.push_back(number(field(post[i], "prob", at), at + ".prob"));
  }
  normalize(spec.probs, "posteriors.prob", warnings);
  spec.bound = optional_bound(doc);
  return spec;
}

SignalModelSpec parse_signal(const json& doc, std::vector<std::string>& warnings) {
  SignalModelSpec spec;
  spec.theta_grid = points(field(doc, "theta_grid", "signal_model"), "theta_grid", std::nullopt);
  spec.prior = numbers(field(doc, "prior", "signal_model"), "prior");
  if (spec.prior.size() != spec.theta_grid.size()) throw SchemaError("prior: length differs from theta_grid");
  normalize(spec.prior, "prior", warnings);
  const json& lik = field(doc, "likelihood", "signal_model");
  if (!lik.is_array() || lik.size() != spec.theta_grid.size()) {
    throw SchemaError("likelihood: expected one row per theta_grid entry");
  }
  for (std::size_t k = 0; k < lik.size(); ++k) {
    const std::string at = "likelihood[" + std::to_string(k) + "]";
    std::vector<double> row = numbers(lik[k], at);
    if (!spec.likelihood.empty() && row.size() != spec.likelihood.front().size()) {
      throw SchemaError(at + ": row length differs from likelihood[0]");
    }
    normalize(row, at, warnings);
    spec.likelihood.push_back(std::move(row));
  }
  if (doc.contains("state_box")) {
    const json& box = doc["state_box"];
    std::vector<double> lo = numbers(field(box, "lower", "state_box"), "state_box.lower");
    std::vector<double> hi = numbers(field(box, "upper", "state_box"), "state_box.upper");
    if (lo.size() != spec.theta_grid.front().dim() || hi.size() != lo.size()) {
      throw SchemaError("state_box: dimension does not match theta_grid");
    }
    try {
      spec.state_box.emplace(std::move(lo), std::move(hi));
    } catch (const std::invalid_argument& e) {
      throw SchemaError(std::string("state_box: ") + e.what());
    }
  }
  spec.bound = optional_bound(doc);
  return spec;
}

json point_json(const Point& p) {
  if (p.dim() == 1) return p[0];
  return json(p.vec());
}

}  // namespace

LoadedInstance parse_instance(const json& doc) {
  LoadedInstance out;
  const json& kind = field(doc, "kind", "instance");
  if (!kind.is_string()) throw SchemaError("kind: expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "mean") out.spec = parse_mean(doc, out.warnings);
  else if (k == "full_dist") out.spec = parse_full(doc, out.warnings);
  else if (k == "signal_model") out.spec = parse_signal(doc, out.warnings);
  else throw SchemaError("kind: unknown instance kind '" + k + "'");
  return out;
}

LoadedInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return parse_instance(doc);
}

json to_json(const InstanceSpec& spec) {
  json doc;
  if (const auto* m = std::get_if<MeanSpec>(&spec)) {
    doc["kind"] = "mean";
    doc["dim"] = m->states.front().dim();
    doc["states"] = json::array();
    for (const Point& s : m->states) doc["states"].push_back(point_json(s));
    doc["means"] = json::array();
    for (std::size_t i = 0; i < m->means.size(); ++i) {
      doc["means"].push_back({{"point", point_json(m->means[i])}, {"prob", m->probs[i]}});
    }
    doc["bound"] = m->bound;
  } else if (const auto* f = std::get_if<FullDistSpec>(&spec)) {
    doc["kind"] = "full_dist";
    doc["states"] = f->labels;
    doc["posteriors"] = json::array();
    for (std::size_t i = 0; i < f->posteriors.size(); ++i) {
      doc["posteriors"].push_back({{"vector", f->posteriors[i]}, {"prob", f->probs[i]}});
    }
    doc["bound"] = f->bound;
  } else {
    const auto& s = std::get<SignalModelSpec>(spec);
    doc["kind"] = "signal_model";
    doc["theta_grid"] = json::array();
    for (const Point& t : s.theta_grid) doc["theta_grid"].push_back(point_json(t));
    doc["prior"] = s.prior;
    doc["likelihood"] = s.likelihood;
    if (s.state_box) {
      std::vector<double> lo, hi;
      for (std::size_t i = 0; i < s.state_box->dim(); ++i) {
        lo.push_back(s.state_box->lower(i));
        hi.push_back(s.state_box->upper(i));
      }
      doc["state_box"] = {{"lower", lo}, {"upper", hi}};
    }
    doc["bound"] = s.bound;
  }
  return doc;
}

void save_instance(const std::string& path, const InstanceSpec& spec) {
  std::ofstream out(path);
  if (!out) throw SchemaError(path + ": cannot write");
  out << to_json(spec).dump(2) << '\n';
}

const char* kind_name(const InstanceSpec& spec) {
  switch (spec.index()) {
    case 0: return "mean";
    case 1: return "full_dist";
    default: return "signal_model";
  }
}

namespace {

Box default_state_box(const std::vector<Point>& grid) {
  const Box unit = Box::unit(grid.front().dim());
  for (const Point& t : grid) {
    if (!unit.contains(t, tol::kFeasibility)) return Box::bounding(grid);
  }
  return unit;
}

// A belief over `states` with mean r, from convex weights.
std::optional<FiniteDistribution> belief_with_mean(const Point& r, const std::vector<Point>& states) {
  auto w = multi_dim::hull_weights(r, states);
  if (!w) return std::nullopt;
  double total = 0.0;
  for (double x : *w) total += x;
  for (double& x : *w) x /= total;
  return FiniteDistribution::merged(states, *w, 0.0);
}

}  // namespace

Prepared prepare(const InstanceSpec& spec) {
  if (const auto* m = std::get_if<MeanSpec>(&spec)) {
    Prepared p{m->states, FiniteDistribution::merged(m->means, m->probs, 0.0), Box::bounding(m->states),
               m->bound, std::nullopt, {}};
    for (const Point& r : p.means.support()) {
      if (auto b = belief_with_mean(r, p.states)) p.beliefs.push_back(std::move(*b));
    }
    return p;
  }
  if (const auto* f = std::get_if<FullDistSpec>(&spec)) {
    const full_dist::FullDistInstance inst(f->labels, f->posteriors, f->probs);
    multi_dim::MeanElicitInstance mi = full_dist::to_mean_instance(inst, f->bound);
    const std::size_t d = f->labels.size();
    std::vector<double> prior(d, 0.0);
    for (std::size_t i = 0; i < f->posteriors.size(); ++i) {
      for (std::size_t j = 0; j < d; ++j) prior[j] += f->probs[i] * f->posteriors[i][j];
    }
    Prepared p{mi.states(), mi.means(), Box::unit(d), f->bound,
               FiniteDistribution::merged(mi.states(), prior, 0.0), {}};
    for (const Point& g : p.means.support()) {
      p.beliefs.push_back(FiniteDistribution::merged(p.states, g.vec(), 0.0));
    }
    return p;
  }
  const auto& s = std::get<SignalModelSpec>(spec);
  const SignalModel model(s.theta_grid, s.prior, s.likelihood);
  const Box box = s.state_box ? *s.state_box : default_state_box(s.theta_grid);
  for (const Point& t : s.theta_grid) {
    if (!box.contains(t, tol::kFeasibility)) throw SchemaError("theta_grid: point outside state_box");
  }
  Prepared p{box.corners(), posterior_mean_distribution(model), box, s.bound, model.prior_distribution(), {}};
  for (std::size_t sig = 0; sig < model.num_signals(); ++sig) {
    try {
      p.beliefs.push_back(posterior(model, sig));
    } catch (const DomainError&) {
      // zero-probability signal
    }
  }
  return p;
}

multi_dim::MeanElicitInstance mean_instance(const Prepared& p) {
  return multi_dim::MeanElicitInstance(p.states, p.means, p.bound);
}

}  // namespace optscore::cli
