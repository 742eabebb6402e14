// Copyright 2026 The frugalml Authors.
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

#include "frugal/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include <json.hpp>

#include "frugal/error.hpp"
#include "frugal/proposers.hpp"
#include "frugal/rng.hpp"

namespace frugal {

SurrogateLandscape SurrogateLandscape::default_suite(long full_size) {
  SurrogateLandscape l;
  l.full_size = full_size;
  SurrogateArm cheap;
  cheap.name = "cheap";
  cheap.base = 0.20;
  cheap.curvature = 0.1;
  cheap.bias = 0.10;
  cheap.variance = 0.02;
  cheap.unit_cost = 1e-5;
  cheap.complexity_cost = 9;
  cheap.cost_constant = 1;
  cheap.optimum = Eigen::Vector2d(0.8, 0.3);
  SurrogateArm strong;
  strong.name = "strong";
  strong.base = 0.12;
  strong.curvature = 0.1;
  strong.bias = 0.15;
  strong.variance = 0.02;
  strong.unit_cost = 4e-5;
  strong.complexity_cost = 9;
  strong.cost_constant = 4;
  strong.optimum = Eigen::Vector3d(0.2, 0.7, 0.6);
  l.arms = {cheap, strong};
  return l;
}

const SurrogateArm& SurrogateLandscape::arm(std::string_view name) const {
  for (const auto& a : arms) {
    if (a.name == name) return a;
  }
  throw Error("unknown surrogate learner '" + std::string(name) + "'");
}

std::vector<Arm> SurrogateLandscape::search_arms() const {
  std::vector<Arm> out;
  for (const auto& a : arms) {
    std::vector<Dim> dims{Dim::real("complexity", 0, 1, Scale::kLinear, 0, true)};
    for (Eigen::Index i = 0; i < a.optimum.size(); ++i) {
      dims.push_back(Dim::real("x" + std::to_string(i + 1), 0, 1, Scale::kLinear, a.init));
    }
    out.push_back({a.name, SearchSpace(std::move(dims)), a.cost_constant});
  }
  return out;
}

double SurrogateLandscape::optimal_complexity(const SurrogateArm& a, long s) const {
  const double ratio = std::sqrt(static_cast<double>(full_size) / static_cast<double>(s));
  return std::clamp(1.0 - a.variance * ratio / (2.0 * a.bias), 0.0, 1.0);
}

double SurrogateLandscape::minimal_error(const SurrogateArm& a, long s) const {
  LearningConfiguration c{a.name, {}, s, ResamplingPlan::holdout()};
  c.h["complexity"] = optimal_complexity(a, s);
  for (Eigen::Index i = 0; i < a.optimum.size(); ++i) c.h["x" + std::to_string(i + 1)] = a.optimum(i);
  return evaluate(c).error;
}

TrialOutcome SurrogateLandscape::evaluate(const LearningConfiguration& config) const {
  const auto& a = arm(config.learner);
  if (config.s < 1 || config.s > full_size) throw Error("surrogate: sample size out of range");
  const auto value = [&](const std::string& key) {
    const auto it = config.h.find(key);
    if (it == config.h.end()) throw Error("surrogate: configuration lacks '" + key + "'");
    return it->second;
  };
  const double c = value("complexity");
  const double s = static_cast<double>(config.s);
  const double full = static_cast<double>(full_size);

  double error = a.base + a.bias * (1 - c) * (1 - c) + a.variance * c * std::sqrt(full / s) +
                 a.sample_penalty * (1 - s / full);
  for (Eigen::Index i = 0; i < a.optimum.size(); ++i) {
    const double d = value("x" + std::to_string(i + 1)) - a.optimum(i);
    error += a.curvature * d * d;
  }
  if (noise > 0) {
    // Deterministic in (configuration, s): hash the exact bit patterns.
    std::uint64_t h = mix_seed(noise_seed, static_cast<std::uint64_t>(Stream::kSurrogateNoise),
                               static_cast<std::uint64_t>(config.s));
    for (const auto& [k, v] : config.h) {
      std::uint64_t bits = 0;
      static_assert(sizeof(bits) == sizeof(v));
      std::memcpy(&bits, &v, sizeof(bits));
      h = mix_seed(h, bits, k.size());
    }
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    const double amplitude = config.r.is_cv() ? noise / std::sqrt(config.r.k) : noise;
    error += amplitude * (2 * u - 1);
  }

  double cost = a.unit_cost * s * (1 + a.complexity_cost * c);
  if (config.r.is_cv()) cost *= cv_cost_factor(config.r);
  return {error, cost};
}

double cv_cost_factor(const ResamplingPlan& cv, double rho) {
  return static_cast<double>(cv.k - 1) / (1.0 - rho);
}

std::string_view to_string(Policy policy) {
  switch (policy) {
    case Policy::kFrugal: return "frugal";
    case Policy::kRoundRobin: return "roundrobin";
    case Policy::kFullData: return "fulldata";
    case Policy::kCv: return "cv";
    case Policy::kRandom: return "random";
  }
  return "unknown";
}

Policy parse_policy(std::string_view name) {
  for (auto p : {Policy::kFrugal, Policy::kRoundRobin, Policy::kFullData, Policy::kCv,
                 Policy::kRandom}) {
    if (to_string(p) == name) return p;
  }
  throw Error("unknown policy '" + std::string(name) + "'");
}

SearchResult surrogate_search(Policy policy, const SurrogateLandscape& landscape,
                              double budget_secs, std::uint64_t seed, SearchOptions options) {
  options.budget_secs = budget_secs;
  options.seed = seed;
  options.synthetic_clock = true;
  ResamplingPlan plan = choose_resampling({budget_secs, landscape.full_size, landscape.n_features});
  switch (policy) {
    case Policy::kFrugal: break;
    case Policy::kRoundRobin: options.learner_policy = LearnerPolicy::kRoundRobin; break;
    case Policy::kFullData: options.full_data = true; break;
    case Policy::kCv: plan = ResamplingPlan::cv(); break;
    case Policy::kRandom: options.learner_policy = LearnerPolicy::kUniform; break;
  }
  if (plan.is_cv()) options.full_data = true;
  const auto arms = landscape.search_arms();
  const TrialRunner runner = [&](const LearningConfiguration& c) { return landscape.evaluate(c); };
  return run_search(arms, landscape.full_size, plan, runner, options);
}

AnytimeCurve anytime_curve(const SearchResult& result) {
  AnytimeCurve curve;
  double best = kInfinity;
  for (const auto& t : result.trials) {
    best = std::min(best, t.validation_error);
    curve.emplace_back(t.elapsed, best);
  }
  return curve;
}

AnytimeCurve replay(Policy policy, const SurrogateLandscape& landscape, double budget_secs,
                    std::uint64_t seed) {
  return anytime_curve(surrogate_search(policy, landscape, budget_secs, seed));
}

double best_error_at(const AnytimeCurve& curve, double t) {
  const auto it = std::upper_bound(curve.begin(), curve.end(), t,
                                   [](double v, const auto& point) { return v < point.first; });
  if (it == curve.begin()) return kInfinity;
  return std::prev(it)->second;
}

SurrogateLandscape landscape_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SurrogateLandscape l = SurrogateLandscape::default_suite(j.value("full_size", 1'000'000L));
  l.n_features = j.value("n_features", l.n_features);
  l.noise = j.value("noise", l.noise);
  l.noise_seed = j.value("noise_seed", l.noise_seed);
  if (j.contains("arms")) {
    l.arms.clear();
    for (const auto& a : j.at("arms")) {
      SurrogateArm arm;
      arm.name = a.at("name").get<std::string>();
      arm.base = a.value("base", arm.base);
      arm.curvature = a.value("curvature", arm.curvature);
      arm.bias = a.value("bias", arm.bias);
      arm.variance = a.value("variance", arm.variance);
      arm.sample_penalty = a.value("sample_penalty", arm.sample_penalty);
      arm.unit_cost = a.value("unit_cost", arm.unit_cost);
      arm.complexity_cost = a.value("complexity_cost", arm.complexity_cost);
      arm.cost_constant = a.value("cost_constant", arm.cost_constant);
      arm.init = a.value("init", arm.init);
      const auto opt = a.value("optimum", std::vector<double>{0.5});
      arm.optimum = Eigen::Map<const Eigen::VectorXd>(opt.data(), static_cast<Eigen::Index>(opt.size()));
      if (!(arm.unit_cost > 0) || !(arm.cost_constant > 0) || !(arm.bias > 0)) {
        throw Error("surrogate arm '" + arm.name + "' needs positive unit_cost, cost_constant and bias");
      }
      l.arms.push_back(std::move(arm));
    }
  }
  if (l.arms.empty()) throw Error("surrogate landscape has no arms");
  if (l.full_size < 1) throw Error("surrogate full_size must be positive");
  return l;
}

}  // namespace frugal
