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

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frugal/controller.hpp"

namespace frugal {

/// Synthetic learner whose error and cost are closed-form in a unit-cube
/// configuration x and sample size s. Coordinate x[0] is model complexity.
///
///   error = base + curvature * sum_{i>0} (x_i - optimum_i)^2
///         + bias * (1 - x_0)^2 + variance * x_0 * sqrt(full / s)
///         + sample_penalty * (1 - s / full)
///   cost  = unit_cost * s * (1 + complexity_cost * x_0)     (holdout)
///
/// Error never increases with s, and the complexity minimizing it,
/// 1 - variance * sqrt(full / s) / (2 * bias), grows with s.
struct SurrogateArm {
  std::string name;
  double base = 0.2;
  double curvature = 0.1;
  double bias = 0.1;
  double variance = 0.02;
  double sample_penalty = 0.02;
  double unit_cost = 1e-5;
  double complexity_cost = 9;
  double cost_constant = 1;
  /// Optimum of coordinates 1..d-1; the dimensionality is 1 + optimum.size().
  Eigen::VectorXd optimum;
  /// Initial value of coordinates 1..d-1 (complexity starts at 0).
  double init = 0.5;

  Eigen::Index dimension() const { return 1 + optimum.size(); }
};

struct SurrogateLandscape {
  std::vector<SurrogateArm> arms;
  long full_size = 1'000'000;
  /// Nominal feature count fed to the resampling rule.
  long n_features = 20;
  /// Amplitude of a deterministic per-configuration perturbation (0 = off).
  double noise = 0;
  std::uint64_t noise_seed = 0;

  /// Two arms: a cheap mediocre one and an expensive strong one.
  static SurrogateLandscape default_suite(long full_size = 1'000'000);

  const SurrogateArm& arm(std::string_view name) const;
  std::vector<Arm> search_arms() const;

  /// Error-minimizing complexity coordinate at sample size s.
  double optimal_complexity(const SurrogateArm& arm, long s) const;
  /// Lowest error reachable by `arm` at sample size s.
  double minimal_error(const SurrogateArm& arm, long s) const;

  TrialOutcome evaluate(const LearningConfiguration& config) const;
};

/// Cost multiplier of k-fold cross-validation over a holdout of ratio rho.
double cv_cost_factor(const ResamplingPlan& cv, double rho = 0.1);

enum class Policy { kFrugal, kRoundRobin, kFullData, kCv, kRandom };

std::string_view to_string(Policy policy);
Policy parse_policy(std::string_view name);

/// Surrogate search with one ablation applied: round-robin learner rotation,
/// full-data trials, cross-validation for every trial, or uniform learner
/// choice. Elapsed time advances by synthetic cost only.
SearchResult surrogate_search(Policy policy, const SurrogateLandscape& landscape,
                              double budget_secs, std::uint64_t seed,
                              SearchOptions base = {});

/// (elapsed, best error so far) after each trial.
using AnytimeCurve = std::vector<std::pair<double, double>>;

AnytimeCurve anytime_curve(const SearchResult& result);
AnytimeCurve replay(Policy policy, const SurrogateLandscape& landscape, double budget_secs,
                    std::uint64_t seed);

/// Best error reached by time t (+inf before the first trial ends).
double best_error_at(const AnytimeCurve& curve, double t);

/// Surrogate landscape from JSON: {"full_size": .., "n_features": ..,
/// "noise": .., "arms": [{"name": .., "base": .., "optimum": [..], ...}]}.
/// Missing keys keep their defaults.
SurrogateLandscape landscape_from_json(const std::string& text);

}  // namespace frugal
