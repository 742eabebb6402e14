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
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "frugal/dataset.hpp"
#include "frugal/eci.hpp"
#include "frugal/learners.hpp"
#include "frugal/metrics.hpp"
#include "frugal/space.hpp"

namespace frugal {

/// One trial's choice of learner, hyperparameters, sample size and
/// resampling strategy.
struct LearningConfiguration {
  std::string learner;
  Assignment h;
  long s = 0;
  ResamplingPlan r;

  bool operator==(const LearningConfiguration&) const = default;
};

struct TrialRecord {
  long index = 0;
  double elapsed = 0;  ///< seconds since the search started, at trial end
  LearningConfiguration config;
  double validation_error = 0;
  double cost = 0;
  bool improved = false;  ///< strictly lowered the best error over all trials
  std::optional<double> test_error;
  std::optional<EciEstimate> eci;  ///< estimate that drove this decision

  bool operator==(const TrialRecord&) const;
};

/// A learner as the search sees it.
struct Arm {
  std::string name;
  SearchSpace space;
  double cost_constant = 1;
};

enum class LearnerPolicy { kEci, kRoundRobin, kUniform };

struct SearchOptions {
  double budget_secs = 60;
  std::uint64_t seed = 0;
  LearnerPolicy learner_policy = LearnerPolicy::kEci;
  /// Pin every trial to the full sample size.
  bool full_data = false;
  long min_sample = 10'000;
  double sample_factor = kDefaultSampleFactor;
  double gap_factor = kDefaultGapFactor;
  /// Automatic restarts per learner after its search converges at full size.
  int max_restarts = 1;
  std::optional<long> max_trials;
  /// Advance time by trial cost instead of reading the wall clock.
  bool synthetic_clock = false;
};

using TrialRunner = std::function<TrialOutcome(const LearningConfiguration&)>;

struct SearchResult {
  std::vector<TrialRecord> trials;
  std::optional<std::size_t> best_index;
  double elapsed = 0;
  std::string stop_reason;
  std::vector<std::string> warnings;
};

/// Runs the search loop: the fastest arm's initial configuration first, then
/// repeatedly pick an arm, choose between a larger sample and a new
/// configuration, execute one trial and update the bookkeeping, until the
/// budget is spent or every arm has converged with no restarts left.
/// `full_size` is the largest sample a trial can use; `plan` is fixed for all
/// trials.
SearchResult run_search(const std::vector<Arm>& arms, long full_size, const ResamplingPlan& plan,
                        const TrialRunner& runner, const SearchOptions& options);

struct FitOptions {
  SearchOptions search;
  std::optional<Metric> metric;  ///< default_metric(task) when empty
  std::vector<std::string> learners;  ///< all supporting the task when empty
  std::optional<ResamplingPlan> resample;  ///< overrides the automatic rule
  /// Per learner, per dimension.
  std::map<std::string, std::map<std::string, DimOverride>> space_overrides;
};

struct FitResult {
  Task task = Task::kRegression;
  LearningConfiguration best_config;
  std::shared_ptr<const Model> best_model;  ///< retrained on all training rows
  double best_validation_error = kInfinity;
  std::vector<TrialRecord> trials;
  std::vector<std::string> warnings;
  std::string stop_reason;
  double elapsed = 0;
};

/// Searches learners and hyperparameters for `data` within the budget.
FitResult fit(const Dataset& data, const LearnerRegistry& registry, const FitOptions& options);

/// Predictions of the best model; see Model::predict.
Eigen::MatrixXd predict(const FitResult& result, const Eigen::MatrixXd& features);

/// Trial log: one JSON object per line, keys in a fixed order.
std::string to_json_line(const TrialRecord& record);
TrialRecord parse_json_line(const std::string& line);
void write_log(const std::vector<TrialRecord>& trials, const std::filesystem::path& path);
std::vector<TrialRecord> read_log(const std::filesystem::path& path);

}  // namespace frugal
