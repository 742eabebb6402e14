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

#include <limits>
#include <vector>

#include "frugal/rng.hpp"

namespace frugal {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Cost bookkeeping for one learner, in seconds (wall-clock in real mode,
/// synthetic in surrogate mode).
struct LearnerState {
  double K0 = 0;  ///< total cost spent on the learner
  double K1 = 0;  ///< K0 at the most recent best-error update
  double K2 = 0;  ///< K0 at the update before that
  double delta = 0;  ///< error reduction between those two updates
  double best_error = kInfinity;
  double last_cost = 0;  ///< latest trial cost of the incumbent configuration
  double cost_constant = 1;
  long sample_size = 0;
  long full_size = 0;
  bool tried = false;
  /// Bootstrapped ECI1 for an untried learner (0 until assigned).
  double bootstrap_eci = 0;

  bool at_full_size() const { return sample_size >= full_size; }
};

struct EciEstimate {
  double eci1 = 0;
  double eci2 = 0;
  double eci = 0;
  double v = 0;    ///< efficiency of improvement delta / tau
  double tau = 0;  ///< cost attributed to delta
};

inline constexpr double kEciFloor = 1e-6;
inline constexpr double kDefaultGapFactor = 2.0;
inline constexpr double kDefaultSampleFactor = 2.0;

/// Cost to improve at the current sample size: max(K0 - K1, K1 - K2).
double eci1(const LearnerState& s);

/// Cost to retry the incumbent with `c` times the sample: c * last_cost, or
/// +inf once the sample is the full data.
double eci2(const LearnerState& s, double c);

/// Estimated cost for the learner to beat the best error over all learners.
/// A learner that is not the best must first close the gap
/// (best_error - overall_best) at its observed efficiency; that cost is
/// scaled by `gap_factor`. Untried learners return their bootstrap value.
EciEstimate eci(const LearnerState& s, double overall_best, double c,
                double gap_factor = kDefaultGapFactor);

/// Records one finished trial. `error` updates the learner's best when it is
/// strictly lower; returns whether it did. `incumbent_trial` marks trials
/// whose configuration is (or becomes) the learner's current configuration,
/// which refreshes last_cost.
bool record_trial(LearnerState& s, double error, double cost, bool incumbent_trial);

/// Gives each untried learner ECI1 = cost_constant * smallest_cost, where
/// `smallest_cost` is the first trial cost of the fastest learner. Throws
/// Error unless the fastest (lowest cost_constant) learner has been tried.
void bootstrap_untried(std::vector<LearnerState>& states, double smallest_cost);

/// Selection probabilities proportional to 1 / max(eci, kEciFloor) over the
/// active entries; inactive entries get 0. Throws Error when none is active.
Eigen::VectorXd selection_probabilities(const std::vector<double>& ecis,
                                        const std::vector<bool>& active);

/// Draws an index with selection_probabilities().
std::size_t sample_learner(const std::vector<double>& ecis, const std::vector<bool>& active,
                           Rng& rng);

/// Expected ECI under the sampling distribution, sum_l p_l * eci_l.
double expected_eci(const std::vector<double>& ecis);

}  // namespace frugal
