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
#include <optional>

#include "frugal/rng.hpp"

namespace frugal {

/// Randomized direct search over [0, 1]^d.
///
/// Each iteration steps from the incumbent along a random unit direction; if
/// that fails to improve, the opposite direction is tried next. After more
/// than 2^(d-1) consecutive failed direction pairs the stepsize is divided by
/// the ratio of iterations since restart to the iteration that found the
/// incumbent. Once the stepsize drops below sqrt(d) / 2^10 the search has
/// converged and needs a restart. Decay and convergence only happen while
/// adjustment is enabled.
class LocalSearch {
 public:
  static constexpr double kMinReductionRatio = 1.1;
  static constexpr double kLowerBoundDivisor = 1024.0;

  LocalSearch(Eigen::VectorXd start, std::uint64_t seed);

  /// Next candidate point. Throws Error when converged.
  Eigen::VectorXd propose();

  /// Outcome of the candidate returned by the last propose().
  void report(const Eigen::VectorXd& candidate, bool improved);

  /// Uniform random center, stepsize sqrt(d), counters cleared. Throws Error
  /// unless converged.
  void restart();

  void set_adjustment_enabled(bool enabled) { adjustment_enabled_ = enabled; }
  bool adjustment_enabled() const { return adjustment_enabled_; }

  Eigen::Index dimension() const { return center_.size(); }
  const Eigen::VectorXd& center() const { return center_; }
  double stepsize() const { return stepsize_; }
  double initial_stepsize() const;
  double stepsize_lower_bound() const;
  bool converged() const { return converged_; }
  int no_improve_count() const { return no_improve_count_; }
  int iters_since_restart() const { return iters_since_restart_; }
  int iter_of_best_since_restart() const { return iter_of_best_; }
  /// Direction of the outstanding proposal, if any.
  const std::optional<Eigen::VectorXd>& pending_direction() const { return direction_; }
  bool tried_opposite() const { return tried_opposite_; }
  /// Number of failed pairs that triggers a stepsize decay: 2^(d-1).
  double patience() const;

  /// Uniform draw on the unit sphere S^(d-1).
  static Eigen::VectorXd random_direction(Eigen::Index d, Rng& rng);
  /// Componentwise clamp onto [0, 1]^d.
  static Eigen::VectorXd project(const Eigen::VectorXd& point);

 private:
  Eigen::VectorXd center_;
  double stepsize_;
  std::optional<Eigen::VectorXd> direction_;
  bool tried_opposite_ = false;
  bool retry_opposite_ = false;
  std::optional<Eigen::VectorXd> last_candidate_;
  int no_improve_count_ = 0;
  int iters_since_restart_ = 0;
  int iter_of_best_ = 0;
  bool converged_ = false;
  bool adjustment_enabled_ = true;
  Rng rng_;
};

}  // namespace frugal
