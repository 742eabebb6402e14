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

#include "frugal/dataset.hpp"
#include "frugal/eci.hpp"

namespace frugal {

/// Inputs of the resampling rule.
struct BudgetContext {
  double budget_secs = 0;
  long n_instances = 0;
  long n_features = 0;
};

inline constexpr long kCvInstanceLimit = 100'000;
inline constexpr double kCvRateLimitPerHour = 10'000'000.0;
inline constexpr long kInitialSampleSize = 10'000;

/// Cross-validation (k = 5) when the data has fewer than 100K rows and
/// rows * features per budget hour is below 10M; holdout (rho = 0.1)
/// otherwise. Both comparisons are strict.
/// The threshold rule itself: cross-validation only when both the row count
/// and the data rate per budget hour are strictly below their limits.
bool use_cross_validation(long n_instances, double rows_times_features_per_hour);

ResamplingPlan choose_resampling(const BudgetContext& ctx);

enum class StepKind { kIncreaseSample, kNewConfig };

/// IncreaseSample when ECI1 >= ECI2 and the sample is below the full size.
StepKind choose_step(const LearnerState& s, double c);

/// min(c * sample_size, full).
long next_sample_size(const LearnerState& s, double c, long full);

/// min(min_sample, full); also the size a restarted learner returns to.
long initial_sample_size(long full, long min_sample = kInitialSampleSize);

}  // namespace frugal
