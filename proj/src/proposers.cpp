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

#include "frugal/proposers.hpp"

#include <algorithm>
#include <cmath>

#include "frugal/error.hpp"

namespace frugal {

bool use_cross_validation(long n_instances, double rows_times_features_per_hour) {
  return n_instances < kCvInstanceLimit && rows_times_features_per_hour < kCvRateLimitPerHour;
}

ResamplingPlan choose_resampling(const BudgetContext& ctx) {
  if (!(ctx.budget_secs > 0) || ctx.n_instances <= 0 || ctx.n_features <= 0) {
    throw Error("resampling rule needs a positive budget, row count and feature count");
  }
  const double hours = ctx.budget_secs / 3600.0;
  const double rate = static_cast<double>(ctx.n_instances) * static_cast<double>(ctx.n_features) / hours;
  if (use_cross_validation(ctx.n_instances, rate)) return ResamplingPlan::cv();
  return ResamplingPlan::holdout();
}

StepKind choose_step(const LearnerState& s, double c) {
  if (s.at_full_size()) return StepKind::kNewConfig;
  return eci1(s) >= eci2(s, c) ? StepKind::kIncreaseSample : StepKind::kNewConfig;
}

long next_sample_size(const LearnerState& s, double c, long full) {
  const double grown = std::floor(c * static_cast<double>(s.sample_size));
  return std::min(full, std::max(s.sample_size + 1, static_cast<long>(grown)));
}

long initial_sample_size(long full, long min_sample) {
  return std::min(full, min_sample);
}

}  // namespace frugal
