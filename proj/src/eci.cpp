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

#include "frugal/eci.hpp"

#include <algorithm>
#include <cmath>

#include "frugal/error.hpp"

namespace frugal {

double eci1(const LearnerState& s) {
  if (!s.tried) throw Error("eci1 of an untried learner; use its bootstrap value");
  return std::max(s.K0 - s.K1, s.K1 - s.K2);
}

double eci2(const LearnerState& s, double c) {
  if (s.at_full_size()) return kInfinity;
  return c * s.last_cost;
}

EciEstimate eci(const LearnerState& s, double overall_best, double c, double gap_factor) {
  EciEstimate e;
  if (!s.tried) {
    e.eci1 = e.eci = s.bootstrap_eci;
    e.eci2 = kInfinity;
    return e;
  }
  e.eci1 = eci1(s);
  e.eci2 = eci2(s, c);
  double delta = s.delta;
  e.tau = s.K0 - s.K2;
  if (delta == 0) {
    delta = s.best_error;
    e.tau = s.K0;
  }
  e.v = e.tau > 0 ? delta / e.tau : kInfinity;
  const double gap = std::max(0.0, s.best_error - overall_best);
  double gap_cost = 0;
  if (gap > 0) gap_cost = e.v > 0 ? gap_factor * gap / e.v : kInfinity;
  e.eci = std::max(gap_cost, std::min(e.eci1, e.eci2));
  return e;
}

bool record_trial(LearnerState& s, double error, double cost, bool incumbent_trial) {
  s.K0 += cost;
  const bool improved = error < s.best_error;
  if (improved) {
    s.delta = s.tried ? s.best_error - error : 0.0;
    s.K2 = s.K1;
    s.K1 = s.K0;
    s.best_error = error;
  }
  if (improved || incumbent_trial) s.last_cost = cost;
  s.tried = true;
  return improved;
}

void bootstrap_untried(std::vector<LearnerState>& states, double smallest_cost) {
  if (states.empty()) return;
  const auto fastest = std::min_element(
      states.begin(), states.end(),
      [](const auto& a, const auto& b) { return a.cost_constant < b.cost_constant; });
  if (!fastest->tried) {
    throw Error("bootstrap needs the fastest learner's first trial cost");
  }
  for (auto& s : states) {
    if (!s.tried) s.bootstrap_eci = s.cost_constant * smallest_cost;
  }
}

Eigen::VectorXd selection_probabilities(const std::vector<double>& ecis,
                                        const std::vector<bool>& active) {
  if (ecis.size() != active.size()) throw Error("selection: size mismatch");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ecis.size()));
  for (std::size_t i = 0; i < ecis.size(); ++i) {
    if (active[i]) w(static_cast<Eigen::Index>(i)) = 1.0 / std::max(ecis[i], kEciFloor);
  }
  const double total = w.sum();
  if (total <= 0) throw Error("no active learner to sample");
  return w / total;
}

std::size_t sample_learner(const std::vector<double>& ecis, const std::vector<bool>& active,
                           Rng& rng) {
  const auto p = selection_probabilities(ecis, active);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  double cumulative = 0;
  std::size_t last_active = 0;
  for (std::size_t i = 0; i < ecis.size(); ++i) {
    if (!active[i]) continue;
    last_active = i;
    cumulative += p(static_cast<Eigen::Index>(i));
    if (u < cumulative) return i;
  }
  return last_active;
}

double expected_eci(const std::vector<double>& ecis) {
  if (ecis.empty()) throw Error("expected ECI of an empty set");
  // Extended precision so the result is the correctly rounded expectation.
  long double weight_total = 0;
  for (double e : ecis) weight_total += 1.0L / std::max(e, kEciFloor);
  long double expectation = 0;
  for (double e : ecis) {
    const long double floored = std::max(e, kEciFloor);
    expectation += (1.0L / floored) / weight_total * floored;
  }
  return static_cast<double>(expectation);
}

}  // namespace frugal
