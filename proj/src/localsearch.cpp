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

#include "frugal/localsearch.hpp"

#include <algorithm>
#include <cmath>

#include "frugal/error.hpp"

namespace frugal {

LocalSearch::LocalSearch(Eigen::VectorXd start, std::uint64_t seed)
    : center_(project(start)), stepsize_(0), rng_(seed) {
  if (center_.size() < 1) throw Error("local search needs at least one dimension");
  stepsize_ = initial_stepsize();
}

double LocalSearch::initial_stepsize() const {
  return std::sqrt(static_cast<double>(dimension()));
}

double LocalSearch::stepsize_lower_bound() const {
  return initial_stepsize() / kLowerBoundDivisor;
}

double LocalSearch::patience() const {
  return std::ldexp(1.0, static_cast<int>(dimension()) - 1);
}

Eigen::VectorXd LocalSearch::random_direction(Eigen::Index d, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd u(d);
  double norm = 0;
  do {
    for (Eigen::Index i = 0; i < d; ++i) u(i) = normal(rng);
    norm = u.norm();
  } while (norm < 1e-12);
  return u / norm;
}

Eigen::VectorXd LocalSearch::project(const Eigen::VectorXd& point) {
  return point.cwiseMax(0.0).cwiseMin(1.0);
}

Eigen::VectorXd LocalSearch::propose() {
  if (converged_) throw Error("local search has converged; restart before proposing");
  Eigen::VectorXd candidate;
  if (retry_opposite_ && direction_) {
    candidate = project(center_ - stepsize_ * *direction_);
    tried_opposite_ = true;
    retry_opposite_ = false;
  } else {
    direction_ = random_direction(dimension(), rng_);
    tried_opposite_ = false;
    retry_opposite_ = false;
    candidate = project(center_ + stepsize_ * *direction_);
  }
  last_candidate_ = candidate;
  return candidate;
}

void LocalSearch::report(const Eigen::VectorXd& candidate, bool improved) {
  if (!last_candidate_ || candidate.size() != last_candidate_->size() ||
      candidate != *last_candidate_) {
    throw Error("local search report does not match the last proposal");
  }
  last_candidate_.reset();
  ++iters_since_restart_;
  if (improved) {
    center_ = candidate;
    direction_.reset();
    tried_opposite_ = false;
    retry_opposite_ = false;
    no_improve_count_ = 0;
    iter_of_best_ = iters_since_restart_;
    return;
  }
  if (!tried_opposite_) {
    retry_opposite_ = true;
    return;
  }
  direction_.reset();
  tried_opposite_ = false;
  ++no_improve_count_;
  if (!adjustment_enabled_ || static_cast<double>(no_improve_count_) <= patience()) return;

  const double ratio =
      std::max(kMinReductionRatio, static_cast<double>(iters_since_restart_) /
                                       static_cast<double>(std::max(1, iter_of_best_)));
  stepsize_ /= ratio;
  if (stepsize_ < stepsize_lower_bound()) converged_ = true;
}

void LocalSearch::restart() {
  if (!converged_) throw Error("local search restart requested before convergence");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (Eigen::Index i = 0; i < dimension(); ++i) center_(i) = unit(rng_);
  stepsize_ = initial_stepsize();
  direction_.reset();
  last_candidate_.reset();
  tried_opposite_ = false;
  retry_opposite_ = false;
  no_improve_count_ = 0;
  iters_since_restart_ = 0;
  iter_of_best_ = 0;
  converged_ = false;
}

}  // namespace frugal
