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

#include <doctest.h>

#include <cmath>

#include "frugal/error.hpp"
#include "frugal/localsearch.hpp"

using namespace frugal;

namespace {

void fail_pair(LocalSearch& ls) {
  ls.report(ls.propose(), false);
  ls.report(ls.propose(), false);
}

}  // namespace

TEST_CASE("one-dimensional directions are plus or minus one") {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto u = LocalSearch::random_direction(1, rng);
    CHECK(std::abs(u(0)) == 1.0);
  }
}

TEST_CASE("directions have unit norm") {
  Rng rng(2);
  for (Eigen::Index d = 1; d <= 12; ++d) {
    for (int i = 0; i < 50; ++i) {
      CHECK(std::abs(LocalSearch::random_direction(d, rng).norm() - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("initial step is the square root of the dimension") {
  LocalSearch ls(Eigen::VectorXd::Constant(9, 0.5), 3);
  CHECK(ls.stepsize() == 3.0);
  CHECK(ls.stepsize_lower_bound() == doctest::Approx(3.0 / 1024));
  CHECK(ls.patience() == 256);
  // Candidates are at most one step away (boundary projection only shortens).
  for (int i = 0; i < 20; ++i) {
    const auto c = ls.propose();
    CHECK((c - ls.center()).norm() <= 3.0 + 1e-12);
    CHECK((c.array() >= 0).all());
    CHECK((c.array() <= 1).all());
    ls.report(c, false);
  }
  // Interior center with a small step: the distance is exactly the step.
  LocalSearch small(Eigen::VectorXd::Constant(1, 0.5), 4);
  const auto c = small.propose();
  CHECK(std::abs(c(0) - 0.5) == doctest::Approx(0.5));
}

TEST_CASE("a failed proposal is followed by its reflection") {
  Eigen::VectorXd start(3);
  start << 0.5, 0.5, 0.5;
  LocalSearch ls(start, 5);
  ls.report(ls.propose(), true);  // move the center somewhere first
  const Eigen::VectorXd center = ls.center();
  const auto first = ls.propose();
  const Eigen::VectorXd u = *ls.pending_direction();
  CHECK_FALSE(ls.tried_opposite());
  ls.report(first, false);
  const auto second = ls.propose();
  CHECK(ls.tried_opposite());
  CHECK(second.isApprox(LocalSearch::project(center - ls.stepsize() * u)));
  ls.report(second, false);
  CHECK_FALSE(ls.pending_direction().has_value());
  CHECK(ls.no_improve_count() == 1);
}

TEST_CASE("one-dimensional counter trace") {
  LocalSearch ls(Eigen::VectorXd::Constant(1, 0.5), 6);
  fail_pair(ls);
  CHECK(ls.no_improve_count() == 1);
  CHECK(ls.stepsize() == 1.0);  // 1 > 2^0 is false
  fail_pair(ls);
  CHECK(ls.no_improve_count() == 2);
  CHECK(ls.stepsize() < 1.0);  // 2 > 1 triggers decay
}

TEST_CASE("reduction ratio is iterations since restart over iteration of best") {
  LocalSearch ls(Eigen::VectorXd::Constant(1, 0.5), 7);
  fail_pair(ls);                   // iterations 1, 2
  ls.report(ls.propose(), false);  // 3
  ls.report(ls.propose(), true);   // 4: best found here
  CHECK(ls.iter_of_best_since_restart() == 4);
  CHECK(ls.no_improve_count() == 0);
  fail_pair(ls);  // 6: count 1
  fail_pair(ls);  // 8: count 2, ratio 8 / 4 = 2
  CHECK(ls.stepsize() == doctest::Approx(0.5));
  fail_pair(ls);  // 10: ratio 10 / 4 = 2.5
  CHECK(ls.iters_since_restart() == 10);
  CHECK(ls.stepsize() == doctest::Approx(0.2));
  // The same ratio applied to the d = 9 initial step of 3.0 gives 1.2.
  CHECK(3.0 / 2.5 == doctest::Approx(1.2));
}

TEST_CASE("ratio is clamped so decay always progresses") {
  LocalSearch ls(Eigen::VectorXd::Constant(1, 0.5), 8);
  ls.set_adjustment_enabled(false);
  for (int i = 0; i < 99; ++i) ls.report(ls.propose(), false);
  ls.report(ls.propose(), true);  // best at iteration 100
  ls.set_adjustment_enabled(true);
  fail_pair(ls);
  fail_pair(ls);  // decay at iteration 104: ratio 1.04 is raised to 1.1
  CHECK(ls.stepsize() == doctest::Approx(1.0 / 1.1));
}

TEST_CASE("improvement resets the counter regardless of history") {
  LocalSearch ls(Eigen::VectorXd::Constant(4, 0.5), 9);
  for (int i = 0; i < 5; ++i) fail_pair(ls);
  CHECK(ls.no_improve_count() == 5);
  ls.report(ls.propose(), true);
  CHECK(ls.no_improve_count() == 0);
}

TEST_CASE("report must match the pending proposal") {
  LocalSearch ls(Eigen::VectorXd::Constant(2, 0.5), 10);
  CHECK_THROWS_AS(ls.report(Eigen::VectorXd::Constant(2, 0.1), false), Error);
  const auto c = ls.propose();
  CHECK_THROWS_AS(ls.report(c.array() + 0.01, false), Error);
}

TEST_CASE("gating freezes the stepsize and keeps center and pending") {
  LocalSearch ls(Eigen::VectorXd::Constant(2, 0.5), 11);
  ls.set_adjustment_enabled(false);
  for (int i = 0; i < 100; ++i) ls.report(ls.propose(), false);
  CHECK(ls.stepsize() == std::sqrt(2.0));
  CHECK_FALSE(ls.converged());
  const auto c = ls.propose();
  const Eigen::VectorXd center = ls.center();
  const Eigen::VectorXd pending = *ls.pending_direction();
  ls.set_adjustment_enabled(true);
  CHECK(ls.center() == center);
  CHECK(*ls.pending_direction() == pending);
  ls.report(c, false);
}

TEST_CASE("convergence, restart and the stepsize trace") {
  LocalSearch ls(Eigen::VectorXd::Constant(4, 0.5), 12);
  CHECK_THROWS_AS(ls.restart(), Error);
  double prev = ls.stepsize();
  int guard = 0;
  while (!ls.converged() && guard++ < 100000) {
    ls.report(ls.propose(), false);
    CHECK(ls.stepsize() <= prev);
    prev = ls.stepsize();
  }
  REQUIRE(ls.converged());
  CHECK(ls.stepsize() < ls.stepsize_lower_bound());
  CHECK_THROWS_AS(ls.propose(), Error);
  const Eigen::VectorXd before = ls.center();
  ls.restart();
  CHECK(ls.stepsize() == 2.0);
  CHECK_FALSE(ls.converged());
  CHECK(ls.no_improve_count() == 0);
  CHECK(ls.iters_since_restart() == 0);
  CHECK(ls.center() != before);
  CHECK_NOTHROW(ls.propose());
}

TEST_CASE("two restarts draw different centers") {
  LocalSearch ls(Eigen::VectorXd::Constant(2, 0.5), 13);
  Eigen::VectorXd centers[2];
  for (auto& c : centers) {
    while (!ls.converged()) ls.report(ls.propose(), false);
    ls.restart();
    c = ls.center();
  }
  CHECK(centers[0] != centers[1]);
}
