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
#include <random>

#include "frugal/eci.hpp"
#include "frugal/error.hpp"

using namespace frugal;

namespace {

LearnerState tried(double K0, double K1, double K2, double delta, double best, double last_cost,
                   long s = 10000, long full = 100000) {
  LearnerState st;
  st.K0 = K0;
  st.K1 = K1;
  st.K2 = K2;
  st.delta = delta;
  st.best_error = best;
  st.last_cost = last_cost;
  st.sample_size = s;
  st.full_size = full;
  st.tried = true;
  return st;
}

}  // namespace

TEST_CASE("eci1 examples") {
  CHECK(eci1(tried(100, 60, 20, 0.1, 0.3, 1)) == 40);
  CHECK(eci1(tried(5, 5, 5, 0.1, 0.3, 1)) == 0);
  CHECK(eci1(tried(10, 6, 2, 0.1, 0.3, 1)) == 4);
  CHECK_THROWS_AS(eci1(LearnerState{}), Error);
}

TEST_CASE("eci2 examples") {
  CHECK(eci2(tried(1, 1, 0, 0, 0.3, 8), 2) == 16);
  CHECK(eci2(tried(1, 1, 0, 0, 0.3, 0.5), 2) == 1.0);
  CHECK(eci2(tried(1, 1, 0, 0, 0.3, 8, 5000, 5000), 2) == kInfinity);
}

TEST_CASE("eci combines the gap and improvement terms") {
  // Best learner: no gap, so the smaller of the two estimates wins.
  const auto best = eci(tried(100, 60, 20, 0.05, 0.20, 8), 0.20, 2);
  CHECK(best.eci1 == 40);
  CHECK(best.eci2 == 16);
  CHECK(best.eci == 16);
  // Non-best learner: 2 * 0.05 / (0.05 / 80) = 160.
  const auto behind = eci(tried(100, 60, 20, 0.05, 0.25, 8), 0.20, 2);
  CHECK(behind.tau == 80);
  CHECK(behind.eci == doctest::Approx(160).epsilon(1e-12));
  // No improvement since the first trial: delta and tau fall back to the
  // learner's own best error and total cost.
  const auto first = eci(tried(12, 12, 0, 0, 0.30, 12), 0.10, 2);
  CHECK(first.v == doctest::Approx(0.025).epsilon(1e-12));
  CHECK(first.tau == 12);
  // Without the doubling the gap cost halves.
  CHECK(eci(tried(100, 60, 20, 0.05, 0.25, 8), 0.20, 2, 1.0).eci ==
        doctest::Approx(80).epsilon(1e-12));
}

TEST_CASE("untried learners use their bootstrap value") {
  std::vector<LearnerState> states(3);
  states[0].cost_constant = 1;
  states[1].cost_constant = 2;
  states[2].cost_constant = 160;
  CHECK_THROWS_AS(bootstrap_untried(states, 1.0), Error);
  record_trial(states[0], 0.3, 1.0, true);
  bootstrap_untried(states, 1.0);
  CHECK(states[0].bootstrap_eci == 0);
  CHECK(states[1].bootstrap_eci == 2.0);
  CHECK(states[2].bootstrap_eci == 160.0);
  const auto e = eci(states[1], 0.3, 2);
  CHECK(e.eci == 2.0);
  CHECK(e.eci1 == 2.0);
  CHECK(e.eci2 == kInfinity);
}

TEST_CASE("record_trial maintains the cost bookkeeping") {
  LearnerState s;
  s.sample_size = 10;
  s.full_size = 100;
  CHECK(record_trial(s, 0.5, 2, true));
  CHECK(s.K0 == 2);
  CHECK(s.K1 == 2);
  CHECK(s.K2 == 0);
  CHECK(s.delta == 0);
  CHECK_FALSE(record_trial(s, 0.6, 3, false));
  CHECK(s.K0 == 5);
  CHECK(s.K1 == 2);
  CHECK(s.last_cost == 2);
  CHECK(record_trial(s, 0.4, 1, false));
  CHECK(s.K0 == 6);
  CHECK(s.K1 == 6);
  CHECK(s.K2 == 2);
  CHECK(s.delta == doctest::Approx(0.1));
  CHECK(s.best_error == 0.4);
  CHECK(s.last_cost == 1);
  // Ties are not improvements.
  CHECK_FALSE(record_trial(s, 0.4, 1, false));
  CHECK(s.K2 <= s.K1);
  CHECK(s.K1 <= s.K0);
}

TEST_CASE("selection probabilities are proportional to inverse ECI") {
  const auto p = selection_probabilities({2, 2}, {true, true});
  CHECK(p(0) == 0.5);
  CHECK(p(1) == 0.5);
  const auto q = selection_probabilities({1, 3}, {true, true});
  CHECK(q(0) == doctest::Approx(0.75));
  CHECK(q(1) == doctest::Approx(0.25));
  CHECK(expected_eci({1, 3}) == doctest::Approx(1.5));
  const auto single = selection_probabilities({5, 1}, {true, false});
  CHECK(single(0) == 1.0);
  CHECK(single(1) == 0.0);
  CHECK_THROWS_AS(selection_probabilities({1, 1}, {false, false}), Error);
  // The zero-ECI case is guarded by the floor rather than dividing by zero.
  const auto z = selection_probabilities({0, 1}, {true, true});
  CHECK(std::isfinite(z(0)));
  CHECK(z(0) > 0.99);
}

TEST_CASE("sampling rarely picks an inactive learner and follows weights") {
  Rng rng(9);
  std::vector<int> counts(3, 0);
  for (int i = 0; i < 20000; ++i) ++counts[sample_learner({1, 1, 2}, {true, false, true}, rng)];
  CHECK(counts[1] == 0);
  CHECK(counts[0] / 20000.0 == doctest::Approx(2.0 / 3.0).epsilon(0.03));
}

TEST_CASE("a failed trial never lowers eci1") {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> cost(0.1, 5);
  auto s = tried(10, 6, 2, 0.05, 0.3, 1);
  double prev = eci1(s);
  for (int i = 0; i < 30; ++i) {
    record_trial(s, 0.31 + 0.01 * i, cost(g), false);
    CHECK(eci1(s) >= prev);
    prev = eci1(s);
  }
}
