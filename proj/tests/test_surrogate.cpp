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

#include "frugal/error.hpp"
#include "frugal/surrogate.hpp"

using namespace frugal;

namespace {

LearningConfiguration random_config(const SurrogateArm& arm, long s, std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0, 1);
  LearningConfiguration c{arm.name, {}, s, ResamplingPlan::holdout()};
  c.h["complexity"] = u(g);
  for (Eigen::Index i = 0; i < arm.optimum.size(); ++i) c.h["x" + std::to_string(i + 1)] = u(g);
  return c;
}

}  // namespace

TEST_CASE("cv cost is (k-1)/(1-rho) times holdout cost") {
  const auto land = SurrogateLandscape::default_suite();
  std::mt19937_64 g(1);
  auto c = random_config(land.arms[0], 20000, g);
  const double ho = land.evaluate(c).cost;
  c.r = ResamplingPlan::cv(5);
  CHECK(land.evaluate(c).cost / ho == doctest::Approx(4.0 / 0.9).epsilon(1e-12));
  CHECK(cv_cost_factor(ResamplingPlan::cv(5)) == doctest::Approx(4.444444444444));
}

TEST_CASE("doubling the sample doubles cost and never raises error") {
  for (double noise : {0.0, 0.01}) {
    auto land = SurrogateLandscape::default_suite();
    land.noise = noise;
    std::mt19937_64 g(2);
    std::uniform_int_distribution<long> size(1, land.full_size / 2);
    for (int t = 0; t < 500; ++t) {
      const auto& arm = land.arms[static_cast<std::size_t>(t % 2)];
      auto c = random_config(arm, size(g), g);
      const auto small = land.evaluate(c);
      c.s *= 2;
      const auto big = land.evaluate(c);
      CHECK(big.cost == doctest::Approx(2 * small.cost).epsilon(1e-12));
      if (noise == 0) CHECK(big.error <= small.error);
    }
  }
}

TEST_CASE("cost is linear in the complexity coordinate") {
  const auto land = SurrogateLandscape::default_suite();
  std::mt19937_64 g(3);
  auto c = random_config(land.arms[1], 5000, g);
  c.h["complexity"] = 0;
  const double c0 = land.evaluate(c).cost;
  c.h["complexity"] = 0.5;
  const double c5 = land.evaluate(c).cost;
  c.h["complexity"] = 1;
  const double c1 = land.evaluate(c).cost;
  CHECK(c5 - c0 == doctest::Approx(c1 - c5).epsilon(1e-12));
}

TEST_CASE("the optimum is the minimal error and moves up with sample size") {
  const auto land = SurrogateLandscape::default_suite();
  std::mt19937_64 g(4);
  for (const auto& arm : land.arms) {
    double prev = -1;
    for (long s : {1000L, 10000L, 100000L, 1000000L}) {
      const double opt = land.optimal_complexity(arm, s);
      CHECK(opt >= prev);
      prev = opt;
      const double best = land.minimal_error(arm, s);
      for (int t = 0; t < 200; ++t) CHECK(land.evaluate(random_config(arm, s, g)).error >= best);
    }
  }
  // The strong arm wins at full size but the cheap arm wins on a small sample.
  CHECK(land.minimal_error(land.arm("strong"), land.full_size) <
        land.minimal_error(land.arm("cheap"), land.full_size));
}

TEST_CASE("evaluate rejects bad configurations") {
  const auto land = SurrogateLandscape::default_suite();
  CHECK_THROWS_AS(land.evaluate({"nope", {}, 10, ResamplingPlan::holdout()}), Error);
  CHECK_THROWS_AS(land.evaluate({"cheap", {{"complexity", 0.1}}, 10, ResamplingPlan::holdout()}),
                  Error);
  std::mt19937_64 g(5);
  auto c = random_config(land.arms[0], 0, g);
  CHECK_THROWS_AS(land.evaluate(c), Error);
}

TEST_CASE("replay is deterministic and curves are non-increasing") {
  const auto land = SurrogateLandscape::default_suite();
  for (auto p : {Policy::kFrugal, Policy::kRoundRobin, Policy::kFullData, Policy::kCv,
                 Policy::kRandom}) {
    const auto a = replay(p, land, 2000, 7);
    CHECK(a == replay(p, land, 2000, 7));
    for (std::size_t i = 1; i < a.size(); ++i) {
      CHECK(a[i].second <= a[i - 1].second);
      CHECK(a[i].first >= a[i - 1].first);
    }
    CHECK(parse_policy(to_string(p)) == p);
  }
  CHECK_THROWS_AS(parse_policy("greedy"), Error);
}

TEST_CASE("policies pin what they promise") {
  const auto land = SurrogateLandscape::default_suite();
  for (const auto& t : surrogate_search(Policy::kFullData, land, 3000, 1).trials) {
    CHECK(t.config.s == land.full_size);
  }
  for (const auto& t : surrogate_search(Policy::kCv, land, 3000, 1).trials) {
    CHECK(t.config.r.is_cv());
  }
  const auto rr = surrogate_search(Policy::kRoundRobin, land, 3000, 1).trials;
  REQUIRE(rr.size() >= 4);
  for (std::size_t i = 1; i < rr.size(); ++i) CHECK(rr[i].config.learner != rr[i - 1].config.learner);
}

TEST_CASE("with one arm, roundrobin makes the same choices as frugal") {
  auto land = SurrogateLandscape::default_suite();
  land.arms.resize(1);
  const auto a = surrogate_search(Policy::kFrugal, land, 3000, 4).trials;
  const auto b = surrogate_search(Policy::kRoundRobin, land, 3000, 4).trials;
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].config == b[i].config);
}

TEST_CASE("best_error_at reads the step function") {
  const AnytimeCurve c{{1.0, 0.5}, {2.0, 0.4}, {5.0, 0.3}};
  CHECK(best_error_at(c, 0.5) == kInfinity);
  CHECK(best_error_at(c, 1.0) == 0.5);
  CHECK(best_error_at(c, 4.9) == 0.4);
  CHECK(best_error_at(c, 100) == 0.3);
}

TEST_CASE("landscapes load from json") {
  const auto l = landscape_from_json(
      R"({"full_size": 50000, "arms": [{"name": "a", "unit_cost": 2e-5, "optimum": [0.1, 0.2]}]})");
  CHECK(l.full_size == 50000);
  REQUIRE(l.arms.size() == 1);
  CHECK(l.arms[0].dimension() == 3);
  CHECK(l.arms[0].unit_cost == 2e-5);
  CHECK(landscape_from_json("{}").arms.size() == 2);
  CHECK_THROWS_AS(landscape_from_json(R"({"arms": []})"), Error);
  CHECK_THROWS_AS(landscape_from_json(R"({"arms": [{"name": "a", "unit_cost": -1}]})"), Error);
}
