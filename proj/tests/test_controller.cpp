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
#include <filesystem>
#include <fstream>

#include "frugal/controller.hpp"
#include "frugal/error.hpp"
#include "frugal/surrogate.hpp"
#include "synthetic.hpp"

using namespace frugal;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("frugal_test_" + name);
}

// Single-arm convex quadratic over two unit coordinates, cost linear in s.
struct Quadratic {
  Eigen::Vector2d optimum{0.3, 0.7};
  TrialOutcome operator()(const LearningConfiguration& c) const {
    const double a = c.h.at("a") - optimum(0), b = c.h.at("b") - optimum(1);
    return {a * a + b * b, 1e-3 * static_cast<double>(c.s)};
  }
};

Arm quadratic_arm() {
  return {"quad",
          SearchSpace({Dim::real("a", 0, 1, Scale::kLinear, 0.5),
                       Dim::real("b", 0, 1, Scale::kLinear, 0.5)}),
          1.0};
}

}  // namespace

TEST_CASE("surrogate searches are reproducible record for record") {
  const auto land = SurrogateLandscape::default_suite();
  const auto a = surrogate_search(Policy::kFrugal, land, 100, 5);
  const auto b = surrogate_search(Policy::kFrugal, land, 100, 5);
  REQUIRE(a.trials.size() == b.trials.size());
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    CHECK(to_json_line(a.trials[i]) == to_json_line(b.trials[i]));
  }
}

TEST_CASE("a single convex arm stops by convergence before the budget") {
  SearchOptions o;
  o.budget_secs = 1e6;
  o.synthetic_clock = true;
  const auto r = run_search({quadratic_arm()}, 1000, ResamplingPlan::holdout(), Quadratic{}, o);
  CHECK(r.stop_reason == "converged");
  CHECK(r.elapsed < o.budget_secs);
  REQUIRE(r.best_index.has_value());
  CHECK(r.trials[*r.best_index].validation_error < 1e-3);
}

TEST_CASE("max_trials bounds the search") {
  SearchOptions o;
  o.budget_secs = 1e6;
  o.synthetic_clock = true;
  o.max_trials = 7;
  const auto r = run_search({quadratic_arm()}, 1000, ResamplingPlan::holdout(), Quadratic{}, o);
  CHECK(r.trials.size() == 7);
  CHECK(r.stop_reason == "max_trials");
}

TEST_CASE("trial records are ordered, positive and monotone in best error") {
  const auto land = SurrogateLandscape::default_suite();
  const auto r = surrogate_search(Policy::kFrugal, land, 2000, 1);
  REQUIRE_FALSE(r.trials.empty());
  double best = kInfinity, prev_elapsed = 0, total_cost = 0;
  for (std::size_t i = 0; i < r.trials.size(); ++i) {
    const auto& t = r.trials[i];
    CHECK(t.index == static_cast<long>(i));
    CHECK(t.cost > 0);
    CHECK(t.elapsed >= prev_elapsed);
    prev_elapsed = t.elapsed;
    total_cost += t.cost;
    CHECK(t.improved == (t.validation_error < best));
    best = std::min(best, t.validation_error);
  }
  CHECK(total_cost == doctest::Approx(r.elapsed).epsilon(1e-9));
  const auto curve = anytime_curve(r);
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].second <= curve[i - 1].second);
}

TEST_CASE("the first trial is the fastest arm at its initial configuration") {
  auto land = SurrogateLandscape::default_suite();
  std::swap(land.arms[0], land.arms[1]);  // fastest arm no longer listed first
  const auto r = surrogate_search(Policy::kFrugal, land, 100, 2);
  REQUIRE_FALSE(r.trials.empty());
  const auto& first = r.trials.front().config;
  CHECK(first.learner == "cheap");
  CHECK(first.h == land.search_arms()[1].space.init());
  CHECK(first.s == 10000);
}

TEST_CASE("fit on real data returns a usable model") {
  const auto d = testing::make_binary(600, 4, 1);
  FitOptions o;
  o.search.budget_secs = 1.5;
  o.search.seed = 3;
  const auto r = fit(d, LearnerRegistry::with_builtins(), o);
  REQUIRE(r.best_model);
  const auto p = predict(r, d.features);
  CHECK(p.rows() == d.n_instances());
  CHECK(p.cols() == 2);
  CHECK_THROWS_AS(predict(r, Eigen::MatrixXd::Zero(3, 5)), Error);
  double best = kInfinity;
  for (const auto& t : r.trials) best = std::min(best, t.validation_error);
  CHECK(r.best_validation_error == best);
  CHECK(r.best_config.r.is_cv());  // 600 rows in a short budget is still cheap
  CHECK(r.trials.front().config.learner == "gbt");
}

TEST_CASE("fit on a constant target predicts the constant") {
  auto d = testing::make_regression(200, 3, 2);
  d.labels.setConstant(5.0);
  FitOptions o;
  o.search.budget_secs = 0.5;
  o.metric = Metric(MetricKind::kMse);
  const auto r = fit(d, LearnerRegistry::with_builtins(), o);
  const auto p = predict(r, d.features);
  CHECK((p.array() - 5.0).abs().maxCoeff() <= 1e-9);
}

TEST_CASE("a tiny budget still yields the initial model with a warning") {
  const auto d = testing::make_binary(3000, 4, 3);
  FitOptions o;
  o.search.budget_secs = 0.001;
  const auto r = fit(d, LearnerRegistry::with_builtins(), o);
  REQUIRE(r.trials.size() == 1);
  CHECK(r.trials[0].config.learner == "gbt");
  CHECK(r.trials[0].config.h == default_space("gbt", r.trials[0].config.s).init());
  CHECK(r.best_model);
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0] == "budget exhausted by the initial trial");
}

TEST_CASE("fit validates its inputs") {
  const auto registry = LearnerRegistry::with_builtins();
  FitOptions o;
  o.search.budget_secs = 1;
  CHECK_THROWS_AS(fit(testing::make_binary(0, 2, 1), registry, o), Error);
  o.learners = {"svm"};
  CHECK_THROWS_AS(fit(testing::make_binary(50, 2, 1), registry, o), Error);
  o.learners = {};
  o.search.budget_secs = 0;
  CHECK_THROWS_AS(fit(testing::make_binary(50, 2, 1), registry, o), Error);
}

TEST_CASE("space overrides reach the search") {
  const auto d = testing::make_regression(300, 3, 4);
  FitOptions o;
  o.search.budget_secs = 5;
  o.search.max_trials = 15;
  o.learners = {"lr"};
  o.space_overrides["lr"]["C"] = DimOverride{2.0, 4.0, Scale::kLinear, 3.0};
  const auto r = fit(d, LearnerRegistry::with_builtins(), o);
  for (const auto& t : r.trials) {
    CHECK(t.config.h.at("C") >= 2.0);
    CHECK(t.config.h.at("C") <= 4.0);
  }
  CHECK(r.trials.front().config.h.at("C") == 3.0);
}

TEST_CASE("trial logs round-trip") {
  const auto path = temp_file("log.jsonl");
  SUBCASE("empty") {
    write_log({}, path);
    CHECK(std::filesystem::file_size(path) == 0);
    CHECK(read_log(path).empty());
  }
  SUBCASE("three trials") {
    const auto land = SurrogateLandscape::default_suite();
    SearchOptions base;
    base.max_trials = 3;
    auto trials = surrogate_search(Policy::kFrugal, land, 1000, 1, base).trials;
    REQUIRE(trials.size() == 3);
    trials[1].test_error = 0.125;
    trials[2].config.r = ResamplingPlan::cv(5);
    write_log(trials, path);
    std::ifstream in(path);
    int lines = 0;
    for (std::string line; std::getline(in, line);) ++lines;
    CHECK(lines == 3);
    const auto back = read_log(path);
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(back[i] == trials[i]);
    CHECK(back[1].test_error == 0.125);
  }
  SUBCASE("truncated line") {
    const auto land = SurrogateLandscape::default_suite();
    SearchOptions base;
    base.max_trials = 2;
    const auto trials = surrogate_search(Policy::kFrugal, land, 1000, 1, base).trials;
    std::ofstream(path) << to_json_line(trials[0]) << "\n"
                        << to_json_line(trials[1]).substr(0, 20) << "\n";
    try {
      read_log(path);
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  std::filesystem::remove(path);
}

TEST_CASE("log lines keep a fixed key order") {
  const auto land = SurrogateLandscape::default_suite();
  SearchOptions base;
  base.max_trials = 1;
  const auto line = to_json_line(surrogate_search(Policy::kFrugal, land, 1000, 1, base).trials[0]);
  std::size_t pos = 0;
  for (const char* key : {"\"iter\"", "\"time\"", "\"learner\"", "\"config\"", "\"sample_size\"",
                          "\"resample\"", "\"error\"", "\"cost\"", "\"improved\""}) {
    const auto at = line.find(key);
    REQUIRE(at != std::string::npos);
    CHECK(at >= pos);
    pos = at;
  }
}
