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

#include "frugal/controller.hpp"

#include <algorithm>
#include <chrono>

#include "frugal/error.hpp"
#include "frugal/localsearch.hpp"
#include "frugal/proposers.hpp"
#include "frugal/rng.hpp"

namespace frugal {
namespace {

struct ArmRuntime {
  const Arm* arm = nullptr;
  LearnerState stats;
  LocalSearch search;
  Assignment incumbent;
  double incumbent_error = kInfinity;
  bool center_evaluated = false;
  int restarts = 0;
  bool exhausted = false;
};

class SearchLoop {
 public:
  SearchLoop(const std::vector<Arm>& arms, long full_size, const ResamplingPlan& plan,
             const TrialRunner& runner, const SearchOptions& options)
      : plan_(plan),
        runner_(runner),
        options_(options),
        full_size_(full_size),
        initial_size_(options.full_data ? full_size
                                        : initial_sample_size(full_size, options.min_sample)),
        sampler_rng_(make_rng(options.seed, Stream::kLearnerSampling)),
        start_(std::chrono::steady_clock::now()) {
    if (arms.empty()) throw Error("search needs at least one learner");
    if (full_size < 1) throw Error("search needs at least one training row");
    if (!(options.budget_secs > 0)) throw Error("budget must be positive");
    if (!(options.sample_factor > 1)) throw Error("sample factor must exceed 1");
    for (std::size_t i = 0; i < arms.size(); ++i) {
      const auto& arm = arms[i];
      ArmRuntime rt{&arm, {}, LocalSearch(arm.space.to_unit(arm.space.init()),
                                          mix_seed(options.seed, static_cast<std::uint64_t>(Stream::kLocalSearch), i)),
                    arm.space.init()};
      rt.stats.cost_constant = arm.cost_constant;
      rt.stats.sample_size = initial_size_;
      rt.stats.full_size = full_size;
      rt.search.set_adjustment_enabled(rt.stats.at_full_size());
      runtimes_.push_back(std::move(rt));
    }
  }

  SearchResult run() {
    // The fastest learner goes first; its cost calibrates the others.
    std::size_t fastest = 0;
    for (std::size_t i = 1; i < runtimes_.size(); ++i) {
      if (runtimes_[i].stats.cost_constant < runtimes_[fastest].stats.cost_constant) fastest = i;
    }
    step(fastest, std::nullopt);
    std::vector<LearnerState> states;
    for (const auto& rt : runtimes_) states.push_back(rt.stats);
    bootstrap_untried(states, runtimes_[fastest].stats.K0);
    for (std::size_t i = 0; i < runtimes_.size(); ++i) {
      runtimes_[i].stats.bootstrap_eci = states[i].bootstrap_eci;
    }
    if (result_.elapsed >= options_.budget_secs) {
      result_.warnings.push_back("budget exhausted by the initial trial");
    }
    round_robin_next_ = (fastest + 1) % runtimes_.size();

    for (;;) {
      if (result_.elapsed >= options_.budget_secs) {
        result_.stop_reason = "budget";
        break;
      }
      if (options_.max_trials && static_cast<long>(result_.trials.size()) >= *options_.max_trials) {
        result_.stop_reason = "max_trials";
        break;
      }
      const bool any_active = std::any_of(runtimes_.begin(), runtimes_.end(),
                                          [](const ArmRuntime& rt) { return !rt.exhausted; });
      if (!any_active) {
        result_.stop_reason = "converged";
        break;
      }
      const auto [chosen, estimate] = choose_arm();
      step(chosen, estimate);
    }
    return std::move(result_);
  }

 private:
  std::pair<std::size_t, std::optional<EciEstimate>> choose_arm() {
    const double overall_best = best_error_;
    std::vector<double> ecis(runtimes_.size(), 0.0);
    std::vector<bool> active(runtimes_.size(), false);
    std::vector<EciEstimate> estimates(runtimes_.size());
    for (std::size_t i = 0; i < runtimes_.size(); ++i) {
      active[i] = !runtimes_[i].exhausted;
      estimates[i] = eci(runtimes_[i].stats, overall_best, options_.sample_factor,
                         options_.gap_factor);
      ecis[i] = estimates[i].eci;
    }
    std::size_t chosen = 0;
    switch (options_.learner_policy) {
      case LearnerPolicy::kEci:
        chosen = sample_learner(ecis, active, sampler_rng_);
        break;
      case LearnerPolicy::kUniform:
        chosen = sample_learner(std::vector<double>(ecis.size(), 1.0), active, sampler_rng_);
        break;
      case LearnerPolicy::kRoundRobin:
        while (!active[round_robin_next_]) round_robin_next_ = (round_robin_next_ + 1) % active.size();
        chosen = round_robin_next_;
        round_robin_next_ = (round_robin_next_ + 1) % active.size();
        break;
    }
    return {chosen, estimates[chosen]};
  }

  void step(std::size_t index, const std::optional<EciEstimate>& estimate) {
    auto& rt = runtimes_[index];
    auto& stats = rt.stats;
    LearningConfiguration config{rt.arm->name, rt.incumbent, stats.sample_size, plan_};

    enum class Kind { kCenter, kIncrease, kNew } kind = Kind::kCenter;
    Eigen::VectorXd candidate;
    if (rt.center_evaluated) {
      if (choose_step(stats, options_.sample_factor) == StepKind::kIncreaseSample) {
        kind = Kind::kIncrease;
        config.s = next_sample_size(stats, options_.sample_factor, full_size_);
      } else {
        kind = Kind::kNew;
        candidate = rt.search.propose();
        config.h = rt.arm->space.from_unit(candidate);
      }
    }

    const TrialOutcome outcome = runner_(config);
    const double cost = std::max(outcome.cost, 1e-12);
    if (options_.synthetic_clock) {
      result_.elapsed += cost;
    } else {
      const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start_;
      result_.elapsed = std::max(result_.elapsed, d.count());
    }

    switch (kind) {
      case Kind::kCenter:
        record_trial(stats, outcome.error, cost, true);
        rt.incumbent_error = outcome.error;
        rt.center_evaluated = true;
        break;
      case Kind::kIncrease:
        stats.sample_size = config.s;
        record_trial(stats, outcome.error, cost, true);
        rt.incumbent_error = outcome.error;
        rt.search.set_adjustment_enabled(stats.at_full_size());
        break;
      case Kind::kNew: {
        const bool better = outcome.error < rt.incumbent_error;
        rt.search.report(candidate, better);
        record_trial(stats, outcome.error, cost, better);
        if (better) {
          rt.incumbent = config.h;
          rt.incumbent_error = outcome.error;
        }
        break;
      }
    }

    if (rt.search.converged()) {
      if (rt.restarts < options_.max_restarts) {
        ++rt.restarts;
        rt.search.restart();
        rt.incumbent = rt.arm->space.from_unit(rt.search.center());
        rt.incumbent_error = kInfinity;
        rt.center_evaluated = false;
        stats.sample_size = initial_size_;
        rt.search.set_adjustment_enabled(stats.at_full_size());
      } else {
        rt.exhausted = true;
      }
    }

    TrialRecord record;
    record.index = static_cast<long>(result_.trials.size());
    record.elapsed = result_.elapsed;
    record.config = std::move(config);
    record.validation_error = outcome.error;
    record.cost = cost;
    record.improved = outcome.error < best_error_;
    record.eci = estimate;
    if (record.improved) {
      best_error_ = outcome.error;
      result_.best_index = result_.trials.size();
    }
    result_.trials.push_back(std::move(record));
  }

  ResamplingPlan plan_;
  const TrialRunner& runner_;
  const SearchOptions& options_;
  long full_size_;
  long initial_size_;
  std::vector<ArmRuntime> runtimes_;
  Rng sampler_rng_;
  std::size_t round_robin_next_ = 0;
  double best_error_ = kInfinity;
  std::chrono::steady_clock::time_point start_;
  SearchResult result_;
};

}  // namespace

bool TrialRecord::operator==(const TrialRecord& o) const {
  const auto same_eci = [](const std::optional<EciEstimate>& a, const std::optional<EciEstimate>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || (a->eci1 == b->eci1 && a->eci2 == b->eci2 && a->eci == b->eci);
  };
  return index == o.index && elapsed == o.elapsed && config == o.config &&
         validation_error == o.validation_error && cost == o.cost && improved == o.improved &&
         test_error == o.test_error && same_eci(eci, o.eci);
}

SearchResult run_search(const std::vector<Arm>& arms, long full_size, const ResamplingPlan& plan,
                        const TrialRunner& runner, const SearchOptions& options) {
  SearchLoop loop(arms, full_size, plan, runner, options);
  return loop.run();
}

FitResult fit(const Dataset& data, const LearnerRegistry& registry, const FitOptions& options) {
  data.validate();
  const Index n = data.n_instances();
  if (n == 0) throw Error("fit: empty dataset");

  std::vector<std::string> names = options.learners;
  if (names.empty()) names = registry.names_for(data.task);
  std::vector<std::shared_ptr<const Learner>> learners;
  for (const auto& name : names) {
    auto l = registry.share(name);
    if (l->supports(data.task)) learners.push_back(std::move(l));
  }
  if (learners.empty()) {
    throw Error("no enabled learner supports task " + std::string(to_string(data.task)));
  }

  const Metric metric = options.metric.value_or(Metric(default_metric(data.task)));
  const auto& search = options.search;
  const ResamplingPlan plan = options.resample.value_or(choose_resampling(
      {search.budget_secs, static_cast<long>(n), static_cast<long>(data.n_features())}));
  plan.validate();

  const auto view = shuffle(data, search.seed);
  long full = static_cast<long>(n);
  IndexList validation_rows;
  if (!plan.is_cv()) {
    if (n < 2) throw Error("holdout needs at least 2 rows");
    const Index n_val = holdout_size(n, plan.rho);
    full = static_cast<long>(n - n_val);
    validation_rows.assign(view.permutation.end() - n_val, view.permutation.end());
  } else if (n < plan.k) {
    throw Error("cross-validation needs at least k rows");
  }

  std::vector<Arm> arms;
  for (const auto& l : learners) {
    Arm arm{l->name(), l->space(full), l->cost_constant()};
    if (const auto it = options.space_overrides.find(arm.name); it != options.space_overrides.end()) {
      for (const auto& [dim, o] : it->second) arm.space.override_dim(dim, o);
    }
    arms.push_back(std::move(arm));
  }

  SearchOptions effective = search;
  // Cross-validation trials always use the full data.
  if (plan.is_cv()) effective.full_data = true;

  const TrialRunner runner = [&](const LearningConfiguration& c) -> TrialOutcome {
    const auto& learner = registry.get(c.learner);
    if (c.r.is_cv()) {
      const auto sample = prefix(view, c.s);
      return evaluate(learner, c.h, sample, split(sample, c.r, search.seed), metric, search.seed);
    }
    const IndexList train(view.permutation.begin(), view.permutation.begin() + c.s);
    return evaluate(learner, c.h, data, {SplitPair{train, validation_rows}}, metric, search.seed);
  };

  auto outcome = run_search(arms, full, plan, runner, effective);
  FitResult result;
  result.task = data.task;
  result.trials = std::move(outcome.trials);
  result.warnings = std::move(outcome.warnings);
  result.stop_reason = std::move(outcome.stop_reason);
  result.elapsed = outcome.elapsed;
  const auto& best = result.trials.at(outcome.best_index.value_or(0));
  result.best_config = best.config;
  result.best_validation_error = best.validation_error;
  result.best_model =
      registry.get(best.config.learner).train(best.config.h, data, search.seed);
  return result;
}

Eigen::MatrixXd predict(const FitResult& result, const Eigen::MatrixXd& features) {
  if (!result.best_model) throw Error("predict: result holds no fitted model");
  return result.best_model->predict(features);
}

}  // namespace frugal
