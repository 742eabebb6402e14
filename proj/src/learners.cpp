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

#include "frugal/learners.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "frugal/error.hpp"
#include "frugal/rng.hpp"

namespace frugal {

Eigen::MatrixXd Model::predict(const Eigen::MatrixXd& features) const {
  if (features.rows() == 0) return predict_rows(Eigen::MatrixXd(0, n_features()));
  if (features.cols() != n_features()) {
    throw Error("predict: model expects " + std::to_string(n_features()) + " features, got " +
                std::to_string(features.cols()));
  }
  return predict_rows(features);
}

void check_trainable(const Learner& learner, const Assignment& config, const Dataset& data) {
  if (data.n_instances() == 0) throw Error(learner.name() + ": cannot train on an empty dataset");
  if (!learner.supports(data.task)) {
    throw Error(learner.name() + " does not support task " + std::string(to_string(data.task)));
  }
  const auto space = learner.space(data.n_instances());
  for (const auto& d : space.dims()) {
    const auto it = config.find(d.name);
    if (it == config.end()) throw Error(learner.name() + ": missing hyperparameter '" + d.name + "'");
    // Count caps depend on the sample size, so only the fixed bounds are checked here.
    const bool ok = d.kind == DimKind::kFloat || it->second == std::floor(it->second);
    if (!ok || it->second < d.low || !std::isfinite(it->second) ||
        (d.kind != DimKind::kInt && it->second > d.high)) {
      throw Error(learner.name() + ": hyperparameter '" + d.name + "' = " +
                  std::to_string(it->second) + " outside its domain");
    }
  }
}

LearnerRegistry LearnerRegistry::with_builtins() {
  LearnerRegistry r;
  r.add(std::make_shared<GradientBoostedTrees>());
  r.add(std::make_shared<RandomForest>());
  r.add(std::make_shared<LinearModel>());
  return r;
}

void LearnerRegistry::add(std::shared_ptr<const Learner> learner) {
  if (!learner) throw Error("cannot register a null learner");
  if (contains(learner->name())) throw Error("learner '" + learner->name() + "' already registered");
  if (!(learner->cost_constant() > 0)) {
    throw Error("learner '" + learner->name() + "' needs a positive cost constant");
  }
  learners_.push_back(std::move(learner));
}

std::shared_ptr<const Learner> LearnerRegistry::share(const std::string& name) const {
  for (const auto& l : learners_) {
    if (l->name() == name) return l;
  }
  throw Error("unknown learner '" + name + "'");
}

const Learner& LearnerRegistry::get(const std::string& name) const { return *share(name); }

bool LearnerRegistry::contains(const std::string& name) const {
  return std::any_of(learners_.begin(), learners_.end(),
                     [&](const auto& l) { return l->name() == name; });
}

std::vector<std::string> LearnerRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& l : learners_) out.push_back(l->name());
  return out;
}

std::vector<std::string> LearnerRegistry::names_for(Task task) const {
  std::vector<std::string> out;
  for (const auto& l : learners_) {
    if (l->supports(task)) out.push_back(l->name());
  }
  return out;
}

TrialOutcome evaluate(const Learner& learner, const Assignment& config, const Dataset& data,
                      const std::vector<SplitPair>& splits, const Metric& metric,
                      std::uint64_t seed) {
  if (splits.empty()) throw Error("evaluate: no resampling splits");
  const auto start = std::chrono::steady_clock::now();
  double total = 0;
  for (std::size_t i = 0; i < splits.size(); ++i) {
    const auto train = subset(data, splits[i].train);
    const auto validation = subset(data, splits[i].validation);
    const auto model = learner.train(config, train, mix_seed(seed, static_cast<std::uint64_t>(Stream::kTraining), i));
    total += metric(model->predict(validation.features), validation.labels);
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return {total / static_cast<double>(splits.size()), std::max(elapsed.count(), 1e-9)};
}

}  // namespace frugal
