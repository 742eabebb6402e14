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

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "frugal/dataset.hpp"
#include "frugal/metrics.hpp"
#include "frugal/space.hpp"

namespace frugal {

/// A trained model. Immutable once built.
class Model {
 public:
  virtual ~Model() = default;

  /// n x K class probabilities (classification) or n x 1 values (regression).
  /// Throws Error when the column count differs from training.
  Eigen::MatrixXd predict(const Eigen::MatrixXd& features) const;

  virtual const std::string& learner() const = 0;
  virtual Index n_features() const = 0;
  virtual Index train_size() const = 0;
  /// Boosting rounds or forest size; 0 for models without trees.
  virtual std::size_t tree_count() const { return 0; }

 protected:
  virtual Eigen::MatrixXd predict_rows(const Eigen::MatrixXd& features) const = 0;
};

/// A trainable model family: its search space, relative cost of its cheapest
/// configuration, and supported tasks.
class Learner {
 public:
  virtual ~Learner() = default;

  virtual std::string name() const = 0;
  /// Cost of the initial configuration relative to the fastest learner.
  virtual double cost_constant() const = 0;
  virtual bool supports(Task task) const = 0;
  virtual SearchSpace space(Index n_train) const = 0;

  /// Deterministic for fixed (config, data, seed).
  virtual std::unique_ptr<Model> train(const Assignment& config, const Dataset& data,
                                       std::uint64_t seed) const = 0;
};

/// Checks the common train() preconditions shared by all learners.
void check_trainable(const Learner& learner, const Assignment& config, const Dataset& data);

/// Gradient-boosted regression trees, grown leaf-wise on quantile bins, with a
/// logistic (binary), softmax (multiclass) or squared-error objective.
class GradientBoostedTrees final : public Learner {
 public:
  std::string name() const override { return "gbt"; }
  double cost_constant() const override { return 1.0; }
  bool supports(Task) const override { return true; }
  SearchSpace space(Index n_train) const override { return default_space("gbt", n_train); }
  std::unique_ptr<Model> train(const Assignment& config, const Dataset& data,
                               std::uint64_t seed) const override;
};

/// Bagged CART trees grown to purity on bootstrap samples.
class RandomForest final : public Learner {
 public:
  std::string name() const override { return "rf"; }
  double cost_constant() const override { return 2.0; }
  bool supports(Task) const override { return true; }
  SearchSpace space(Index n_train) const override { return default_space("rf", n_train); }
  std::unique_ptr<Model> train(const Assignment& config, const Dataset& data,
                               std::uint64_t seed) const override;
};

/// L2-regularized linear (regression) or logistic/softmax (classification)
/// model fitted by full-batch accelerated gradient descent on standardized
/// features. C is the inverse regularization strength.
class LinearModel final : public Learner {
 public:
  std::string name() const override { return "lr"; }
  double cost_constant() const override { return 160.0; }
  bool supports(Task) const override { return true; }
  SearchSpace space(Index n_train) const override { return default_space("lr", n_train); }
  std::unique_ptr<Model> train(const Assignment& config, const Dataset& data,
                               std::uint64_t seed) const override;
};

/// Named collection of learners; custom learners are added next to the
/// built-ins.
class LearnerRegistry {
 public:
  static LearnerRegistry with_builtins();

  void add(std::shared_ptr<const Learner> learner);
  const Learner& get(const std::string& name) const;
  std::shared_ptr<const Learner> share(const std::string& name) const;
  bool contains(const std::string& name) const;
  std::vector<std::string> names() const;
  std::vector<std::string> names_for(Task task) const;

 private:
  std::vector<std::shared_ptr<const Learner>> learners_;
};

struct TrialOutcome {
  double error = 0;
  double cost = 0;
};

/// Trains on each split's training rows and scores the validation rows of
/// `data`. The error is the mean over splits; the cost is the wall-clock
/// seconds of the whole call.
TrialOutcome evaluate(const Learner& learner, const Assignment& config, const Dataset& data,
                      const std::vector<SplitPair>& splits, const Metric& metric,
                      std::uint64_t seed);

}  // namespace frugal
