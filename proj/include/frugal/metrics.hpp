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

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "frugal/dataset.hpp"

namespace frugal {

enum class MetricKind { kOneMinusAuc, kLogLoss, kOneMinusR2, kMse, kQErrorP95 };

std::string_view to_string(MetricKind kind);
MetricKind parse_metric(std::string_view name);

/// Metric used when none is given: 1-AUC for binary, log loss for multiclass,
/// 1-R2 for regression.
MetricKind default_metric(Task task);

/// Predictions are an n x K matrix of class probabilities for classification
/// (K = 2 for binary, column 1 is the positive class) and an n x 1 column of
/// real values for regression. Labels are class indices or real targets.
using MetricFn = std::function<double(const Eigen::MatrixXd& predictions,
                                      const Eigen::VectorXd& labels)>;

/// A metric to minimize. Built-ins wrap the free functions below; custom
/// metrics supply any callable with the MetricFn signature.
class Metric {
 public:
  explicit Metric(MetricKind kind);
  Metric(std::string name, MetricFn fn);

  const std::string& name() const { return name_; }
  double operator()(const Eigen::MatrixXd& predictions, const Eigen::VectorXd& labels) const;

 private:
  std::string name_;
  MetricFn fn_;
};

double error(MetricKind kind, const Eigen::MatrixXd& predictions,
             const Eigen::VectorXd& labels);

/// 1 - area under the ROC curve of `scores` for the binary `labels`; ties in
/// the scores count one half.
double one_minus_auc(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels);

/// Macro-averaged one-vs-rest 1-AUC over classes present in `labels`.
double one_minus_auc_ovr(const Eigen::MatrixXd& probabilities, const Eigen::VectorXd& labels);

/// Mean negative log of the true-class probability, clamped to
/// [kProbabilityClamp, 1 - kProbabilityClamp].
double log_loss(const Eigen::MatrixXd& probabilities, const Eigen::VectorXd& labels);
inline constexpr double kProbabilityClamp = 1e-15;

double one_minus_r2(const Eigen::VectorXd& predictions, const Eigen::VectorXd& labels);
double mean_squared_error(const Eigen::VectorXd& predictions, const Eigen::VectorXd& labels);

/// 95th percentile (nearest rank) of max(p/y, y/p) with p and y floored at 1.
double qerror_p95(const Eigen::VectorXd& predictions, const Eigen::VectorXd& labels);

/// Nearest-rank percentile: the value at sorted position ceil(q/100 * n) - 1.
double nearest_rank_percentile(std::vector<double> values, double q);

}  // namespace frugal
