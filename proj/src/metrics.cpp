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

#include "frugal/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "frugal/error.hpp"

namespace frugal {
namespace {

void check_lengths(Index predictions, Index labels) {
  if (predictions != labels) {
    throw Error("metric: " + std::to_string(predictions) + " predictions for " +
                std::to_string(labels) + " labels");
  }
  if (labels == 0) throw Error("metric: empty input");
}

Eigen::VectorXd positive_scores(const Eigen::MatrixXd& predictions) {
  return predictions.col(predictions.cols() - 1);
}

}  // namespace

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::kOneMinusAuc: return "one_minus_auc";
    case MetricKind::kLogLoss: return "log_loss";
    case MetricKind::kOneMinusR2: return "one_minus_r2";
    case MetricKind::kMse: return "mse";
    case MetricKind::kQErrorP95: return "qerror_p95";
  }
  return "unknown";
}

MetricKind parse_metric(std::string_view name) {
  for (auto kind : {MetricKind::kOneMinusAuc, MetricKind::kLogLoss, MetricKind::kOneMinusR2,
                    MetricKind::kMse, MetricKind::kQErrorP95}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error("unknown metric '" + std::string(name) + "'");
}

MetricKind default_metric(Task task) {
  switch (task) {
    case Task::kBinary: return MetricKind::kOneMinusAuc;
    case Task::kMulticlass: return MetricKind::kLogLoss;
    case Task::kRegression: return MetricKind::kOneMinusR2;
  }
  return MetricKind::kOneMinusR2;
}

Metric::Metric(MetricKind kind)
    : name_(to_string(kind)),
      fn_([kind](const Eigen::MatrixXd& p, const Eigen::VectorXd& y) {
        return error(kind, p, y);
      }) {}

Metric::Metric(std::string name, MetricFn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

double Metric::operator()(const Eigen::MatrixXd& predictions,
                          const Eigen::VectorXd& labels) const {
  return fn_(predictions, labels);
}

double error(MetricKind kind, const Eigen::MatrixXd& predictions,
             const Eigen::VectorXd& labels) {
  check_lengths(predictions.rows(), labels.size());
  switch (kind) {
    case MetricKind::kOneMinusAuc:
      return predictions.cols() <= 2 ? one_minus_auc(positive_scores(predictions), labels)
                                     : one_minus_auc_ovr(predictions, labels);
    case MetricKind::kLogLoss: return log_loss(predictions, labels);
    case MetricKind::kOneMinusR2: return one_minus_r2(predictions.col(0), labels);
    case MetricKind::kMse: return mean_squared_error(predictions.col(0), labels);
    case MetricKind::kQErrorP95: return qerror_p95(predictions.col(0), labels);
  }
  throw Error("unknown metric");
}

double one_minus_auc(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels) {
  check_lengths(scores.size(), labels.size());
  const Index n = scores.size();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return scores(a) < scores(b); });

  double positive_rank_sum = 0;
  double n_pos = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores(order[j]) == scores(order[i])) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
    for (std::size_t t = i; t < j; ++t) {
      if (labels(order[t]) > 0.5) {
        positive_rank_sum += avg_rank;
        n_pos += 1;
      }
    }
    i = j;
  }
  const double n_neg = static_cast<double>(n) - n_pos;
  if (n_pos == 0 || n_neg == 0) throw Error("AUC is undefined when labels have a single class");
  const double auc = (positive_rank_sum - n_pos * (n_pos + 1) / 2) / (n_pos * n_neg);
  return 1.0 - auc;
}

double one_minus_auc_ovr(const Eigen::MatrixXd& probabilities, const Eigen::VectorXd& labels) {
  check_lengths(probabilities.rows(), labels.size());
  double total = 0;
  int counted = 0;
  for (Index c = 0; c < probabilities.cols(); ++c) {
    const Eigen::VectorXd is_c = (labels.array() == static_cast<double>(c)).cast<double>();
    const double pos = is_c.sum();
    if (pos == 0 || pos == static_cast<double>(labels.size())) continue;
    total += one_minus_auc(probabilities.col(c), is_c);
    ++counted;
  }
  if (counted == 0) throw Error("AUC is undefined when labels have a single class");
  return total / counted;
}

double log_loss(const Eigen::MatrixXd& probabilities, const Eigen::VectorXd& labels) {
  check_lengths(probabilities.rows(), labels.size());
  double sum = 0;
  for (Index i = 0; i < labels.size(); ++i) {
    double p = 0;
    if (probabilities.cols() == 1) {
      p = labels(i) > 0.5 ? probabilities(i, 0) : 1.0 - probabilities(i, 0);
    } else {
      const auto c = static_cast<Index>(labels(i));
      if (c < 0 || c >= probabilities.cols()) throw Error("log_loss: label outside class range");
      p = probabilities(i, c);
    }
    sum -= std::log(std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp));
  }
  return sum / static_cast<double>(labels.size());
}

double one_minus_r2(const Eigen::VectorXd& predictions, const Eigen::VectorXd& labels) {
  check_lengths(predictions.size(), labels.size());
  const double sse = (predictions - labels).squaredNorm();
  const double sst = (labels.array() - labels.mean()).matrix().squaredNorm();
  if (sst == 0) throw Error("R2 is undefined for constant labels");
  return sse / sst;
}

double mean_squared_error(const Eigen::VectorXd& predictions, const Eigen::VectorXd& labels) {
  check_lengths(predictions.size(), labels.size());
  return (predictions - labels).squaredNorm() / static_cast<double>(labels.size());
}

double qerror_p95(const Eigen::VectorXd& predictions, const Eigen::VectorXd& labels) {
  check_lengths(predictions.size(), labels.size());
  std::vector<double> q(static_cast<std::size_t>(labels.size()));
  for (Index i = 0; i < labels.size(); ++i) {
    const double p = std::max(predictions(i), 1.0);
    const double y = std::max(labels(i), 1.0);
    q[static_cast<std::size_t>(i)] = std::max(p / y, y / p);
  }
  return nearest_rank_percentile(std::move(q), 95.0);
}

double nearest_rank_percentile(std::vector<double> values, double q) {
  if (values.empty()) throw Error("percentile of an empty sequence");
  const auto n = values.size();
  auto rank = static_cast<std::size_t>(std::ceil(q / 100.0 * static_cast<double>(n) - 1e-12));
  rank = std::clamp<std::size_t>(rank, 1, n);
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                   values.end());
  return values[rank - 1];
}

}  // namespace frugal
