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

#include <cmath>

#include "frugal/error.hpp"
#include "frugal/learners.hpp"

namespace frugal {
namespace {

constexpr int kIterations = 200;

class LinearFit final : public Model {
 public:
  LinearFit(Task task, Eigen::RowVectorXd mean, Eigen::RowVectorXd scale, Eigen::MatrixXd weights,
            Eigen::RowVectorXd bias, Index train_size)
      : task_(task),
        mean_(std::move(mean)),
        scale_(std::move(scale)),
        weights_(std::move(weights)),
        bias_(std::move(bias)),
        train_size_(train_size) {}

  const std::string& learner() const override { return name_; }
  Index n_features() const override { return mean_.size(); }
  Index train_size() const override { return train_size_; }

 protected:
  Eigen::MatrixXd predict_rows(const Eigen::MatrixXd& x) const override {
    const Eigen::MatrixXd z = ((x.rowwise() - mean_).array().rowwise() / scale_.array()).matrix();
    Eigen::MatrixXd raw = (z * weights_).rowwise() + bias_;
    if (task_ == Task::kRegression) return raw;
    if (task_ == Task::kBinary) {
      Eigen::MatrixXd p(x.rows(), 2);
      p.col(1) = (1.0 / (1.0 + (-raw.col(0).array()).exp())).matrix();
      p.col(0) = (1.0 - p.col(1).array()).matrix();
      return p;
    }
    const Eigen::VectorXd row_max = raw.rowwise().maxCoeff();
    Eigen::MatrixXd e = (raw.colwise() - row_max).array().exp().matrix();
    const Eigen::VectorXd sums = e.rowwise().sum();
    return (e.array().colwise() / sums.array()).matrix();
  }

 private:
  std::string name_ = "lr";
  Task task_;
  Eigen::RowVectorXd mean_, scale_;
  Eigen::MatrixXd weights_;
  Eigen::RowVectorXd bias_;
  Index train_size_;
};

// Largest eigenvalue of a symmetric PSD matrix by power iteration.
double top_eigenvalue(const Eigen::MatrixXd& gram) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(gram.rows()).normalized();
  double lambda = 0;
  for (int i = 0; i < 50; ++i) {
    const Eigen::VectorXd w = gram * v;
    const double norm = w.norm();
    if (norm == 0) return 0;
    lambda = norm;
    v = w / norm;
  }
  return lambda;
}

}  // namespace

std::unique_ptr<Model> LinearModel::train(const Assignment& config, const Dataset& data,
                                          std::uint64_t) const {
  check_trainable(*this, config, data);
  const double c = config.at("C");
  const Index n = data.n_instances();
  const Index f = data.n_features();
  const Index k = data.task == Task::kMulticlass ? data.n_classes : 1;

  const Eigen::RowVectorXd mean = data.features.colwise().mean();
  Eigen::RowVectorXd scale =
      ((data.features.rowwise() - mean).array().square().colwise().sum() / static_cast<double>(n))
          .sqrt()
          .matrix();
  for (Index j = 0; j < f; ++j) {
    if (scale(j) < 1e-12) scale(j) = 1.0;
  }
  // Standardized design with a trailing intercept column.
  Eigen::MatrixXd x(n, f + 1);
  x.leftCols(f) = ((data.features.rowwise() - mean).array().rowwise() / scale.array()).matrix();
  x.col(f).setOnes();

  Eigen::MatrixXd y(n, k);
  if (data.task == Task::kMulticlass) {
    y.setZero();
    for (Index r = 0; r < n; ++r) y(r, static_cast<Index>(data.labels(r))) = 1.0;
  } else {
    y.col(0) = data.labels;
  }

  // Objective: mean loss + ||W||^2 / (2 C n), intercept unpenalized.
  const double reg = 1.0 / (c * static_cast<double>(n));
  const double curvature = data.task == Task::kRegression ? 1.0
                           : data.task == Task::kBinary   ? 0.25
                                                          : 0.5;
  const Eigen::MatrixXd gram = x.transpose() * x / static_cast<double>(n);
  const double step = 1.0 / (curvature * top_eigenvalue(gram) + reg + 1e-12);

  auto gradient = [&](const Eigen::MatrixXd& w) {
    Eigen::MatrixXd out = x * w;
    if (data.task == Task::kBinary) {
      out = (1.0 / (1.0 + (-out.array()).exp())).matrix();
    } else if (data.task == Task::kMulticlass) {
      const Eigen::VectorXd row_max = out.rowwise().maxCoeff();
      out = (out.colwise() - row_max).array().exp().matrix();
      const Eigen::VectorXd sums = out.rowwise().sum();
      out = (out.array().colwise() / sums.array()).matrix();
    }
    Eigen::MatrixXd g = x.transpose() * (out - y) / static_cast<double>(n);
    g.topRows(f) += reg * w.topRows(f);
    return g;
  };

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(f + 1, k);
  Eigen::MatrixXd momentum_point = w;
  double t = 1.0;
  for (int it = 0; it < kIterations; ++it) {
    const Eigen::MatrixXd next = momentum_point - step * gradient(momentum_point);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    momentum_point = next + ((t - 1.0) / t_next) * (next - w);
    w = next;
    t = t_next;
  }
  return std::make_unique<LinearFit>(data.task, mean, scale, w.topRows(f),
                                     w.row(f), n);
}

}  // namespace frugal
