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

#include <algorithm>
#include <cmath>
#include <limits>

#include "frugal/error.hpp"
#include "frugal/learners.hpp"
#include "tree_common.hpp"

namespace frugal {
namespace {

using detail::BinMatrix;
using detail::Binner;
using detail::Tree;
using detail::TreeNode;

struct BoostParams {
  int tree_num = 4;
  int leaf_num = 4;
  double min_child_weight = 20;
  double learning_rate = 0.1;
  double reg_lambda = 1.0;
};

struct SplitChoice {
  double gain = 0;
  int feature = -1;
  int bin = -1;
};

struct GrowingLeaf {
  IndexList rows;
  double grad = 0;
  double hess = 0;
  int node = 0;
  SplitChoice split;
};

class TreeGrower {
 public:
  TreeGrower(const BinMatrix& bins, const Binner& binner, const BoostParams& p,
             const Eigen::VectorXd& grad, const Eigen::VectorXd& hess)
      : bins_(bins), binner_(binner), p_(p), grad_(grad), hess_(hess) {}

  /// Grows one tree; adds its (shrunken) outputs to `scores` for every row.
  Tree grow(Eigen::Ref<Eigen::VectorXd> scores) {
    Tree tree;
    tree.nodes.push_back({});
    std::vector<GrowingLeaf> leaves(1);
    leaves[0].rows.resize(static_cast<std::size_t>(bins_.rows()));
    for (Index i = 0; i < bins_.rows(); ++i) leaves[0].rows[static_cast<std::size_t>(i)] = i;
    finish_leaf(leaves[0]);

    while (static_cast<int>(leaves.size()) < p_.leaf_num) {
      std::size_t best = leaves.size();
      double best_gain = 0;
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (leaves[i].split.feature >= 0 && leaves[i].split.gain > best_gain) {
          best_gain = leaves[i].split.gain;
          best = i;
        }
      }
      if (best == leaves.size()) break;

      GrowingLeaf parent = std::move(leaves[best]);
      const auto f = parent.split.feature;
      const auto b = parent.split.bin;
      GrowingLeaf left, right;
      for (Index r : parent.rows) {
        (bins_(r, f) <= b ? left.rows : right.rows).push_back(r);
      }
      const int left_id = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back({});
      tree.nodes.push_back({});
      auto& node = tree.nodes[static_cast<std::size_t>(parent.node)];
      node.feature = f;
      node.threshold = binner_.thresholds[static_cast<std::size_t>(f)][static_cast<std::size_t>(b)];
      node.left = left_id;
      node.right = left_id + 1;
      left.node = left_id;
      right.node = left_id + 1;
      finish_leaf(left);
      finish_leaf(right);
      leaves[best] = std::move(left);
      leaves.push_back(std::move(right));
    }

    tree.leaf_values.resize(static_cast<Index>(leaves.size()), 1);
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      const auto& leaf = leaves[i];
      const double value = -p_.learning_rate * leaf.grad / (leaf.hess + p_.reg_lambda);
      tree.leaf_values(static_cast<Index>(i), 0) = value;
      tree.nodes[static_cast<std::size_t>(leaf.node)].leaf = static_cast<int>(i);
      for (Index r : leaf.rows) scores(r) += value;
    }
    return tree;
  }

 private:
  void finish_leaf(GrowingLeaf& leaf) {
    leaf.grad = 0;
    leaf.hess = 0;
    for (Index r : leaf.rows) {
      leaf.grad += grad_(r);
      leaf.hess += hess_(r);
    }
    leaf.split = best_split(leaf);
  }

  SplitChoice best_split(const GrowingLeaf& leaf) {
    SplitChoice best;
    if (leaf.rows.size() < 2 || leaf.hess < 2 * p_.min_child_weight) return best;
    const double lambda = p_.reg_lambda;
    const double parent_score = leaf.grad * leaf.grad / (leaf.hess + lambda);
    for (Index f = 0; f < bins_.cols(); ++f) {
      const int nb = binner_.n_bins(f);
      if (nb < 2) continue;
      hist_g_.assign(static_cast<std::size_t>(nb), 0.0);
      hist_h_.assign(static_cast<std::size_t>(nb), 0.0);
      hist_n_.assign(static_cast<std::size_t>(nb), 0);
      for (Index r : leaf.rows) {
        const auto bin = bins_(r, f);
        hist_g_[bin] += grad_(r);
        hist_h_[bin] += hess_(r);
        ++hist_n_[bin];
      }
      double gl = 0, hl = 0;
      std::size_t nl = 0;
      for (int b = 0; b + 1 < nb; ++b) {
        gl += hist_g_[static_cast<std::size_t>(b)];
        hl += hist_h_[static_cast<std::size_t>(b)];
        nl += hist_n_[static_cast<std::size_t>(b)];
        if (hist_n_[static_cast<std::size_t>(b)] == 0) continue;
        const std::size_t nr = leaf.rows.size() - nl;
        if (nl == 0 || nr == 0) continue;
        const double gr = leaf.grad - gl;
        const double hr = leaf.hess - hl;
        if (hl < p_.min_child_weight || hr < p_.min_child_weight) continue;
        const double gain =
            0.5 * (gl * gl / (hl + lambda) + gr * gr / (hr + lambda) - parent_score);
        if (gain > best.gain + 1e-12) best = {gain, static_cast<int>(f), b};
      }
    }
    return best;
  }

  const BinMatrix& bins_;
  const Binner& binner_;
  const BoostParams& p_;
  const Eigen::VectorXd& grad_;
  const Eigen::VectorXd& hess_;
  std::vector<double> hist_g_, hist_h_;
  std::vector<std::size_t> hist_n_;
};

class BoostedModel final : public Model {
 public:
  BoostedModel(Task task, int n_outputs, Eigen::RowVectorXd base, std::vector<Tree> trees,
               Index n_features, Index train_size)
      : task_(task),
        n_outputs_(n_outputs),
        base_(std::move(base)),
        trees_(std::move(trees)),
        n_features_(n_features),
        train_size_(train_size) {}

  const std::string& learner() const override { return name_; }
  Index n_features() const override { return n_features_; }
  Index train_size() const override { return train_size_; }
  std::size_t tree_count() const override {
    return trees_.size() / static_cast<std::size_t>(n_outputs_);
  }

 protected:
  Eigen::MatrixXd predict_rows(const Eigen::MatrixXd& x) const override {
    Eigen::MatrixXd raw = base_.replicate(x.rows(), 1);
    for (std::size_t t = 0; t < trees_.size(); ++t) {
      const auto out = static_cast<Index>(t % static_cast<std::size_t>(n_outputs_));
      for (Index r = 0; r < x.rows(); ++r) {
        raw(r, out) += trees_[t].leaf_values(trees_[t].leaf_of(x.row(r)), 0);
      }
    }
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
  std::string name_ = "gbt";
  Task task_;
  int n_outputs_;
  Eigen::RowVectorXd base_;
  std::vector<Tree> trees_;
  Index n_features_;
  Index train_size_;
};

BoostParams read_params(const Assignment& c) {
  BoostParams p;
  p.tree_num = static_cast<int>(c.at("tree_num"));
  p.leaf_num = static_cast<int>(c.at("leaf_num"));
  p.min_child_weight = c.at("min_child_weight");
  p.learning_rate = c.at("learning_rate");
  p.reg_lambda = c.at("reg_lambda");
  return p;
}

}  // namespace

std::unique_ptr<Model> GradientBoostedTrees::train(const Assignment& config,
                                                   const Dataset& data, std::uint64_t) const {
  check_trainable(*this, config, data);
  const BoostParams p = read_params(config);
  const Index n = data.n_instances();
  const int k = data.task == Task::kMulticlass ? data.n_classes : 1;

  const auto binner = Binner::fit(data.features);
  const auto bins = binner.transform(data.features);

  Eigen::RowVectorXd base(k);
  if (data.task == Task::kRegression) {
    base(0) = data.labels.mean();
  } else if (data.task == Task::kBinary) {
    const double pos = std::clamp(data.labels.mean(), 1e-6, 1 - 1e-6);
    base(0) = std::log(pos / (1 - pos));
  } else {
    for (int c = 0; c < k; ++c) {
      const double share = (data.labels.array() == c).cast<double>().mean();
      base(c) = std::log(std::max(share, 1e-6));
    }
  }

  Eigen::MatrixXd scores = base.replicate(n, 1);
  Eigen::VectorXd grad(n), hess(n);
  std::vector<Tree> trees;
  trees.reserve(static_cast<std::size_t>(p.tree_num * k));
  Eigen::MatrixXd prob;
  for (int round = 0; round < p.tree_num; ++round) {
    if (data.task == Task::kMulticlass) {
      const Eigen::VectorXd row_max = scores.rowwise().maxCoeff();
      prob = (scores.colwise() - row_max).array().exp().matrix();
      const Eigen::VectorXd sums = prob.rowwise().sum();
      prob = (prob.array().colwise() / sums.array()).matrix();
    }
    for (int c = 0; c < k; ++c) {
      for (Index r = 0; r < n; ++r) {
        if (data.task == Task::kRegression) {
          grad(r) = scores(r, 0) - data.labels(r);
          hess(r) = 1.0;
        } else {
          const double pr = data.task == Task::kBinary ? 1.0 / (1.0 + std::exp(-scores(r, 0)))
                                                       : prob(r, c);
          const double y = data.task == Task::kBinary ? data.labels(r)
                                                      : (data.labels(r) == c ? 1.0 : 0.0);
          grad(r) = pr - y;
          hess(r) = std::max(pr * (1 - pr), 1e-16);
        }
      }
      TreeGrower grower(bins, binner, p, grad, hess);
      trees.push_back(grower.grow(scores.col(c)));
    }
  }
  return std::make_unique<BoostedModel>(data.task, k, base, std::move(trees), data.n_features(),
                                        n);
}

}  // namespace frugal
