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
#include <numeric>

#include "frugal/error.hpp"
#include "frugal/learners.hpp"
#include "frugal/rng.hpp"
#include "tree_common.hpp"

namespace frugal {
namespace {

using detail::BinMatrix;
using detail::Binner;
using detail::Tree;

enum class Criterion { kGini, kEntropy };

double impurity(const double* counts, int k, double total, Criterion c) {
  if (total <= 0) return 0;
  double v = c == Criterion::kGini ? 1.0 : 0.0;
  for (int j = 0; j < k; ++j) {
    const double p = counts[j] / total;
    if (c == Criterion::kGini) {
      v -= p * p;
    } else if (p > 0) {
      v -= p * std::log2(p);
    }
  }
  return v;
}

class CartBuilder {
 public:
  CartBuilder(const Dataset& data, const BinMatrix& bins, const Binner& binner,
              Index features_per_split, Criterion criterion, Rng& rng)
      : data_(data),
        bins_(bins),
        binner_(binner),
        mtry_(features_per_split),
        criterion_(criterion),
        rng_(rng),
        k_(is_classification(data.task) ? data.n_classes : 1),
        feature_pool_(static_cast<std::size_t>(data.n_features())) {
    std::iota(feature_pool_.begin(), feature_pool_.end(), Index{0});
  }

  Tree build(IndexList rows) {
    Tree tree;
    std::vector<std::vector<double>> leaves;
    struct Pending {
      IndexList rows;
      int node;
    };
    std::vector<Pending> stack;
    tree.nodes.push_back({});
    stack.push_back({std::move(rows), 0});
    while (!stack.empty()) {
      Pending item = std::move(stack.back());
      stack.pop_back();
      const auto split = best_split(item.rows);
      if (split.feature < 0) {
        tree.nodes[static_cast<std::size_t>(item.node)].leaf = static_cast<int>(leaves.size());
        leaves.push_back(leaf_value(item.rows));
        continue;
      }
      IndexList left, right;
      for (Index r : item.rows) (bins_(r, split.feature) <= split.bin ? left : right).push_back(r);
      const int left_id = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back({});
      tree.nodes.push_back({});
      auto& node = tree.nodes[static_cast<std::size_t>(item.node)];
      node.feature = split.feature;
      node.threshold =
          binner_.thresholds[static_cast<std::size_t>(split.feature)][static_cast<std::size_t>(split.bin)];
      node.left = left_id;
      node.right = left_id + 1;
      stack.push_back({std::move(right), left_id + 1});
      stack.push_back({std::move(left), left_id});
    }
    tree.leaf_values.resize(static_cast<Index>(leaves.size()), k_);
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      for (int j = 0; j < k_; ++j) tree.leaf_values(static_cast<Index>(i), j) = leaves[i][static_cast<std::size_t>(j)];
    }
    return tree;
  }

 private:
  struct Split {
    int feature = -1;
    int bin = -1;
  };

  std::vector<double> leaf_value(const IndexList& rows) const {
    std::vector<double> v(static_cast<std::size_t>(k_), 0.0);
    if (is_classification(data_.task)) {
      for (Index r : rows) v[static_cast<std::size_t>(data_.labels(r))] += 1;
      for (auto& x : v) x /= static_cast<double>(rows.size());
    } else {
      for (Index r : rows) v[0] += data_.labels(r);
      v[0] /= static_cast<double>(rows.size());
    }
    return v;
  }

  Split best_split(const IndexList& rows) {
    Split best;
    if (rows.size() < 2) return best;
    const bool cls = is_classification(data_.task);
    // Node totals: class counts, or (sum, sum of squares) for regression.
    std::vector<double> total(static_cast<std::size_t>(cls ? k_ : 2), 0.0);
    for (Index r : rows) {
      if (cls) {
        total[static_cast<std::size_t>(data_.labels(r))] += 1;
      } else {
        total[0] += data_.labels(r);
        total[1] += data_.labels(r) * data_.labels(r);
      }
    }
    const auto n = static_cast<double>(rows.size());
    const double parent = cls ? n * impurity(total.data(), k_, n, criterion_)
                              : total[1] - total[0] * total[0] / n;
    if (parent <= 1e-12) return best;

    // Partial Fisher-Yates draw of the candidate features.
    for (Index i = 0; i < mtry_; ++i) {
      std::uniform_int_distribution<Index> pick(i, static_cast<Index>(feature_pool_.size()) - 1);
      std::swap(feature_pool_[static_cast<std::size_t>(i)],
                feature_pool_[static_cast<std::size_t>(pick(rng_))]);
    }
    const auto width = static_cast<std::size_t>(cls ? k_ : 2);
    double best_gain = 1e-12;
    for (Index i = 0; i < mtry_; ++i) {
      const Index f = feature_pool_[static_cast<std::size_t>(i)];
      const int nb = binner_.n_bins(f);
      if (nb < 2) continue;
      hist_.assign(static_cast<std::size_t>(nb) * width, 0.0);
      count_.assign(static_cast<std::size_t>(nb), 0.0);
      int lo = nb, hi = -1;
      for (Index r : rows) {
        const int b = bins_(r, f);
        lo = std::min(lo, b);
        hi = std::max(hi, b);
        count_[static_cast<std::size_t>(b)] += 1;
        double* h = &hist_[static_cast<std::size_t>(b) * width];
        if (cls) {
          h[static_cast<std::size_t>(data_.labels(r))] += 1;
        } else {
          h[0] += data_.labels(r);
          h[1] += data_.labels(r) * data_.labels(r);
        }
      }
      if (lo == hi) continue;
      left_.assign(width, 0.0);
      right_.resize(width);
      double nl = 0;
      for (int b = lo; b < hi; ++b) {
        const double* h = &hist_[static_cast<std::size_t>(b) * width];
        for (std::size_t j = 0; j < width; ++j) left_[j] += h[j];
        nl += count_[static_cast<std::size_t>(b)];
        if (count_[static_cast<std::size_t>(b)] == 0) continue;
        const double nr = n - nl;
        for (std::size_t j = 0; j < width; ++j) right_[j] = total[j] - left_[j];
        double child = 0;
        if (cls) {
          child = nl * impurity(left_.data(), k_, nl, criterion_) +
                  nr * impurity(right_.data(), k_, nr, criterion_);
        } else {
          child = (left_[1] - left_[0] * left_[0] / nl) + (right_[1] - right_[0] * right_[0] / nr);
        }
        const double gain = parent - child;
        if (gain > best_gain) {
          best_gain = gain;
          best = {static_cast<int>(f), b};
        }
      }
    }
    return best;
  }

  const Dataset& data_;
  const BinMatrix& bins_;
  const Binner& binner_;
  Index mtry_;
  Criterion criterion_;
  Rng& rng_;
  int k_;
  IndexList feature_pool_;
  std::vector<double> hist_, count_, left_, right_;
};

class ForestModel final : public Model {
 public:
  ForestModel(Task task, std::vector<Tree> trees, Index n_features, Index train_size)
      : task_(task), trees_(std::move(trees)), n_features_(n_features), train_size_(train_size) {}

  const std::string& learner() const override { return name_; }
  Index n_features() const override { return n_features_; }
  Index train_size() const override { return train_size_; }
  std::size_t tree_count() const override { return trees_.size(); }

 protected:
  Eigen::MatrixXd predict_rows(const Eigen::MatrixXd& x) const override {
    const Index k = trees_.front().leaf_values.cols();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(x.rows(), k);
    for (const auto& t : trees_) {
      for (Index r = 0; r < x.rows(); ++r) out.row(r) += t.leaf_values.row(t.leaf_of(x.row(r)));
    }
    out /= static_cast<double>(trees_.size());
    if (is_classification(task_)) {
      // Renormalize against rounding drift.
      const Eigen::VectorXd sums = out.rowwise().sum();
      out = (out.array().colwise() / sums.array()).matrix();
    }
    return out;
  }

 private:
  std::string name_ = "rf";
  Task task_;
  std::vector<Tree> trees_;
  Index n_features_;
  Index train_size_;
};

}  // namespace

std::unique_ptr<Model> RandomForest::train(const Assignment& config, const Dataset& data,
                                           std::uint64_t seed) const {
  check_trainable(*this, config, data);
  const auto tree_num = static_cast<int>(config.at("tree_num"));
  const double fraction = config.at("max_features_fraction");
  const auto criterion =
      config.at("split_criterion") == 0.0 ? Criterion::kGini : Criterion::kEntropy;
  const Index n = data.n_instances();
  const Index mtry = std::clamp<Index>(
      static_cast<Index>(std::lround(fraction * static_cast<double>(data.n_features()))), 1,
      data.n_features());

  const auto binner = Binner::fit(data.features);
  const auto bins = binner.transform(data.features);
  std::vector<Tree> trees;
  trees.reserve(static_cast<std::size_t>(tree_num));
  for (int t = 0; t < tree_num; ++t) {
    auto rng = make_rng(seed, Stream::kTraining, static_cast<std::uint64_t>(t));
    std::uniform_int_distribution<Index> draw(0, n - 1);
    IndexList sample(static_cast<std::size_t>(n));
    for (auto& r : sample) r = draw(rng);
    CartBuilder builder(data, bins, binner, mtry, criterion, rng);
    trees.push_back(builder.build(std::move(sample)));
  }
  return std::make_unique<ForestModel>(data.task, std::move(trees), data.n_features(), n);
}

}  // namespace frugal
