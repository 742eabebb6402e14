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
#include <vector>

namespace frugal::detail {

inline constexpr int kMaxBins = 256;

using BinMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Per-feature quantile thresholds; bin b holds values x <= thresholds[b], the
/// last bin holds everything above the largest threshold.
struct Binner {
  std::vector<std::vector<double>> thresholds;

  static Binner fit(const Eigen::MatrixXd& features, int max_bins = kMaxBins);
  BinMatrix transform(const Eigen::MatrixXd& features) const;
  int n_bins(Eigen::Index feature) const {
    return static_cast<int>(thresholds[static_cast<std::size_t>(feature)].size()) + 1;
  }
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0;
  int left = -1;
  int right = -1;
  int leaf = -1;
};

/// Binary decision tree whose leaves carry a row of `leaf_values`.
struct Tree {
  std::vector<TreeNode> nodes;
  Eigen::MatrixXd leaf_values;

  int leaf_of(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
    int i = 0;
    while (nodes[static_cast<std::size_t>(i)].feature >= 0) {
      const auto& n = nodes[static_cast<std::size_t>(i)];
      i = x(n.feature) <= n.threshold ? n.left : n.right;
    }
    return nodes[static_cast<std::size_t>(i)].leaf;
  }
};

}  // namespace frugal::detail
