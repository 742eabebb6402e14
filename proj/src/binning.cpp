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

#include "tree_common.hpp"

namespace frugal::detail {

Binner Binner::fit(const Eigen::MatrixXd& features, int max_bins) {
  Binner b;
  b.thresholds.resize(static_cast<std::size_t>(features.cols()));
  std::vector<double> column;
  for (Eigen::Index f = 0; f < features.cols(); ++f) {
    column.assign(features.col(f).data(), features.col(f).data() + features.rows());
    std::sort(column.begin(), column.end());
    auto& t = b.thresholds[static_cast<std::size_t>(f)];
    std::vector<double> uniq = column;
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    if (static_cast<int>(uniq.size()) <= max_bins) {
      for (std::size_t i = 0; i + 1 < uniq.size(); ++i) t.push_back(0.5 * (uniq[i] + uniq[i + 1]));
    } else {
      const auto n = column.size();
      for (int q = 1; q < max_bins; ++q) {
        const auto idx = static_cast<std::size_t>(static_cast<double>(q) * static_cast<double>(n) /
                                                  static_cast<double>(max_bins));
        t.push_back(column[std::min(idx, n - 1)]);
      }
      t.erase(std::unique(t.begin(), t.end()), t.end());
      // The top threshold must leave something in the last bin.
      while (!t.empty() && t.back() >= column.back()) t.pop_back();
    }
  }
  return b;
}

BinMatrix Binner::transform(const Eigen::MatrixXd& features) const {
  BinMatrix bins(features.rows(), features.cols());
  for (Eigen::Index f = 0; f < features.cols(); ++f) {
    const auto& t = thresholds[static_cast<std::size_t>(f)];
    for (Eigen::Index r = 0; r < features.rows(); ++r) {
      bins(r, f) = static_cast<std::uint8_t>(
          std::lower_bound(t.begin(), t.end(), features(r, f)) - t.begin());
    }
  }
  return bins;
}

}  // namespace frugal::detail
