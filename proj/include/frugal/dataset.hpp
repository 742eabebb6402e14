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
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace frugal {

enum class Task { kBinary, kMulticlass, kRegression };

std::string_view to_string(Task task);
Task parse_task(std::string_view name);
inline bool is_classification(Task task) { return task != Task::kRegression; }

using Index = Eigen::Index;
using IndexList = std::vector<Index>;

/// Dense tabular data. Rows are instances. For classification, labels hold
/// class indices in [0, n_classes) stored as doubles.
struct Dataset {
  Eigen::MatrixXd features;
  Eigen::VectorXd labels;
  Task task = Task::kRegression;
  int n_classes = 0;
  /// Original label text per class index (classification only).
  std::vector<std::string> class_names;
  std::vector<std::string> feature_names;

  Index n_instances() const { return features.rows(); }
  Index n_features() const { return features.cols(); }

  /// Throws Error if labels and features disagree or a class index is invalid.
  void validate() const;
};

/// Rows of `d` at `rows`, in that order.
Dataset subset(const Dataset& d, const IndexList& rows);

/// Label column chosen by header name or by zero-based position.
using ColumnSelector = std::variant<std::string, std::size_t>;

/// Reads a comma-separated file whose first line is a header. Every non-label
/// cell must be numeric. Classification labels are re-indexed densely from 0
/// in sorted order (numeric order when all labels are numbers).
/// `Task::kBinary` rejects files with more than two classes.
Dataset load_csv(const std::filesystem::path& path, Task task,
                 const ColumnSelector& label_column);

/// Same as load_csv but reading from an in-memory string; `origin` is used in
/// error messages.
Dataset parse_csv(std::string_view text, Task task,
                  const ColumnSelector& label_column,
                  std::string_view origin = "<memory>");

/// A fixed random order over a dataset's rows. Prefixes of the order are the
/// training samples of increasing size.
struct ShuffledView {
  const Dataset* base = nullptr;
  IndexList permutation;
  std::uint64_t seed = 0;
};

/// Uniform permutation for regression. For classification the per-class rows
/// are shuffled independently and interleaved so that every prefix keeps the
/// global class proportions to within one instance per class.
ShuffledView shuffle(const Dataset& d, std::uint64_t seed);

/// The stratified order only, as indices into `labels`.
IndexList stratified_order(const Eigen::VectorXd& labels, int n_classes,
                           std::uint64_t seed);

/// First `s` rows of the shuffled order.
Dataset prefix(const ShuffledView& view, Index s);

struct ResamplingPlan {
  enum class Kind { kCrossValidation, kHoldout };
  Kind kind = Kind::kHoldout;
  int k = 5;
  double rho = 0.1;

  static ResamplingPlan cv(int k = 5) { return {Kind::kCrossValidation, k, 0.1}; }
  static ResamplingPlan holdout(double rho = 0.1) { return {Kind::kHoldout, 5, rho}; }

  bool is_cv() const { return kind == Kind::kCrossValidation; }
  void validate() const;
  bool operator==(const ResamplingPlan&) const = default;
};

std::string_view to_string(ResamplingPlan::Kind kind);

/// Number of validation rows a holdout of `rho` takes out of `n` rows.
Index holdout_size(Index n, double rho);

struct SplitPair {
  IndexList train;
  IndexList validation;
};

/// Resampling partitions over the rows of `d`. Rows are shuffled (stratified
/// for classification) with `seed`. Cross-validation assigns shuffled position
/// j to fold j mod k; holdout validates on the last holdout_size(n, rho) rows.
std::vector<SplitPair> split(const Dataset& d, const ResamplingPlan& plan,
                             std::uint64_t seed);

}  // namespace frugal
