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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace frugal {

enum class DimKind { kFloat, kInt, kCategorical };
enum class Scale { kLinear, kLog };

std::string_view to_string(Scale scale);
Scale parse_scale(std::string_view name);

/// One hyperparameter. Categorical dims store the chosen index as a double and
/// ignore `low`, `high` and `scale`.
struct Dim {
  std::string name;
  DimKind kind = DimKind::kFloat;
  double low = 0;
  double high = 1;
  Scale scale = Scale::kLinear;
  std::vector<std::string> choices;
  bool cost_related = false;
  double init = 0;

  static Dim real(std::string name, double low, double high, Scale scale, double init,
                  bool cost_related = false);
  static Dim integer(std::string name, double low, double high, Scale scale, double init,
                     bool cost_related = false);
  static Dim categorical(std::string name, std::vector<std::string> choices,
                         std::size_t init = 0);

  /// Native value -> [0, 1].
  double to_unit(double value) const;
  /// [0, 1] -> native value; coordinates outside [0, 1] are clamped first.
  double from_unit(double u) const;
  bool contains(double value) const;
};

/// Replacement range, scale and initial value for a numeric dim.
struct DimOverride {
  double low = 0;
  double high = 1;
  Scale scale = Scale::kLinear;
  double init = 0;
};

/// Hyperparameter assignment keyed by dim name.
using Assignment = std::map<std::string, double>;

/// Domain of a learner's hyperparameters together with its low-cost initial
/// point. Local search works on the unit hypercube [0, 1]^d.
class SearchSpace {
 public:
  SearchSpace() = default;
  explicit SearchSpace(std::vector<Dim> dims);

  Eigen::Index dimension() const { return static_cast<Eigen::Index>(dims_.size()); }
  const std::vector<Dim>& dims() const { return dims_; }
  const Dim& dim(std::string_view name) const;
  bool has(std::string_view name) const;

  Assignment init() const;
  bool contains(const Assignment& a) const;

  Eigen::VectorXd to_unit(const Assignment& a) const;
  Assignment from_unit(const Eigen::Ref<const Eigen::VectorXd>& point) const;

  /// Replaces the range, scale and initial value of an existing numeric dim.
  void override_dim(std::string_view name, const DimOverride& o);

  /// Human-readable value, e.g. the choice name for categorical dims.
  std::string format_value(std::string_view name, double value) const;

 private:
  void validate() const;
  std::vector<Dim> dims_;
};

/// Upper bound for tree and leaf counts: min(cap, n_train), never below `low`.
double capped_count(double cap, Eigen::Index n_train, double low);

/// Built-in space for "gbt", "rf" or "lr"; `n_train` caps tree and leaf counts.
SearchSpace default_space(std::string_view learner, Eigen::Index n_train);

}  // namespace frugal
