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

#include "frugal/space.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "frugal/error.hpp"

namespace frugal {

std::string_view to_string(Scale scale) { return scale == Scale::kLog ? "log" : "linear"; }

Scale parse_scale(std::string_view name) {
  if (name == "log") return Scale::kLog;
  if (name == "linear") return Scale::kLinear;
  throw Error("unknown scale '" + std::string(name) + "'");
}

Dim Dim::real(std::string name, double low, double high, Scale scale, double init,
              bool cost_related) {
  return {std::move(name), DimKind::kFloat, low, high, scale, {}, cost_related, init};
}

Dim Dim::integer(std::string name, double low, double high, Scale scale, double init,
                 bool cost_related) {
  return {std::move(name), DimKind::kInt, low, high, scale, {}, cost_related, init};
}

Dim Dim::categorical(std::string name, std::vector<std::string> choices, std::size_t init) {
  const auto m = static_cast<double>(choices.size());
  return {std::move(name), DimKind::kCategorical, 0, m - 1, Scale::kLinear,
          std::move(choices), false, static_cast<double>(init)};
}

double Dim::to_unit(double value) const {
  if (kind == DimKind::kCategorical) {
    return (value + 0.5) / static_cast<double>(choices.size());
  }
  if (high == low) return 0.0;
  if (scale == Scale::kLog) {
    return (std::log(value) - std::log(low)) / (std::log(high) - std::log(low));
  }
  return (value - low) / (high - low);
}

double Dim::from_unit(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  if (kind == DimKind::kCategorical) {
    const auto m = static_cast<double>(choices.size());
    // Partition boundaries belong to the lower choice.
    return std::clamp(std::ceil(u * m) - 1.0, 0.0, m - 1.0);
  }
  double v = low;
  if (high != low) {
    v = scale == Scale::kLog ? std::exp(std::log(low) + u * (std::log(high) - std::log(low)))
                             : low + u * (high - low);
  }
  if (u == 0.0) v = low;
  if (u == 1.0) v = high;
  if (kind == DimKind::kInt) v = std::floor(v + 0.5);
  return std::clamp(v, low, high);
}

bool Dim::contains(double value) const {
  if (!std::isfinite(value) || value < low || value > high) return false;
  if (kind != DimKind::kFloat) return value == std::floor(value);
  return true;
}

SearchSpace::SearchSpace(std::vector<Dim> dims) : dims_(std::move(dims)) { validate(); }

void SearchSpace::validate() const {
  if (dims_.empty()) throw Error("search space needs at least one dimension");
  std::set<std::string> names;
  for (const auto& d : dims_) {
    if (!names.insert(d.name).second) throw Error("duplicate dimension '" + d.name + "'");
    if (d.kind == DimKind::kCategorical) {
      if (d.choices.empty()) throw Error("categorical dimension '" + d.name + "' has no choices");
    } else {
      if (!(d.low <= d.high)) throw Error("dimension '" + d.name + "' has low > high");
      if (d.scale == Scale::kLog && d.low <= 0) {
        throw Error("log-scaled dimension '" + d.name + "' needs positive bounds");
      }
    }
    if (!d.contains(d.init)) throw Error("initial value of '" + d.name + "' outside its range");
  }
}

const Dim& SearchSpace::dim(std::string_view name) const {
  for (const auto& d : dims_) {
    if (d.name == name) return d;
  }
  throw Error("unknown hyperparameter '" + std::string(name) + "'");
}

bool SearchSpace::has(std::string_view name) const {
  return std::any_of(dims_.begin(), dims_.end(), [&](const Dim& d) { return d.name == name; });
}

Assignment SearchSpace::init() const {
  Assignment a;
  for (const auto& d : dims_) a[d.name] = d.init;
  return a;
}

bool SearchSpace::contains(const Assignment& a) const {
  if (a.size() != dims_.size()) return false;
  return std::all_of(dims_.begin(), dims_.end(), [&](const Dim& d) {
    const auto it = a.find(d.name);
    return it != a.end() && d.contains(it->second);
  });
}

Eigen::VectorXd SearchSpace::to_unit(const Assignment& a) const {
  Eigen::VectorXd u(dimension());
  for (Eigen::Index i = 0; i < dimension(); ++i) {
    const auto& d = dims_[static_cast<std::size_t>(i)];
    const auto it = a.find(d.name);
    if (it == a.end()) throw Error("assignment lacks '" + d.name + "'");
    u(i) = d.to_unit(it->second);
  }
  return u;
}

Assignment SearchSpace::from_unit(const Eigen::Ref<const Eigen::VectorXd>& point) const {
  if (point.size() != dimension()) throw Error("unit point has wrong dimension");
  Assignment a;
  for (Eigen::Index i = 0; i < dimension(); ++i) {
    const auto& d = dims_[static_cast<std::size_t>(i)];
    a[d.name] = d.from_unit(point(i));
  }
  return a;
}

void SearchSpace::override_dim(std::string_view name, const DimOverride& o) {
  auto it = std::find_if(dims_.begin(), dims_.end(), [&](const Dim& d) { return d.name == name; });
  if (it == dims_.end()) throw Error("cannot override unknown dimension '" + std::string(name) + "'");
  if (it->kind == DimKind::kCategorical) {
    throw Error("cannot override the range of categorical dimension '" + std::string(name) + "'");
  }
  const Dim saved = *it;
  it->low = o.low;
  it->high = o.high;
  it->scale = o.scale;
  it->init = o.init;
  try {
    validate();
  } catch (...) {
    *it = saved;
    throw;
  }
}

std::string SearchSpace::format_value(std::string_view name, double value) const {
  const auto& d = dim(name);
  if (d.kind == DimKind::kCategorical) return d.choices.at(static_cast<std::size_t>(value));
  std::ostringstream os;
  os << value;
  return os.str();
}

double capped_count(double cap, Eigen::Index n_train, double low) {
  return std::max(low, std::min(cap, static_cast<double>(n_train)));
}

SearchSpace default_space(std::string_view learner, Eigen::Index n_train) {
  if (learner == "gbt") {
    return SearchSpace({
        Dim::integer("tree_num", 4, capped_count(32768, n_train, 4), Scale::kLog, 4, true),
        Dim::integer("leaf_num", 4, capped_count(32768, n_train, 4), Scale::kLog, 4, true),
        Dim::real("min_child_weight", 0.01, 20, Scale::kLog, 20),
        Dim::real("learning_rate", 0.01, 1.0, Scale::kLog, 0.1),
        Dim::real("reg_lambda", 1e-10, 1.0, Scale::kLog, 1.0),
    });
  }
  if (learner == "rf") {
    return SearchSpace({
        Dim::integer("tree_num", 4, capped_count(2048, n_train, 4), Scale::kLog, 4, true),
        Dim::real("max_features_fraction", 0.1, 1.0, Scale::kLinear, 1.0),
        Dim::categorical("split_criterion", {"gini", "entropy"}, 0),
    });
  }
  if (learner == "lr") {
    return SearchSpace({Dim::real("C", 0.03125, 32768, Scale::kLog, 1.0)});
  }
  throw Error("no default search space for learner '" + std::string(learner) + "'");
}

}  // namespace frugal
