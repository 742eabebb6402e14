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

#include "frugal/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "frugal/error.hpp"
#include "frugal/rng.hpp"

namespace frugal {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

bool parse_number(std::string_view s, double& value) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  return ec == std::errc() && ptr == end && std::isfinite(value);
}

}  // namespace

std::string_view to_string(Task task) {
  switch (task) {
    case Task::kBinary: return "binary";
    case Task::kMulticlass: return "multiclass";
    case Task::kRegression: return "regression";
  }
  return "unknown";
}

Task parse_task(std::string_view name) {
  if (name == "binary") return Task::kBinary;
  if (name == "multiclass") return Task::kMulticlass;
  if (name == "regression") return Task::kRegression;
  throw Error("unknown task '" + std::string(name) +
              "' (expected binary, multiclass, classification or regression)");
}

std::string_view to_string(ResamplingPlan::Kind kind) {
  return kind == ResamplingPlan::Kind::kCrossValidation ? "cv" : "holdout";
}

void Dataset::validate() const {
  if (labels.size() != features.rows()) {
    throw Error("label count " + std::to_string(labels.size()) +
                " does not match row count " + std::to_string(features.rows()));
  }
  if (is_classification(task)) {
    for (Index i = 0; i < labels.size(); ++i) {
      const double y = labels(i);
      if (y < 0 || y >= n_classes || y != std::floor(y)) {
        throw Error("row " + std::to_string(i) + ": label " + std::to_string(y) +
                    " is not a class index in [0, " + std::to_string(n_classes) + ")");
      }
    }
  }
}

Dataset subset(const Dataset& d, const IndexList& rows) {
  Dataset out;
  out.task = d.task;
  out.n_classes = d.n_classes;
  out.class_names = d.class_names;
  out.feature_names = d.feature_names;
  out.features = d.features(rows, Eigen::all);
  out.labels = d.labels(rows);
  return out;
}

Dataset parse_csv(std::string_view text, Task task, const ColumnSelector& label_column,
                  std::string_view origin) {
  const std::string where(origin);
  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start < text.size()) {
      auto nl = text.find('\n', start);
      if (nl == std::string_view::npos) nl = text.size();
      auto line = text.substr(start, nl - start);
      if (!trim(line).empty()) lines.push_back(line);
      start = nl + 1;
    }
  }
  if (lines.empty()) throw Error(where + ": empty file");
  const auto header = split_fields(lines.front());
  const std::size_t n_cols = header.size();

  std::size_t label_idx = 0;
  if (const auto* name = std::get_if<std::string>(&label_column)) {
    const auto it = std::find(header.begin(), header.end(), std::string_view(*name));
    if (it == header.end()) {
      throw Error(where + ": label column '" + *name + "' not found in header");
    }
    label_idx = static_cast<std::size_t>(it - header.begin());
  } else {
    label_idx = std::get<std::size_t>(label_column);
    if (label_idx >= n_cols) {
      throw Error(where + ": label column index " + std::to_string(label_idx) +
                  " out of range (" + std::to_string(n_cols) + " columns)");
    }
  }

  const Index n_rows = static_cast<Index>(lines.size() - 1);
  if (n_rows == 0) throw Error(where + ": no data rows");
  Dataset d;
  d.task = task;
  d.features.resize(n_rows, static_cast<Index>(n_cols - 1));
  for (std::size_t c = 0; c < n_cols; ++c) {
    if (c != label_idx) d.feature_names.emplace_back(header[c]);
  }
  std::vector<std::string> raw_labels(static_cast<std::size_t>(n_rows));

  for (Index r = 0; r < n_rows; ++r) {
    const auto fields = split_fields(lines[static_cast<std::size_t>(r + 1)]);
    const auto row_no = std::to_string(r + 2);
    if (fields.size() != n_cols) {
      throw Error(where + ": row " + row_no + " has " + std::to_string(fields.size()) +
                  " fields, expected " + std::to_string(n_cols));
    }
    Index col = 0;
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (c == label_idx) {
        raw_labels[static_cast<std::size_t>(r)] = std::string(fields[c]);
        continue;
      }
      double v = 0;
      if (!parse_number(fields[c], v)) {
        throw Error(where + ": row " + row_no + ", column '" + std::string(header[c]) +
                    "': non-numeric value '" + std::string(fields[c]) + "'");
      }
      d.features(r, col++) = v;
    }
  }

  d.labels.resize(n_rows);
  if (task == Task::kRegression) {
    for (Index r = 0; r < n_rows; ++r) {
      double v = 0;
      if (!parse_number(raw_labels[static_cast<std::size_t>(r)], v)) {
        throw Error(where + ": row " + std::to_string(r + 2) + ", column '" +
                    std::string(header[label_idx]) + "': non-numeric label '" +
                    raw_labels[static_cast<std::size_t>(r)] + "'");
      }
      d.labels(r) = v;
    }
  } else {
    std::vector<std::string> names = raw_labels;
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    std::vector<double> numeric(names.size());
    bool all_numeric = true;
    for (std::size_t i = 0; i < names.size() && all_numeric; ++i) {
      all_numeric = parse_number(names[i], numeric[i]);
    }
    if (all_numeric) {
      std::vector<std::size_t> order(names.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](auto a, auto b) { return numeric[a] < numeric[b]; });
      std::vector<std::string> sorted;
      for (auto i : order) sorted.push_back(names[i]);
      names = std::move(sorted);
    }
    if (task == Task::kBinary && names.size() > 2) {
      throw Error(where + ": binary task but label column has " +
                  std::to_string(names.size()) + " classes");
    }
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);
    for (Index r = 0; r < n_rows; ++r) {
      d.labels(r) = index.at(raw_labels[static_cast<std::size_t>(r)]);
    }
    d.class_names = std::move(names);
    d.n_classes = task == Task::kBinary ? 2 : static_cast<int>(d.class_names.size());
    if (task == Task::kBinary && d.class_names.size() == 1) d.class_names.push_back("<absent>");
  }
  d.validate();
  return d;
}

Dataset load_csv(const std::filesystem::path& path, Task task,
                 const ColumnSelector& label_column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), task, label_column, path.string());
}

IndexList stratified_order(const Eigen::VectorXd& labels, int n_classes,
                           std::uint64_t seed) {
  const Index n = labels.size();
  std::vector<IndexList> by_class(static_cast<std::size_t>(n_classes));
  for (Index i = 0; i < n; ++i) by_class[static_cast<std::size_t>(labels(i))].push_back(i);
  auto rng = make_rng(seed, Stream::kShuffle);
  for (auto& rows : by_class) std::shuffle(rows.begin(), rows.end(), rng);

  // Each position goes to the class that lags furthest behind its share.
  std::vector<std::size_t> taken(by_class.size(), 0);
  IndexList order;
  order.reserve(static_cast<std::size_t>(n));
  for (Index pos = 1; pos <= n; ++pos) {
    std::size_t pick = by_class.size();
    double best_deficit = -1e300;
    for (std::size_t c = 0; c < by_class.size(); ++c) {
      if (taken[c] == by_class[c].size()) continue;
      const double deficit = static_cast<double>(pos) * static_cast<double>(by_class[c].size()) /
                                 static_cast<double>(n) -
                             static_cast<double>(taken[c]);
      if (deficit > best_deficit) {
        best_deficit = deficit;
        pick = c;
      }
    }
    order.push_back(by_class[pick][taken[pick]++]);
  }
  return order;
}

ShuffledView shuffle(const Dataset& d, std::uint64_t seed) {
  ShuffledView view{&d, {}, seed};
  if (is_classification(d.task)) {
    view.permutation = stratified_order(d.labels, d.n_classes, seed);
  } else {
    view.permutation.resize(static_cast<std::size_t>(d.n_instances()));
    std::iota(view.permutation.begin(), view.permutation.end(), Index{0});
    auto rng = make_rng(seed, Stream::kShuffle);
    std::shuffle(view.permutation.begin(), view.permutation.end(), rng);
  }
  return view;
}

Dataset prefix(const ShuffledView& view, Index s) {
  if (view.base == nullptr) throw Error("prefix: view has no dataset");
  if (s < 1 || s > view.base->n_instances()) {
    throw Error("prefix: sample size " + std::to_string(s) + " outside [1, " +
                std::to_string(view.base->n_instances()) + "]");
  }
  const IndexList rows(view.permutation.begin(), view.permutation.begin() + s);
  return subset(*view.base, rows);
}

void ResamplingPlan::validate() const {
  if (is_cv() && k < 2) throw Error("cross-validation needs k >= 2");
  if (!is_cv() && !(rho > 0 && rho < 1)) throw Error("holdout ratio must lie in (0, 1)");
}

Index holdout_size(Index n, double rho) {
  const auto v = static_cast<Index>(std::ceil(rho * static_cast<double>(n) - 1e-9));
  return std::clamp<Index>(v, 1, std::max<Index>(1, n - 1));
}

std::vector<SplitPair> split(const Dataset& d, const ResamplingPlan& plan,
                             std::uint64_t seed) {
  plan.validate();
  const Index n = d.n_instances();
  if (plan.is_cv() && n < plan.k) {
    throw Error("cross-validation with k=" + std::to_string(plan.k) + " needs at least " +
                std::to_string(plan.k) + " rows, got " + std::to_string(n));
  }
  if (!plan.is_cv() && n < 2) throw Error("holdout needs at least 2 rows");

  const auto view = shuffle(d, mix_seed(seed, static_cast<std::uint64_t>(Stream::kSplit)));
  const auto& order = view.permutation;
  std::vector<SplitPair> out;
  if (plan.is_cv()) {
    out.resize(static_cast<std::size_t>(plan.k));
    for (std::size_t j = 0; j < order.size(); ++j) {
      const auto fold = j % static_cast<std::size_t>(plan.k);
      for (std::size_t f = 0; f < out.size(); ++f) {
        (f == fold ? out[f].validation : out[f].train).push_back(order[j]);
      }
    }
  } else {
    const auto n_val = static_cast<std::size_t>(holdout_size(n, plan.rho));
    const auto cut = order.size() - n_val;
    out.push_back({IndexList(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cut)),
                   IndexList(order.begin() + static_cast<std::ptrdiff_t>(cut), order.end())});
  }
  return out;
}

}  // namespace frugal
