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

#include <cmath>
#include <random>

#include "frugal/dataset.hpp"

namespace frugal::testing {

/// Binary task whose label follows a nonlinear rule of the first features,
/// with a fraction of flipped labels.
inline Dataset make_binary(Index n, Index f, std::uint64_t seed, double flip = 0.05) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0, 1);
  Dataset d;
  d.task = Task::kBinary;
  d.n_classes = 2;
  d.class_names = {"0", "1"};
  d.features.resize(n, f);
  d.labels.resize(n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < f; ++c) d.features(r, c) = normal(g);
    const double x0 = d.features(r, 0), x1 = f > 1 ? d.features(r, 1) : 0.0;
    const double x2 = f > 2 ? d.features(r, 2) : 0.0;
    bool y = x0 * x1 + std::sin(2 * x2) + 0.5 * x0 * x0 > 0.5;
    if (unit(g) < flip) y = !y;
    d.labels(r) = y ? 1.0 : 0.0;
  }
  return d;
}

inline Dataset make_regression(Index n, Index f, std::uint64_t seed, double noise = 0.1) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> normal;
  Dataset d;
  d.task = Task::kRegression;
  d.features.resize(n, f);
  d.labels.resize(n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < f; ++c) d.features(r, c) = normal(g);
    d.labels(r) = 2 * d.features(r, 0) - d.features(r, f > 1 ? 1 : 0) + noise * normal(g);
  }
  return d;
}

inline Dataset make_multiclass(Index n, Index f, int k, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> normal;
  Dataset d;
  d.task = Task::kMulticlass;
  d.n_classes = k;
  for (int c = 0; c < k; ++c) d.class_names.push_back(std::to_string(c));
  d.features.resize(n, f);
  d.labels.resize(n);
  for (Index r = 0; r < n; ++r) {
    const int y = static_cast<int>(r % k);
    for (Index c = 0; c < f; ++c) d.features(r, c) = normal(g) + (c == y % f ? 2.0 : 0.0);
    d.labels(r) = y;
  }
  return d;
}

}  // namespace frugal::testing
