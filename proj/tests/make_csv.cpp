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

// Writes synthetic CSV files for the command-line smoke tests.
//   make_csv <binary|multiclass|regression> <rows> <seed> <path>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "synthetic.hpp"

int main(int argc, char** argv) {
  if (argc != 5) {
    std::fprintf(stderr, "usage: make_csv <binary|multiclass|regression> <rows> <seed> <path>\n");
    return 2;
  }
  const std::string kind = argv[1];
  const auto rows = static_cast<frugal::Index>(std::atol(argv[2]));
  const auto seed = static_cast<std::uint64_t>(std::atoll(argv[3]));
  frugal::Dataset d;
  if (kind == "binary") {
    d = frugal::testing::make_binary(rows, 4, seed);
  } else if (kind == "multiclass") {
    d = frugal::testing::make_multiclass(rows, 4, 3, seed);
  } else if (kind == "regression") {
    d = frugal::testing::make_regression(rows, 4, seed);
  } else {
    std::fprintf(stderr, "unknown kind '%s'\n", kind.c_str());
    return 2;
  }
  std::ofstream out(argv[4]);
  out.precision(10);
  out << "f1,f2,f3,f4,y\n";
  for (frugal::Index r = 0; r < d.n_instances(); ++r) {
    for (frugal::Index c = 0; c < d.n_features(); ++c) out << d.features(r, c) << ",";
    out << d.labels(r) << "\n";
  }
  return out ? 0 : 1;
}
