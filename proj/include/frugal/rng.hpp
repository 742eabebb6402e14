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

#include <cstdint>
#include <random>

namespace frugal {

using Rng = std::mt19937_64;

/// Stable identifiers for the independent random streams drawn from one root
/// seed. Adding a consumer never perturbs the draws of existing ones.
enum class Stream : std::uint64_t {
  kShuffle = 1,
  kLearnerSampling = 2,
  kLocalSearch = 3,
  kTraining = 4,
  kSurrogateNoise = 5,
  kSplit = 6,
};

/// splitmix64 finalizer; mixes a seed with a stream id and an index.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t index = 0) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1) +
                    0xBF58476D1CE4E5B9ULL * index;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  return Rng(mix_seed(seed, static_cast<std::uint64_t>(stream), index));
}

}  // namespace frugal
