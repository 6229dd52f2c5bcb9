// Copyright 2026 The Tonoseg Authors
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

// Portable sampling on top of std::mt19937_64. The standard distributions are
// implementation-defined, so conversions are spelled out here: a uniform
// draw takes the top 53 bits of one engine output, and a categorical draw
// returns the first index whose running sum exceeds one uniform draw.

#ifndef TONOSEG_RANDOM_H_
#define TONOSEG_RANDOM_H_

#include <cstddef>
#include <random>
#include <span>

namespace tonoseg {

using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::size_t sample_categorical(Rng& rng, std::span<const double> probs) {
  const double u = uniform01(rng);
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    cumulative += probs[i];
    last_positive = i;
    if (u < cumulative) return i;
  }
  // Rounding left the sum just under u.
  return last_positive;
}

}  // namespace tonoseg

#endif  // TONOSEG_RANDOM_H_
