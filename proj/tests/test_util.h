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

// Seeded generators shared by the unit and acceptance suites.

#ifndef TONOSEG_TESTS_TEST_UTIL_H_
#define TONOSEG_TESTS_TEST_UTIL_H_

#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "tonoseg/prosody.h"
#include "tonoseg/random.h"
#include "tonoseg/synth.h"

namespace tonoseg::testing {

inline std::vector<double> random_distribution(Rng& rng, std::size_t n,
                                               double zero_prob = 0.0) {
  std::vector<double> p(n);
  for (auto& x : p) x = uniform01(rng) < zero_prob ? 0.0 : 0.05 + uniform01(rng);
  if (std::accumulate(p.begin(), p.end(), 0.0) == 0.0) p[0] = 1.0;
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& x : p) x /= sum;
  return p;
}

inline ToneDistribution random_tone_distribution(Rng& rng, double zero_prob) {
  const auto p = random_distribution(rng, kToneCount, zero_prob);
  ToneDistribution out{};
  std::copy(p.begin(), p.end(), out.begin());
  return out;
}

inline PlantedGrammar random_planted(Rng& rng) {
  PlantedGrammar g;
  g.word_length = random_distribution(rng, 1 + rng() % 4);
  g.first = random_tone_distribution(rng, 0.3);
  g.medial = random_tone_distribution(rng, 0.3);
  g.last = random_tone_distribution(rng, 0.3);
  g.cue_tone = kAllTones[rng() % kToneCount];
  g.cue_prob = uniform01(rng);
  g.prominence = uniform01(rng);
  g.turn_length = random_distribution(rng, 1 + rng() % 6);
  g.seed = rng();
  return g;
}

inline std::vector<Tone> random_tones(Rng& rng, std::size_t n) {
  std::vector<Tone> tones(n);
  for (auto& t : tones) t = kAllTones[rng() % kToneCount];
  return tones;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tonoseg::testing

#endif  // TONOSEG_TESTS_TEST_UTIL_H_
