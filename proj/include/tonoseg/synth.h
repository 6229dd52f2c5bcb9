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

// Synthetic corpora drawn from a fully known generative process.
//
// Words are i.i.d.: a length l ~ word_length, a prominence flag ~
// Bernoulli(prominence), then tones. The final tone is the cue tone with
// probability cue_prob and otherwise drawn from `last`; non-final tones come
// from `first` (position 0) or `medial`. Turns hold k ~ turn_length words.
//
// Sampling protocol (mt19937_64 seeded with `seed`, draws via random.h):
// per turn one categorical draw for k; per word, in order, one categorical
// draw for l, one uniform draw for prominence, then per tone position either
// one categorical draw (non-final) or one uniform cue draw followed, if the
// cue is not taken, by one categorical draw from `last`. The final turn is cut
// short once n_words words exist.

#ifndef TONOSEG_SYNTH_H_
#define TONOSEG_SYNTH_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tonoseg/pattern_grammar.h"
#include "tonoseg/prosody.h"

namespace tonoseg {

using ToneDistribution = std::array<double, kToneCount>;

struct PlantedGrammar {
  // word_length[i] = P(length = i + 1).
  std::vector<double> word_length;
  ToneDistribution first{};
  ToneDistribution medial{};
  ToneDistribution last{};
  Tone cue_tone = Tone::kL;
  double cue_prob = 0.0;
  double prominence = 0.0;
  // turn_length[i] = P(words in turn = i + 1).
  std::vector<double> turn_length;
  std::uint64_t seed = 0;

  // Throws Error(kInvalidArgument) unless every distribution sums to 1
  // within 1e-9 with non-negative entries and a non-empty support.
  void validate() const;
  friend bool operator==(const PlantedGrammar&, const PlantedGrammar&) = default;
};

// Words of length 1-3, boundary cue L with q = 1 and L never word-internal,
// 30% prominent words, 1-8 words per turn.
PlantedGrammar default_planted_grammar();

// JSON config: {"word_length": [..], "first": {"H": 0.5, ...}, "medial": {..},
// "last": {..}, "cue_tone": "L", "cue_prob": 1.0, "prominence": 0.3,
// "turn_length": [..], "seed": 7}. Missing tone keys are 0.
PlantedGrammar parse_planted_grammar(std::string_view json_text);
std::string serialize_planted_grammar(const PlantedGrammar& planted);

Corpus sample_corpus(const PlantedGrammar& planted, std::size_t n_words,
                     std::uint64_t seed);
inline Corpus sample_corpus(const PlantedGrammar& planted, std::size_t n_words) {
  return sample_corpus(planted, n_words, planted.seed);
}

// Exact distribution of the next symbol of the generative process, encoded
// under a hierarchical scheme with open-marker prominence, given `context`
// (oldest first). The context need not start at the turn: unseen history is
// averaged under the stationary word stream, e.g. a context of bare tones is
// weighted over every (word length, position) that could produce it, and the
// empty context gives the long-run symbol frequencies.
// Throws Error(kUnreachableContext) for contexts the process cannot emit,
// including anything after a turn close.
ProbabilityVector planted_conditional(const PlantedGrammar& planted,
                                      const EncodingScheme& scheme,
                                      std::span<const SymbolId> context);

}  // namespace tonoseg

#endif  // TONOSEG_SYNTH_H_
