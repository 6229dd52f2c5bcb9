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

// Prosodic-word boundary decoding within a turn.
//
// A candidate segmentation of n tones places a boundary (or not) in each of
// the n-1 inter-tone slots and, under prominence schemes, marks each word
// prominent or not. The candidate is scored by the grammar's log-probability
// of its full encoding [ (w1) (w2) ... ]. segment_turn finds the best
// candidate exactly with a Viterbi search whose state is the last max_depth
// emitted symbols (plus the open word's prominence); brute_force_segment
// enumerates every candidate and exists to check it.
//
// Ties are broken by fewer words, then the lexicographically smallest
// boundary vector (no-boundary < boundary), then the smallest prominence
// vector.

#ifndef TONOSEG_SEGMENTER_H_
#define TONOSEG_SEGMENTER_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tonoseg/pattern_grammar.h"
#include "tonoseg/prosody.h"

namespace tonoseg {

struct WordSpan {
  std::size_t begin = 0;  // first tone index
  std::size_t end = 0;    // one past the last tone index
  bool prominent = false;
  friend bool operator==(const WordSpan&, const WordSpan&) = default;
};

struct SegmentationResult {
  std::vector<WordSpan> spans;
  double log_prob = 0.0;

  std::size_t tone_count() const { return spans.empty() ? 0 : spans.back().end; }
  // One flag per inter-tone slot: true where a word ends before the last tone.
  std::vector<bool> boundaries() const;
  std::vector<bool> prominence() const;
  Turn to_turn(std::span<const Tone> tones) const;
};

SegmentationResult segmentation_from_turn(const Turn& turn);

struct SegmentOptions {
  // Keep only the best `beam_width` decoder states per position. Unset means
  // exact search.
  std::optional<std::size_t> beam_width;
  // Worker threads for segment_corpus; results are identical for any value.
  std::size_t threads = 1;
};

// Throws kInvalidArgument for empty input, zero smoothing, or a flat scheme;
// kSchemeMismatch when the grammar was trained under another scheme.
SegmentationResult segment_turn(const PatternGrammar& grammar,
                                std::span<const Tone> tones,
                                const EncodingScheme& scheme,
                                const SegmentOptions& options = {});

inline constexpr std::size_t kMaxBruteForceTones = 14;

SegmentationResult brute_force_segment(const PatternGrammar& grammar,
                                       std::span<const Tone> tones,
                                       const EncodingScheme& scheme);

// Calls `visit` once per candidate (boundary vector, prominence vector) for
// an n-tone turn. Throws kTooLarge above kMaxBruteForceTones.
void enumerate_segmentations(
    std::size_t n, const EncodingScheme& scheme,
    const std::function<void(const std::vector<bool>& boundaries,
                             const std::vector<bool>& prominence)>& visit);

// Encodes tones with the given segmentation into scheme symbol ids.
std::vector<SymbolId> encode_segmentation(std::span<const Tone> tones,
                                          const SegmentationResult& result,
                                          const EncodingScheme& scheme);

// Segments every turn independently, preserving order. Per-turn failures are
// collected and rethrown as one Error listing the failing turn indices.
std::vector<SegmentationResult> segment_corpus(
    const PatternGrammar& grammar,
    const std::vector<std::vector<Tone>>& turns, const EncodingScheme& scheme,
    const SegmentOptions& options = {});

}  // namespace tonoseg

#endif  // TONOSEG_SEGMENTER_H_
