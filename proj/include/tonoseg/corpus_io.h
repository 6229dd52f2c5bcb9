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

// Text formats. All are UTF-8, line oriented, and ignore lines whose first
// non-blank character is '#'.
//
// Corpus:
//   tonoseg-corpus v1
//   @speaker F1
//   [ ( U S ) *( T D ) ]
//
//   One turn per line in square brackets, words in parentheses, prominent
//   words marked by a '*' immediately before '('. Tones are single INTSINT
//   letters. '@key value' lines carry metadata.
//
// Model:
//   tonoseg-model v1
//   scheme hier
//   config <max_depth> <min_count> <smoothing>
//   nodes <count>
//   . <N counts>            root
//   ( H <N counts>          context, oldest symbol first
//   end
//
// Segmentation: one line per turn, word spans as `start-end` tokens over tone
// indices, with a trailing '*' on prominent words, e.g. `0-2 2-3* 3-5`.
//
// Tone streams: one turn per line, tones separated by blanks, e.g. `U S T D`.

#ifndef TONOSEG_CORPUS_IO_H_
#define TONOSEG_CORPUS_IO_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tonoseg/pattern_grammar.h"
#include "tonoseg/prosody.h"
#include "tonoseg/segmenter.h"

namespace tonoseg {

inline constexpr std::string_view kCorpusHeader = "tonoseg-corpus v1";
inline constexpr std::string_view kModelHeader = "tonoseg-model v1";

// Throws Error with kind kUnknownTone, kEmptyWord, kEmptyTurn,
// kMalformedNesting or kBadVersion and the line/column of the first problem.
Corpus parse_corpus(std::string_view text);
std::string serialize_corpus(const Corpus& corpus);

std::string save_model(const PatternGrammar& grammar);
// Throws kBadVersion, kSchemeMismatch (unknown scheme, or not the
// `expected_scheme` when one is given) or kCorruptModel.
PatternGrammar load_model(std::string_view text,
                          std::optional<std::string_view> expected_scheme =
                              std::nullopt);

std::string serialize_segmentation(
    const std::vector<SegmentationResult>& results);
std::vector<SegmentationResult> parse_segmentation(std::string_view text);

// Accepts either a corpus document (word structure is discarded) or a plain
// tone-stream file.
std::vector<std::vector<Tone>> parse_tone_streams(std::string_view text);
std::string serialize_tone_streams(const std::vector<std::vector<Tone>>& turns);

}  // namespace tonoseg

#endif  // TONOSEG_CORPUS_IO_H_
