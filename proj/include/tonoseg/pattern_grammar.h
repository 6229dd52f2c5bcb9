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

// Variable-length-context probabilistic grammar ("patterns model").
//
// The grammar is a suffix trie over left contexts of length <= max_depth.
// Training tallies, for every position i of every sequence and every context
// length d <= min(i, max_depth), the successor symbol seen after the d
// preceding symbols. Contexts that occur fewer than min_count times are
// pruned with their descendants; the root (empty context) is always kept.
// Prediction uses the longest retained suffix of the history and add-lambda
// smoothing over that node's successor counts, with no interpolation across
// suffix levels.
//
// Sequences are independent: histories never cross sequence boundaries, so
// each encoded turn starts again from the root context.

#ifndef TONOSEG_PATTERN_GRAMMAR_H_
#define TONOSEG_PATTERN_GRAMMAR_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tonoseg/prosody.h"

namespace tonoseg {

struct TrainConfig {
  int max_depth = 4;
  int min_count = 2;
  double smoothing = 0.5;

  // Throws Error(kInvalidArgument).
  void validate() const;
  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

using ProbabilityVector = std::vector<double>;

// One retained context with its raw successor counts. `context` is ordered
// oldest symbol first; the root has an empty context.
struct ContextCounts {
  std::vector<SymbolId> context;
  std::vector<std::uint64_t> counts;
  friend bool operator==(const ContextCounts&, const ContextCounts&) = default;
};

class PatternGrammar {
 public:
  // Trains over an integer alphabet [0, alphabet_size). `scheme_id` tags the
  // grammar with the encoding it was trained under (empty for toy alphabets).
  // Throws Error(kSymbolOutsideAlphabet) naming the sequence and position.
  static PatternGrammar train(std::span<const std::vector<SymbolId>> sequences,
                              std::size_t alphabet_size,
                              const TrainConfig& config,
                              std::string scheme_id = "");

  // Rebuilds a grammar from stored counts, checking suffix closure, depth,
  // min_count and count monotonicity. Throws Error(kCorruptModel).
  static PatternGrammar from_contexts(std::vector<ContextCounts> contexts,
                                      std::size_t alphabet_size,
                                      const TrainConfig& config,
                                      std::string scheme_id = "");

  std::size_t alphabet_size() const { return alphabet_size_; }
  const TrainConfig& config() const { return config_; }
  const std::string& scheme_id() const { return scheme_id_; }
  std::size_t node_count() const { return nodes_.size(); }
  // Number of (context, successor) events tallied at the root.
  std::uint64_t training_symbols() const { return nodes_.front().total; }

  // Same counts, different smoothing.
  PatternGrammar with_smoothing(double smoothing) const;

  // Retained contexts sorted by (length, symbols oldest-first).
  std::vector<ContextCounts> contexts() const;

  // Length of the longest retained suffix of `history` (at most max_depth).
  std::size_t matched_length(std::span<const SymbolId> history) const;

  ProbabilityVector conditional_distribution(
      std::span<const SymbolId> history) const;

  // Natural-log probability of `symbol` following `history`; -inf when
  // smoothing is zero and the transition was never observed.
  double log_probability(std::span<const SymbolId> history,
                         SymbolId symbol) const;

 private:
  struct Node {
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;
    // Indexed by the symbol one step further into the past; -1 if absent.
    std::vector<std::int32_t> children;
  };

  PatternGrammar(std::size_t alphabet_size, TrainConfig config,
                 std::string scheme_id);

  std::int32_t add_child(std::int32_t parent, SymbolId symbol);
  std::size_t match_node(std::span<const SymbolId> history) const;
  void prune();

  std::size_t alphabet_size_;
  TrainConfig config_;
  std::string scheme_id_;
  std::vector<Node> nodes_;
};

// Symbol-level conveniences; the grammar's scheme tag is set to scheme.id().
PatternGrammar train(std::span<const std::vector<Symbol>> sequences,
                     const EncodingScheme& scheme, const TrainConfig& config);
PatternGrammar train(const Corpus& corpus, const EncodingScheme& scheme,
                     const TrainConfig& config);

// Chain rule: sum over i of ln P(s_i | s_0..s_{i-1}).
double sequence_log_probability(const PatternGrammar& grammar,
                                std::span<const SymbolId> symbols);

struct EntropyResult {
  double entropy = 0.0;
  double normalized = 0.0;
};

// Entropy of the empirical unigram distribution. Throws Error(kInvalidArgument)
// when alphabet_size < 2 or there are no symbols.
EntropyResult marginal_entropy(std::span<const std::vector<SymbolId>> sequences,
                               std::size_t alphabet_size);

// Per-symbol cross-entropy of `sequences` under `grammar`, normalized by the
// grammar's alphabet size. Throws Error(kInfiniteLogProb) at the first
// zero-probability position. On held-out data the value may exceed ln N.
EntropyResult model_entropy(const PatternGrammar& grammar,
                            std::span<const std::vector<SymbolId>> sequences);

// entropy / ln(alphabet_size). Throws Error(kInvalidArgument) if
// alphabet_size < 2 or entropy is outside [0, ln N] by more than 1e-9.
double normalized_entropy(double entropy, std::size_t alphabet_size);

}  // namespace tonoseg

#endif  // TONOSEG_PATTERN_GRAMMAR_H_
