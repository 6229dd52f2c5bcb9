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

#include "tonoseg/pattern_grammar.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <utility>

#include "tonoseg/error.h"

namespace tonoseg {

void TrainConfig::validate() const {
  if (max_depth < 0) {
    throw Error(ErrorKind::kInvalidArgument, "max_depth must be >= 0");
  }
  if (min_count < 1) {
    throw Error(ErrorKind::kInvalidArgument, "min_count must be >= 1");
  }
  if (!(smoothing >= 0.0) || !std::isfinite(smoothing)) {
    throw Error(ErrorKind::kInvalidArgument,
                "smoothing must be a finite value >= 0");
  }
}

PatternGrammar::PatternGrammar(std::size_t alphabet_size, TrainConfig config,
                               std::string scheme_id)
    : alphabet_size_(alphabet_size),
      config_(config),
      scheme_id_(std::move(scheme_id)) {
  if (alphabet_size_ == 0 ||
      alphabet_size_ > std::numeric_limits<SymbolId>::max()) {
    throw Error(ErrorKind::kInvalidArgument, "alphabet size out of range");
  }
  config_.validate();
  nodes_.push_back(Node{std::vector<std::uint64_t>(alphabet_size_, 0), 0,
                        std::vector<std::int32_t>(alphabet_size_, -1)});
}

std::int32_t PatternGrammar::add_child(std::int32_t parent, SymbolId symbol) {
  std::int32_t child = nodes_[parent].children[symbol];
  if (child >= 0) return child;
  child = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(Node{std::vector<std::uint64_t>(alphabet_size_, 0), 0,
                        std::vector<std::int32_t>(alphabet_size_, -1)});
  nodes_[parent].children[symbol] = child;
  return child;
}

PatternGrammar PatternGrammar::train(
    std::span<const std::vector<SymbolId>> sequences,
    std::size_t alphabet_size, const TrainConfig& config,
    std::string scheme_id) {
  PatternGrammar g(alphabet_size, config, std::move(scheme_id));
  const auto depth = static_cast<std::size_t>(config.max_depth);
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    const auto& seq = sequences[s];
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (seq[i] >= alphabet_size) {
        throw Error(ErrorKind::kSymbolOutsideAlphabet,
                    "symbol id " + std::to_string(seq[i]) +
                        " outside alphabet of size " +
                        std::to_string(alphabet_size),
                    std::nullopt, s, i);
      }
      const SymbolId next = seq[i];
      std::int32_t node = 0;
      ++g.nodes_[0].counts[next];
      ++g.nodes_[0].total;
      for (std::size_t d = 1; d <= std::min(i, depth); ++d) {
        node = g.add_child(node, seq[i - d]);
        ++g.nodes_[node].counts[next];
        ++g.nodes_[node].total;
      }
    }
  }
  g.prune();
  return g;
}

// Keeps the root and every node whose count reaches min_count and whose
// parent is kept. Counts shrink monotonically with depth, so this equals
// bottom-up pruning and leaves the trie suffix-closed.
void PatternGrammar::prune() {
  const auto k = static_cast<std::uint64_t>(config_.min_count);
  std::vector<Node> kept;
  kept.reserve(nodes_.size());
  std::deque<std::pair<std::int32_t, std::int32_t>> queue;  // (old, new)
  kept.push_back(nodes_[0]);
  std::fill(kept[0].children.begin(), kept[0].children.end(), -1);
  queue.emplace_back(0, 0);
  while (!queue.empty()) {
    auto [old_index, new_index] = queue.front();
    queue.pop_front();
    for (std::size_t sym = 0; sym < alphabet_size_; ++sym) {
      const std::int32_t child = nodes_[old_index].children[sym];
      if (child < 0 || nodes_[child].total < k) continue;
      const auto index = static_cast<std::int32_t>(kept.size());
      kept.push_back(nodes_[child]);
      std::fill(kept.back().children.begin(), kept.back().children.end(), -1);
      kept[new_index].children[sym] = index;
      queue.emplace_back(child, index);
    }
  }
  nodes_ = std::move(kept);
}

PatternGrammar PatternGrammar::from_contexts(std::vector<ContextCounts> contexts,
                                             std::size_t alphabet_size,
                                             const TrainConfig& config,
                                             std::string scheme_id) {
  auto corrupt = [](const std::string& msg) {
    return Error(ErrorKind::kCorruptModel, msg);
  };
  PatternGrammar g(alphabet_size, config, std::move(scheme_id));
  std::stable_sort(contexts.begin(), contexts.end(),
                   [](const ContextCounts& a, const ContextCounts& b) {
                     return a.context.size() < b.context.size();
                   });
  if (contexts.empty() || !contexts.front().context.empty()) {
    throw corrupt("missing root context");
  }
  const auto k = static_cast<std::uint64_t>(config.min_count);
  for (std::size_t e = 0; e < contexts.size(); ++e) {
    const auto& entry = contexts[e];
    if (entry.counts.size() != alphabet_size) {
      throw corrupt("context has " + std::to_string(entry.counts.size()) +
                    " counts, expected " + std::to_string(alphabet_size));
    }
    if (entry.context.size() > static_cast<std::size_t>(config.max_depth)) {
      throw corrupt("context longer than max_depth");
    }
    for (SymbolId s : entry.context) {
      if (s >= alphabet_size) throw corrupt("context symbol out of range");
    }
    const std::uint64_t total =
        std::accumulate(entry.counts.begin(), entry.counts.end(),
                        std::uint64_t{0});
    if (e == 0) {
      g.nodes_[0].counts = entry.counts;
      g.nodes_[0].total = total;
      continue;
    }
    if (entry.context.empty()) throw corrupt("duplicate root context");
    if (total < k) throw corrupt("context count below min_count");
    // Parent is the context minus its oldest symbol.
    std::int32_t parent = 0;
    for (std::size_t j = entry.context.size() - 1; j >= 1; --j) {
      parent = g.nodes_[parent].children[entry.context[j]];
      if (parent < 0) throw corrupt("trie is not suffix-closed");
    }
    const SymbolId oldest = entry.context.front();
    if (g.nodes_[parent].children[oldest] >= 0) {
      throw corrupt("duplicate context");
    }
    for (std::size_t s = 0; s < alphabet_size; ++s) {
      if (entry.counts[s] > g.nodes_[parent].counts[s]) {
        throw corrupt("context count exceeds its suffix's count");
      }
    }
    const std::int32_t node = g.add_child(parent, oldest);
    g.nodes_[node].counts = entry.counts;
    g.nodes_[node].total = total;
  }
  return g;
}

PatternGrammar PatternGrammar::with_smoothing(double smoothing) const {
  PatternGrammar copy = *this;
  copy.config_.smoothing = smoothing;
  copy.config_.validate();
  return copy;
}

std::vector<ContextCounts> PatternGrammar::contexts() const {
  std::vector<ContextCounts> out;
  out.reserve(nodes_.size());
  // path holds symbols most-recent first.
  std::vector<std::pair<std::int32_t, std::vector<SymbolId>>> stack;
  stack.emplace_back(0, std::vector<SymbolId>{});
  while (!stack.empty()) {
    auto [node, path] = std::move(stack.back());
    stack.pop_back();
    out.push_back(ContextCounts{{path.rbegin(), path.rend()}, nodes_[node].counts});
    for (std::size_t sym = 0; sym < alphabet_size_; ++sym) {
      const std::int32_t child = nodes_[node].children[sym];
      if (child < 0) continue;
      auto next = path;
      next.push_back(static_cast<SymbolId>(sym));
      stack.emplace_back(child, std::move(next));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ContextCounts& a, const ContextCounts& b) {
              if (a.context.size() != b.context.size()) {
                return a.context.size() < b.context.size();
              }
              return a.context < b.context;
            });
  return out;
}

std::size_t PatternGrammar::match_node(
    std::span<const SymbolId> history) const {
  std::size_t node = 0;
  const auto limit =
      std::min(history.size(), static_cast<std::size_t>(config_.max_depth));
  for (std::size_t d = 1; d <= limit; ++d) {
    const SymbolId sym = history[history.size() - d];
    if (sym >= alphabet_size_) break;
    const std::int32_t child = nodes_[node].children[sym];
    if (child < 0) break;
    node = static_cast<std::size_t>(child);
  }
  return node;
}

std::size_t PatternGrammar::matched_length(
    std::span<const SymbolId> history) const {
  std::size_t node = 0;
  std::size_t length = 0;
  const auto limit =
      std::min(history.size(), static_cast<std::size_t>(config_.max_depth));
  for (std::size_t d = 1; d <= limit; ++d) {
    const SymbolId sym = history[history.size() - d];
    if (sym >= alphabet_size_) break;
    const std::int32_t child = nodes_[node].children[sym];
    if (child < 0) break;
    node = static_cast<std::size_t>(child);
    length = d;
  }
  return length;
}

ProbabilityVector PatternGrammar::conditional_distribution(
    std::span<const SymbolId> history) const {
  const Node& node = nodes_[match_node(history)];
  const double lambda = config_.smoothing;
  const double denom = static_cast<double>(node.total) +
                       lambda * static_cast<double>(alphabet_size_);
  ProbabilityVector p(alphabet_size_);
  if (denom == 0.0) {
    // Empty corpus with no smoothing: the lambda -> 0 limit is uniform.
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(alphabet_size_));
    return p;
  }
  for (std::size_t s = 0; s < alphabet_size_; ++s) {
    p[s] = (static_cast<double>(node.counts[s]) + lambda) / denom;
  }
  return p;
}

double PatternGrammar::log_probability(std::span<const SymbolId> history,
                                       SymbolId symbol) const {
  if (symbol >= alphabet_size_) {
    throw Error(ErrorKind::kSymbolOutsideAlphabet,
                "symbol id " + std::to_string(symbol) + " outside alphabet");
  }
  const Node& node = nodes_[match_node(history)];
  const double lambda = config_.smoothing;
  const double denom = static_cast<double>(node.total) +
                       lambda * static_cast<double>(alphabet_size_);
  if (denom == 0.0) return -std::log(static_cast<double>(alphabet_size_));
  const double num = static_cast<double>(node.counts[symbol]) + lambda;
  if (num == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(num / denom);
}

PatternGrammar train(std::span<const std::vector<Symbol>> sequences,
                     const EncodingScheme& scheme, const TrainConfig& config) {
  std::vector<std::vector<SymbolId>> ids;
  ids.reserve(sequences.size());
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    try {
      ids.push_back(to_ids(sequences[s], scheme));
    } catch (const Error& e) {
      throw Error(e.kind(), e.message(), std::nullopt, s, e.index());
    }
  }
  return PatternGrammar::train(ids, scheme.size(), config, scheme.id());
}

PatternGrammar train(const Corpus& corpus, const EncodingScheme& scheme,
                     const TrainConfig& config) {
  return PatternGrammar::train(encode_corpus_ids(corpus, scheme), scheme.size(),
                               config, scheme.id());
}

double sequence_log_probability(const PatternGrammar& grammar,
                                std::span<const SymbolId> symbols) {
  double total = 0.0;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    total += grammar.log_probability(symbols.first(i), symbols[i]);
  }
  return total;
}

EntropyResult marginal_entropy(std::span<const std::vector<SymbolId>> sequences,
                               std::size_t alphabet_size) {
  if (alphabet_size < 2) {
    throw Error(ErrorKind::kInvalidArgument, "alphabet size must be >= 2");
  }
  std::vector<std::uint64_t> counts(alphabet_size, 0);
  std::uint64_t total = 0;
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    for (std::size_t i = 0; i < sequences[s].size(); ++i) {
      const SymbolId sym = sequences[s][i];
      if (sym >= alphabet_size) {
        throw Error(ErrorKind::kSymbolOutsideAlphabet,
                    "symbol id outside alphabet", std::nullopt, s, i);
      }
      ++counts[sym];
      ++total;
    }
  }
  if (total == 0) {
    throw Error(ErrorKind::kInvalidArgument, "no symbols to measure");
  }
  double h = 0.0;
  for (std::uint64_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log(p);
  }
  h = std::max(h, 0.0);
  return {h, h / std::log(static_cast<double>(alphabet_size))};
}

EntropyResult model_entropy(const PatternGrammar& grammar,
                            std::span<const std::vector<SymbolId>> sequences) {
  if (grammar.alphabet_size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "alphabet size must be >= 2");
  }
  double sum = 0.0;
  std::uint64_t positions = 0;
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    std::span<const SymbolId> seq = sequences[s];
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (seq[i] >= grammar.alphabet_size()) {
        throw Error(ErrorKind::kSymbolOutsideAlphabet,
                    "symbol id outside alphabet", std::nullopt, s, i);
      }
      const double lp = grammar.log_probability(seq.first(i), seq[i]);
      if (std::isinf(lp)) {
        throw Error(ErrorKind::kInfiniteLogProb,
                    "unseen transition with zero smoothing", std::nullopt, s,
                    i);
      }
      sum -= lp;
      ++positions;
    }
  }
  if (positions == 0) {
    throw Error(ErrorKind::kInvalidArgument, "no symbols to measure");
  }
  const double h = std::max(sum / static_cast<double>(positions), 0.0);
  return {h, h / std::log(static_cast<double>(grammar.alphabet_size()))};
}

double normalized_entropy(double entropy, std::size_t alphabet_size) {
  if (alphabet_size < 2) {
    throw Error(ErrorKind::kInvalidArgument, "alphabet size must be >= 2");
  }
  const double max_entropy = std::log(static_cast<double>(alphabet_size));
  constexpr double kTolerance = 1e-9;
  if (!(entropy >= -kTolerance && entropy <= max_entropy + kTolerance)) {
    throw Error(ErrorKind::kInvalidArgument,
                "entropy " + std::to_string(entropy) + " outside [0, ln " +
                    std::to_string(alphabet_size) + "]");
  }
  return entropy / max_entropy;
}

}  // namespace tonoseg
