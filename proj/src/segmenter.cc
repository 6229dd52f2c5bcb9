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

#include "tonoseg/segmenter.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <thread>
#include <utility>

#include "tonoseg/error.h"

namespace tonoseg {
namespace {

struct Path {
  double score = 0.0;
  std::size_t words = 0;
  std::vector<bool> boundaries;
  std::vector<bool> prominence;
};

bool better(const Path& a, const Path& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.words != b.words) return a.words < b.words;
  if (a.boundaries != b.boundaries) return a.boundaries < b.boundaries;
  return a.prominence < b.prominence;
}

struct StateKey {
  std::vector<SymbolId> history;
  bool prominent = false;
  friend auto operator<=>(const StateKey&, const StateKey&) = default;
};

std::vector<SymbolId> push(const std::vector<SymbolId>& history, SymbolId s,
                           std::size_t depth) {
  std::vector<SymbolId> out;
  if (depth == 0) return out;
  const std::size_t keep = std::min(history.size(), depth - 1);
  out.reserve(keep + 1);
  out.insert(out.end(), history.end() - static_cast<std::ptrdiff_t>(keep),
             history.end());
  out.push_back(s);
  return out;
}

void relax(std::map<StateKey, Path>& states, StateKey key, Path path) {
  auto it = states.find(key);
  if (it == states.end()) {
    states.emplace(std::move(key), std::move(path));
  } else if (better(path, it->second)) {
    it->second = std::move(path);
  }
}

void check_preconditions(const PatternGrammar& grammar,
                         std::span<const Tone> tones,
                         const EncodingScheme& scheme) {
  if (tones.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "empty tone sequence");
  }
  if (!scheme.is_hierarchical()) {
    throw Error(ErrorKind::kInvalidArgument,
                "segmentation needs a hierarchical scheme, got '" +
                    scheme.id() + "'");
  }
  if (grammar.scheme_id() != scheme.id() ||
      grammar.alphabet_size() != scheme.size()) {
    throw Error(ErrorKind::kSchemeMismatch,
                "grammar trained under '" + grammar.scheme_id() +
                    "' cannot decode scheme '" + scheme.id() + "'");
  }
  if (!(grammar.config().smoothing > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "segmentation requires smoothing > 0");
  }
}

SegmentationResult to_result(const Path& path) {
  SegmentationResult result;
  result.log_prob = path.score;
  std::size_t begin = 0;
  std::size_t word = 0;
  const std::size_t n = path.boundaries.size() + 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 == n || path.boundaries[i]) {
      result.spans.push_back({begin, i + 1, path.prominence[word]});
      begin = i + 1;
      ++word;
    }
  }
  return result;
}

}  // namespace

std::vector<bool> SegmentationResult::boundaries() const {
  std::vector<bool> out(tone_count() > 0 ? tone_count() - 1 : 0, false);
  for (std::size_t w = 0; w + 1 < spans.size(); ++w) {
    out[spans[w].end - 1] = true;
  }
  return out;
}

std::vector<bool> SegmentationResult::prominence() const {
  std::vector<bool> out;
  out.reserve(spans.size());
  for (const auto& s : spans) out.push_back(s.prominent);
  return out;
}

Turn SegmentationResult::to_turn(std::span<const Tone> tones) const {
  if (tones.size() != tone_count()) {
    throw Error(ErrorKind::kShapeMismatch,
                "segmentation covers " + std::to_string(tone_count()) +
                    " tones, got " + std::to_string(tones.size()));
  }
  Turn turn;
  for (const auto& s : spans) {
    turn.words.push_back(
        {{tones.begin() + static_cast<std::ptrdiff_t>(s.begin),
          tones.begin() + static_cast<std::ptrdiff_t>(s.end)},
         s.prominent});
  }
  return turn;
}

SegmentationResult segmentation_from_turn(const Turn& turn) {
  SegmentationResult result;
  std::size_t begin = 0;
  for (const auto& w : turn.words) {
    result.spans.push_back({begin, begin + w.tones.size(), w.prominent});
    begin += w.tones.size();
  }
  return result;
}

std::vector<SymbolId> encode_segmentation(std::span<const Tone> tones,
                                          const SegmentationResult& result,
                                          const EncodingScheme& scheme) {
  return encode_turn_ids(result.to_turn(tones), scheme);
}

SegmentationResult segment_turn(const PatternGrammar& grammar,
                                std::span<const Tone> tones,
                                const EncodingScheme& scheme,
                                const SegmentOptions& options) {
  check_preconditions(grammar, tones, scheme);
  const auto depth = static_cast<std::size_t>(grammar.config().max_depth);
  const std::size_t n = tones.size();
  const SymbolId turn_open = scheme.id_of(StructureSymbol::kTurnOpen);
  const SymbolId turn_close = scheme.id_of(StructureSymbol::kTurnClose);
  const SymbolId word_close = scheme.id_of(StructureSymbol::kWordClose);
  std::vector<bool> prominence_options = {false};
  if (scheme.carries_prominence()) prominence_options.push_back(true);

  SymbolId open_ids[2];
  for (bool p : prominence_options) open_ids[p] = scheme.id_of(scheme.word_open(p));
  auto tone_id = [&](Tone t, bool p) { return scheme.id_of(scheme.tone_symbol(t, p)); };

  // Scores accumulate left to right exactly as sequence_log_probability does,
  // so the reported value reproduces it bit for bit.
  std::map<StateKey, Path> states;
  {
    const std::vector<SymbolId> empty;
    const double start = 0.0 + grammar.log_probability(empty, turn_open);
    const auto h0 = push(empty, turn_open, depth);
    for (bool p : prominence_options) {
      Path path;
      path.score = start + grammar.log_probability(h0, open_ids[p]);
      path.words = 1;
      path.prominence = {p};
      relax(states, {push(h0, open_ids[p], depth), p}, std::move(path));
    }
  }

  std::optional<Path> best;
  for (std::size_t i = 0; i < n; ++i) {
    std::map<StateKey, Path> next;
    for (const auto& [key, path] : states) {
      const SymbolId tone = tone_id(tones[i], key.prominent);
      const double after_tone =
          path.score + grammar.log_probability(key.history, tone);
      const auto h1 = push(key.history, tone, depth);
      const double after_close =
          after_tone + grammar.log_probability(h1, word_close);
      const auto h2 = push(h1, word_close, depth);
      if (i + 1 == n) {
        Path done = path;
        done.score = after_close + grammar.log_probability(h2, turn_close);
        if (!best || better(done, *best)) best = std::move(done);
        continue;
      }
      Path stay = path;
      stay.score = after_tone;
      stay.boundaries.push_back(false);
      relax(next, {h1, key.prominent}, std::move(stay));
      for (bool p : prominence_options) {
        Path split = path;
        split.score = after_close + grammar.log_probability(h2, open_ids[p]);
        split.words += 1;
        split.boundaries.push_back(true);
        split.prominence.push_back(p);
        relax(next, {push(h2, open_ids[p], depth), p}, std::move(split));
      }
    }
    if (options.beam_width && next.size() > *options.beam_width) {
      std::vector<std::pair<StateKey, Path>> ranked(next.begin(), next.end());
      std::sort(ranked.begin(), ranked.end(),
                [](const auto& a, const auto& b) { return better(a.second, b.second); });
      ranked.resize(std::max<std::size_t>(*options.beam_width, 1));
      next = std::map<StateKey, Path>(ranked.begin(), ranked.end());
    }
    states = std::move(next);
  }
  if (!best) throw Error(ErrorKind::kInternal, "decoder produced no path");
  return to_result(*best);
}

void enumerate_segmentations(
    std::size_t n, const EncodingScheme& scheme,
    const std::function<void(const std::vector<bool>&,
                             const std::vector<bool>&)>& visit) {
  if (n == 0) throw Error(ErrorKind::kInvalidArgument, "empty tone sequence");
  if (n > kMaxBruteForceTones) {
    throw Error(ErrorKind::kTooLarge,
                "brute force limited to " +
                    std::to_string(kMaxBruteForceTones) + " tones");
  }
  const std::size_t slots = n - 1;
  std::vector<bool> boundaries(slots);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots); ++mask) {
    std::size_t words = 1;
    for (std::size_t j = 0; j < slots; ++j) {
      boundaries[j] = (mask >> j) & 1;
      words += boundaries[j];
    }
    if (!scheme.carries_prominence()) {
      visit(boundaries, std::vector<bool>(words, false));
      continue;
    }
    std::vector<bool> prominence(words);
    for (std::uint64_t pm = 0; pm < (std::uint64_t{1} << words); ++pm) {
      for (std::size_t w = 0; w < words; ++w) prominence[w] = (pm >> w) & 1;
      visit(boundaries, prominence);
    }
  }
}

SegmentationResult brute_force_segment(const PatternGrammar& grammar,
                                       std::span<const Tone> tones,
                                       const EncodingScheme& scheme) {
  check_preconditions(grammar, tones, scheme);
  std::optional<Path> best;
  enumerate_segmentations(
      tones.size(), scheme,
      [&](const std::vector<bool>& boundaries, const std::vector<bool>& prom) {
        Path path;
        path.boundaries = boundaries;
        path.prominence = prom;
        path.words = prom.size();
        const SegmentationResult candidate = to_result(path);
        const auto ids = encode_segmentation(tones, candidate, scheme);
        path.score = sequence_log_probability(grammar, ids);
        if (!best || better(path, *best)) best = std::move(path);
      });
  return to_result(*best);
}

std::vector<SegmentationResult> segment_corpus(
    const PatternGrammar& grammar,
    const std::vector<std::vector<Tone>>& turns, const EncodingScheme& scheme,
    const SegmentOptions& options) {
  std::vector<SegmentationResult> results(turns.size());
  std::vector<std::optional<Error>> errors(turns.size());
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t t = first; t < turns.size(); t += stride) {
      try {
        results[t] = segment_turn(grammar, turns[t], scheme, options);
      } catch (const Error& e) {
        errors[t] = e;
      }
    }
  };
  const std::size_t threads =
      std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(turns.size(), 1));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work, w, threads);
  }

  std::ostringstream msg;
  std::optional<std::size_t> first_failure;
  for (std::size_t t = 0; t < turns.size(); ++t) {
    if (!errors[t]) continue;
    if (!first_failure) {
      first_failure = t;
    } else {
      msg << "; ";
    }
    msg << "turn " << t << ": " << errors[t]->what();
  }
  if (first_failure) {
    throw Error(errors[*first_failure]->kind(), msg.str(), std::nullopt,
                first_failure);
  }
  return results;
}

}  // namespace tonoseg
