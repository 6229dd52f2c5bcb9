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

#include "tonoseg/synth.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "tonoseg/error.h"
#include "tonoseg/random.h"

namespace tonoseg {
namespace {

using json = nlohmann::json;

void check_distribution(std::span<const double> probs, const char* name) {
  double sum = 0.0;
  bool any = false;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorKind::kInvalidArgument,
                  std::string(name) + " has a negative or non-finite entry");
    }
    any = any || p > 0.0;
    sum += p;
  }
  if (!any || std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(name) + " must sum to 1 (got " +
                    std::to_string(sum) + ")");
  }
}

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(name) + " must lie in [0, 1]");
  }
}

ToneDistribution final_distribution(const PlantedGrammar& g) {
  ToneDistribution out{};
  for (std::size_t t = 0; t < kToneCount; ++t) {
    out[t] = (1.0 - g.cue_prob) * g.last[t];
  }
  out[static_cast<std::size_t>(g.cue_tone)] += g.cue_prob;
  return out;
}

// Tone distribution at `pos` of a word of length `len`.
const ToneDistribution& position_distribution(const PlantedGrammar& g,
                                              const ToneDistribution& final_dist,
                                              std::size_t pos,
                                              std::size_t len) {
  if (pos + 1 == len) return final_dist;
  return pos == 0 ? g.first : g.medial;
}

ToneDistribution parse_tone_object(const json& j, const char* name) {
  ToneDistribution out{};
  if (!j.is_object()) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(name) + " must map tone letters to probabilities");
  }
  for (const auto& [key, value] : j.items()) {
    auto tone = key.size() == 1 ? parse_tone(key[0]) : std::nullopt;
    if (!tone) {
      throw Error(ErrorKind::kUnknownTone,
                  "unknown tone '" + key + "' in " + name);
    }
    out[static_cast<std::size_t>(*tone)] = value.get<double>();
  }
  return out;
}

json tone_object(const ToneDistribution& dist) {
  json j = json::object();
  for (Tone t : kAllTones) {
    const double p = dist[static_cast<std::size_t>(t)];
    if (p != 0.0) j[std::string(1, tone_letter(t))] = p;
  }
  return j;
}

}  // namespace

void PlantedGrammar::validate() const {
  check_distribution(word_length, "word_length");
  check_distribution(first, "first");
  check_distribution(medial, "medial");
  check_distribution(last, "last");
  check_distribution(turn_length, "turn_length");
  check_probability(cue_prob, "cue_prob");
  check_probability(prominence, "prominence");
}

PlantedGrammar default_planted_grammar() {
  PlantedGrammar g;
  g.word_length = {0.3, 0.45, 0.25};
  auto set = [](ToneDistribution& d, std::initializer_list<std::pair<Tone, double>> items) {
    d.fill(0.0);
    for (auto [t, p] : items) d[static_cast<std::size_t>(t)] = p;
  };
  set(g.first, {{Tone::kT, 0.15}, {Tone::kM, 0.1}, {Tone::kB, 0.05},
                {Tone::kH, 0.25}, {Tone::kS, 0.1}, {Tone::kU, 0.2},
                {Tone::kD, 0.15}});
  set(g.medial, {{Tone::kH, 0.3}, {Tone::kS, 0.3}, {Tone::kU, 0.2},
                 {Tone::kD, 0.2}});
  set(g.last, {{Tone::kL, 1.0}});
  g.cue_tone = Tone::kL;
  g.cue_prob = 1.0;
  g.prominence = 0.3;
  g.turn_length = {0.05, 0.1, 0.15, 0.2, 0.2, 0.15, 0.1, 0.05};
  g.seed = 7;
  return g;
}

PlantedGrammar parse_planted_grammar(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string("planted grammar is not valid JSON: ") + e.what());
  }
  PlantedGrammar g;
  try {
    g.word_length = j.at("word_length").get<std::vector<double>>();
    g.first = parse_tone_object(j.at("first"), "first");
    g.medial = parse_tone_object(j.at("medial"), "medial");
    g.last = parse_tone_object(j.at("last"), "last");
    const auto cue = j.value("cue_tone", std::string("L"));
    auto tone = cue.size() == 1 ? parse_tone(cue[0]) : std::nullopt;
    if (!tone) throw Error(ErrorKind::kUnknownTone, "unknown cue tone '" + cue + "'");
    g.cue_tone = *tone;
    g.cue_prob = j.value("cue_prob", 0.0);
    g.prominence = j.value("prominence", 0.0);
    g.turn_length = j.at("turn_length").get<std::vector<double>>();
    g.seed = j.value("seed", std::uint64_t{0});
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string("bad planted grammar: ") + e.what());
  }
  g.validate();
  return g;
}

std::string serialize_planted_grammar(const PlantedGrammar& g) {
  json j;
  j["word_length"] = g.word_length;
  j["first"] = tone_object(g.first);
  j["medial"] = tone_object(g.medial);
  j["last"] = tone_object(g.last);
  j["cue_tone"] = std::string(1, tone_letter(g.cue_tone));
  j["cue_prob"] = g.cue_prob;
  j["prominence"] = g.prominence;
  j["turn_length"] = g.turn_length;
  j["seed"] = g.seed;
  return j.dump(2) + "\n";
}

Corpus sample_corpus(const PlantedGrammar& planted, std::size_t n_words,
                     std::uint64_t seed) {
  planted.validate();
  if (n_words == 0) {
    throw Error(ErrorKind::kInvalidArgument, "n_words must be >= 1");
  }
  Rng rng(seed);
  Corpus corpus;
  corpus.metadata["source"] = "synth";
  corpus.metadata["seed"] = std::to_string(seed);
  std::size_t made = 0;
  while (made < n_words) {
    const std::size_t words = sample_categorical(rng, planted.turn_length) + 1;
    Turn turn;
    for (std::size_t w = 0; w < words && made < n_words; ++w, ++made) {
      const std::size_t len = sample_categorical(rng, planted.word_length) + 1;
      ProsodicWord word;
      word.prominent = uniform01(rng) < planted.prominence;
      for (std::size_t pos = 0; pos < len; ++pos) {
        std::size_t tone = 0;
        if (pos + 1 == len) {
          if (uniform01(rng) < planted.cue_prob) {
            tone = static_cast<std::size_t>(planted.cue_tone);
          } else {
            tone = sample_categorical(rng, planted.last);
          }
        } else {
          tone = sample_categorical(rng, pos == 0 ? planted.first : planted.medial);
        }
        word.tones.push_back(static_cast<Tone>(tone));
      }
      turn.words.push_back(std::move(word));
    }
    corpus.turns.push_back(std::move(turn));
  }
  return corpus;
}

ProbabilityVector planted_conditional(const PlantedGrammar& planted,
                                      const EncodingScheme& scheme,
                                      std::span<const SymbolId> context) {
  planted.validate();
  if (!scheme.is_hierarchical() ||
      scheme.prominence_encoding() != ProminenceEncoding::kOpenMarker) {
    throw Error(ErrorKind::kInvalidArgument,
                "planted conditionals need 'hier' or 'hierprom'");
  }
  auto unreachable = [](const std::string& msg) {
    return Error(ErrorKind::kUnreachableContext, msg);
  };
  const std::vector<Symbol> symbols = to_symbols(context, scheme);

  enum class Cls { kTone, kTurnOpen, kTurnClose, kOpen, kClose };
  std::vector<Cls> cls;
  std::vector<Tone> tones_of(symbols.size(), Tone::kT);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (const auto* t = std::get_if<Tone>(&symbols[i])) {
      cls.push_back(Cls::kTone);
      tones_of[i] = *t;
      continue;
    }
    switch (std::get<StructureSymbol>(symbols[i])) {
      case StructureSymbol::kTurnOpen: cls.push_back(Cls::kTurnOpen); break;
      case StructureSymbol::kTurnClose: cls.push_back(Cls::kTurnClose); break;
      case StructureSymbol::kWordOpen:
      case StructureSymbol::kProminentWordOpen: cls.push_back(Cls::kOpen); break;
      case StructureSymbol::kWordClose: cls.push_back(Cls::kClose); break;
    }
  }
  // Local grammar of the encoding: [ -> open -> tone -> (tone | ) ) and
  // ) -> (open | ]); nothing precedes [ or follows ].
  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (cls[i] == Cls::kTurnClose) throw unreachable("turn already closed");
    if (cls[i] == Cls::kTurnOpen && i != 0) throw unreachable("turn open inside a turn");
    if (i == 0) continue;
    const Cls prev = cls[i - 1];
    bool ok = false;
    switch (cls[i]) {
      case Cls::kOpen: ok = prev == Cls::kTurnOpen || prev == Cls::kClose; break;
      case Cls::kTone: ok = prev == Cls::kOpen || prev == Cls::kTone; break;
      case Cls::kClose: ok = prev == Cls::kTone; break;
      default: break;
    }
    if (!ok) throw unreachable("symbol order cannot be emitted");
  }

  ProbabilityVector out(scheme.size(), 0.0);
  const SymbolId word_close = scheme.id_of(StructureSymbol::kWordClose);
  auto add_open = [&](double mass) {
    if (scheme.carries_prominence()) {
      out[scheme.id_of(StructureSymbol::kWordOpen)] += mass * (1.0 - planted.prominence);
      out[scheme.id_of(StructureSymbol::kProminentWordOpen)] += mass * planted.prominence;
    } else {
      out[scheme.id_of(StructureSymbol::kWordOpen)] += mass;
    }
  };

  const std::size_t max_len = planted.word_length.size();
  const ToneDistribution final_dist = final_distribution(planted);

  // Posterior over (word length, tones emitted) for the tone run
  // tones_of[first, last). `pinned` means the run starts right after an open
  // marker.
  struct Fragment {
    double total = 0.0;
    double close_mass = 0.0;
    ProbabilityVector next_tone = ProbabilityVector(kToneCount, 0.0);
  };
  auto fragment = [&](std::size_t first, std::size_t last, bool pinned) {
    Fragment f;
    const std::size_t observed = last - first;
    for (std::size_t len = 1; len <= max_len; ++len) {
      const double p_len = planted.word_length[len - 1];
      if (p_len <= 0.0) continue;
      const std::size_t lo = pinned ? observed : std::max<std::size_t>(observed, 1);
      const std::size_t hi = pinned ? observed : len;
      for (std::size_t emitted = lo; emitted <= hi && emitted <= len; ++emitted) {
        double w = p_len;
        for (std::size_t r = 0; r < observed && w > 0.0; ++r) {
          const std::size_t pos = emitted - observed + r;
          w *= position_distribution(planted, final_dist, pos, len)
                   [static_cast<std::size_t>(tones_of[first + r])];
        }
        if (w <= 0.0) continue;
        f.total += w;
        if (emitted == len) {
          f.close_mass += w;
        } else {
          const auto& dist = position_distribution(planted, final_dist, emitted, len);
          for (std::size_t t = 0; t < kToneCount; ++t) f.next_tone[t] += w * dist[t];
        }
      }
    }
    return f;
  };

  // Every complete word in the context must be emittable. Words are
  // independent, so they constrain nothing beyond that.
  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (cls[i] != Cls::kClose) continue;
    std::size_t first = i;
    while (first > 0 && cls[first - 1] == Cls::kTone) --first;
    const bool pinned = first > 0;
    if (fragment(first, i, pinned).close_mass <= 0.0) {
      throw unreachable("word cannot be emitted");
    }
  }

  if (cls.empty()) {
    // Long-run symbol frequencies: expected symbol counts per turn over the
    // expected turn length.
    double mean_words = 0.0;
    for (std::size_t k = 0; k < planted.turn_length.size(); ++k) {
      mean_words += static_cast<double>(k + 1) * planted.turn_length[k];
    }
    ProbabilityVector tones_per_word(kToneCount, 0.0);
    double mean_len = 0.0;
    for (std::size_t len = 1; len <= max_len; ++len) {
      const double p_len = planted.word_length[len - 1];
      mean_len += p_len * static_cast<double>(len);
      for (std::size_t pos = 0; pos < len; ++pos) {
        const auto& dist = position_distribution(planted, final_dist, pos, len);
        for (std::size_t t = 0; t < kToneCount; ++t) tones_per_word[t] += p_len * dist[t];
      }
    }
    const double per_turn = 2.0 + mean_words * (2.0 + mean_len);
    out[scheme.id_of(StructureSymbol::kTurnOpen)] = 1.0 / per_turn;
    out[scheme.id_of(StructureSymbol::kTurnClose)] = 1.0 / per_turn;
    out[scheme.id_of(StructureSymbol::kWordClose)] = mean_words / per_turn;
    add_open(mean_words / per_turn);
    for (Tone t : kAllTones) {
      out[scheme.id_of(t)] =
          mean_words * tones_per_word[static_cast<std::size_t>(t)] / per_turn;
    }
    return out;
  }
  const Cls back = cls.back();
  if (back == Cls::kTurnOpen) {
    add_open(1.0);
    return out;
  }

  if (back == Cls::kClose) {
    const bool turn_start_seen = cls.front() == Cls::kTurnOpen;
    const auto closes = static_cast<std::size_t>(
        std::count(cls.begin(), cls.end(), Cls::kClose));
    double end_mass = 0.0;
    double total = 0.0;
    for (std::size_t t = 1; t <= planted.turn_length.size(); ++t) {
      const double p = planted.turn_length[t - 1];
      if (t < closes) continue;
      if (turn_start_seen) {
        // The current close is exactly the closes-th word of the turn.
        total += p;
        if (t == closes) end_mass += p;
      } else {
        // At least the closes-th word; every index in [closes, t] is
        // equally likely under the stationary stream.
        total += p * static_cast<double>(t - closes + 1);
        end_mass += p;
      }
    }
    if (total <= 0.0) throw unreachable("turn cannot hold that many words");
    out[scheme.id_of(StructureSymbol::kTurnClose)] = end_mass / total;
    add_open(1.0 - end_mass / total);
    return out;
  }

  // Inside a word: hidden state (word length, tones emitted so far).
  std::size_t last_open = cls.size();
  for (std::size_t i = cls.size(); i-- > 0;) {
    if (cls[i] == Cls::kOpen) {
      last_open = i;
      break;
    }
  }
  const bool pinned = last_open != cls.size();
  const auto f = fragment(pinned ? last_open + 1 : 0, cls.size(), pinned);
  const double total = f.total;
  const double close_mass = f.close_mass;
  const auto& next_tone = f.next_tone;
  if (total <= 0.0) throw unreachable("tones cannot be emitted in this position");
  out[word_close] = close_mass / total;
  for (Tone t : kAllTones) {
    out[scheme.id_of(t)] = next_tone[static_cast<std::size_t>(t)] / total;
  }
  return out;
}

}  // namespace tonoseg
