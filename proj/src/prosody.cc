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

#include "tonoseg/prosody.h"

#include <algorithm>
#include <utility>

#include "tonoseg/error.h"

namespace tonoseg {

std::optional<Tone> parse_tone(char letter) {
  switch (letter) {
    case 'T': return Tone::kT;
    case 'M': return Tone::kM;
    case 'B': return Tone::kB;
    case 'H': return Tone::kH;
    case 'S': return Tone::kS;
    case 'L': return Tone::kL;
    case 'U': return Tone::kU;
    case 'D': return Tone::kD;
    default: return std::nullopt;
  }
}

char tone_letter(Tone tone) {
  static constexpr char kLetters[kToneCount] = {'T', 'M', 'B', 'H',
                                                'S', 'L', 'U', 'D'};
  return kLetters[static_cast<std::size_t>(tone)];
}

std::string symbol_name(const Symbol& symbol) {
  if (const auto* tone = std::get_if<Tone>(&symbol)) {
    return std::string(1, tone_letter(*tone));
  }
  if (const auto* prom = std::get_if<ProminentTone>(&symbol)) {
    return std::string(1, tone_letter(prom->tone)) + "*";
  }
  switch (std::get<StructureSymbol>(symbol)) {
    case StructureSymbol::kTurnOpen: return "[";
    case StructureSymbol::kTurnClose: return "]";
    case StructureSymbol::kWordOpen: return "(";
    case StructureSymbol::kWordClose: return ")";
    case StructureSymbol::kProminentWordOpen: return "*(";
  }
  return "?";
}

std::optional<Symbol> parse_symbol_name(std::string_view name) {
  if (name == "[") return StructureSymbol::kTurnOpen;
  if (name == "]") return StructureSymbol::kTurnClose;
  if (name == "(") return StructureSymbol::kWordOpen;
  if (name == ")") return StructureSymbol::kWordClose;
  if (name == "*(") return StructureSymbol::kProminentWordOpen;
  if (name.size() == 1) {
    if (auto tone = parse_tone(name[0])) return *tone;
  }
  if (name.size() == 2 && name[1] == '*') {
    if (auto tone = parse_tone(name[0])) return ProminentTone{*tone};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// EncodingScheme

EncodingScheme::EncodingScheme(std::string id, SchemeKind kind,
                               ProminenceEncoding prom)
    : id_(std::move(id)), kind_(kind), prominence_(prom) {
  for (Tone t : kAllTones) alphabet_.emplace_back(t);
  const bool doubled = kind == SchemeKind::kHierarchyProminence &&
                       prom == ProminenceEncoding::kToneDoubling;
  if (doubled) {
    for (Tone t : kAllTones) alphabet_.emplace_back(ProminentTone{t});
  }
  alphabet_.emplace_back(StructureSymbol::kTurnOpen);
  alphabet_.emplace_back(StructureSymbol::kTurnClose);
  if (kind != SchemeKind::kFlat) {
    alphabet_.emplace_back(StructureSymbol::kWordOpen);
    alphabet_.emplace_back(StructureSymbol::kWordClose);
  }
  if (kind == SchemeKind::kHierarchyProminence && !doubled) {
    alphabet_.emplace_back(StructureSymbol::kProminentWordOpen);
  }
}

EncodingScheme EncodingScheme::flat() {
  return EncodingScheme("flat", SchemeKind::kFlat,
                        ProminenceEncoding::kOpenMarker);
}

EncodingScheme EncodingScheme::hierarchical() {
  return EncodingScheme("hier", SchemeKind::kHierarchical,
                        ProminenceEncoding::kOpenMarker);
}

EncodingScheme EncodingScheme::hierarchy_prominence(
    ProminenceEncoding encoding) {
  return EncodingScheme(
      encoding == ProminenceEncoding::kOpenMarker ? "hierprom"
                                                  : "hierprom-tones",
      SchemeKind::kHierarchyProminence, encoding);
}

EncodingScheme EncodingScheme::from_id(std::string_view id) {
  if (id == "flat") return flat();
  if (id == "hier") return hierarchical();
  if (id == "hierprom") return hierarchy_prominence();
  if (id == "hierprom-tones") {
    return hierarchy_prominence(ProminenceEncoding::kToneDoubling);
  }
  throw Error(ErrorKind::kSchemeMismatch,
              "unknown scheme id '" + std::string(id) + "'");
}

std::vector<std::string> EncodingScheme::registered_ids() {
  return {"flat", "hier", "hierprom", "hierprom-tones"};
}

std::optional<SymbolId> EncodingScheme::find(const Symbol& symbol) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), symbol);
  if (it == alphabet_.end()) return std::nullopt;
  return static_cast<SymbolId>(it - alphabet_.begin());
}

SymbolId EncodingScheme::id_of(const Symbol& symbol) const {
  if (auto id = find(symbol)) return *id;
  throw Error(ErrorKind::kSymbolOutsideAlphabet,
              "symbol '" + symbol_name(symbol) + "' is not in scheme '" +
                  id_ + "'");
}

Symbol EncodingScheme::word_open(bool prominent) const {
  if (prominent && kind_ == SchemeKind::kHierarchyProminence &&
      prominence_ == ProminenceEncoding::kOpenMarker) {
    return StructureSymbol::kProminentWordOpen;
  }
  return StructureSymbol::kWordOpen;
}

Symbol EncodingScheme::tone_symbol(Tone tone, bool prominent) const {
  if (prominent && kind_ == SchemeKind::kHierarchyProminence &&
      prominence_ == ProminenceEncoding::kToneDoubling) {
    return ProminentTone{tone};
  }
  return tone;
}

// ---------------------------------------------------------------------------
// Hierarchy

std::size_t Turn::tone_count() const {
  std::size_t n = 0;
  for (const auto& w : words) n += w.tones.size();
  return n;
}

std::vector<Tone> Turn::tones() const {
  std::vector<Tone> out;
  out.reserve(tone_count());
  for (const auto& w : words) out.insert(out.end(), w.tones.begin(), w.tones.end());
  return out;
}

std::size_t Corpus::word_count() const {
  std::size_t n = 0;
  for (const auto& t : turns) n += t.words.size();
  return n;
}

std::size_t Corpus::tone_count() const {
  std::size_t n = 0;
  for (const auto& t : turns) n += t.tone_count();
  return n;
}

void validate(const Turn& turn) {
  if (turn.words.empty()) {
    throw Error(ErrorKind::kEmptyTurn, "turn has no words");
  }
  for (std::size_t i = 0; i < turn.words.size(); ++i) {
    if (turn.words[i].tones.empty()) {
      throw Error(ErrorKind::kEmptyWord, "word has no tones", std::nullopt,
                  std::nullopt, i);
    }
  }
}

void validate(const Corpus& corpus) {
  for (std::size_t i = 0; i < corpus.turns.size(); ++i) {
    try {
      validate(corpus.turns[i]);
    } catch (const Error& e) {
      throw Error(e.kind(), e.message(), std::nullopt, i, e.index());
    }
  }
}

// ---------------------------------------------------------------------------
// Encoding

std::vector<Symbol> encode_turn(const Turn& turn, const EncodingScheme& scheme) {
  std::vector<Symbol> out;
  out.reserve(turn.tone_count() + 2 * turn.words.size() + 2);
  out.emplace_back(StructureSymbol::kTurnOpen);
  for (const auto& word : turn.words) {
    const bool prominent = scheme.carries_prominence() && word.prominent;
    if (scheme.is_hierarchical()) out.push_back(scheme.word_open(prominent));
    for (Tone t : word.tones) out.push_back(scheme.tone_symbol(t, prominent));
    if (scheme.is_hierarchical()) out.emplace_back(StructureSymbol::kWordClose);
  }
  out.emplace_back(StructureSymbol::kTurnClose);
  return out;
}

std::vector<SymbolId> encode_turn_ids(const Turn& turn,
                                      const EncodingScheme& scheme) {
  return to_ids(encode_turn(turn, scheme), scheme);
}

std::vector<std::vector<SymbolId>> encode_corpus_ids(
    const Corpus& corpus, const EncodingScheme& scheme) {
  std::vector<std::vector<SymbolId>> out;
  out.reserve(corpus.turns.size());
  for (const auto& turn : corpus.turns) {
    out.push_back(encode_turn_ids(turn, scheme));
  }
  return out;
}

std::vector<SymbolId> to_ids(std::span<const Symbol> symbols,
                             const EncodingScheme& scheme) {
  std::vector<SymbolId> out;
  out.reserve(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    auto id = scheme.find(symbols[i]);
    if (!id) {
      throw Error(ErrorKind::kSymbolOutsideAlphabet,
                  "symbol '" + symbol_name(symbols[i]) +
                      "' is not in scheme '" + scheme.id() + "'",
                  std::nullopt, std::nullopt, i);
    }
    out.push_back(*id);
  }
  return out;
}

std::vector<Symbol> to_symbols(std::span<const SymbolId> ids,
                               const EncodingScheme& scheme) {
  std::vector<Symbol> out;
  out.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] >= scheme.size()) {
      throw Error(ErrorKind::kSymbolOutsideAlphabet,
                  "symbol id " + std::to_string(ids[i]) +
                      " exceeds alphabet size",
                  std::nullopt, std::nullopt, i);
    }
    out.push_back(scheme.symbol_at(ids[i]));
  }
  return out;
}

Turn decode_turn(std::span<const Symbol> symbols,
                 const EncodingScheme& scheme) {
  auto fail = [](ErrorKind kind, std::string msg, std::size_t index) {
    return Error(kind, std::move(msg), std::nullopt, std::nullopt, index);
  };
  if (!scheme.is_hierarchical()) {
    throw fail(ErrorKind::kNotInvertible,
               "flat encoding carries no word partition", 0);
  }
  const bool doubled =
      scheme.prominence_encoding() == ProminenceEncoding::kToneDoubling &&
      scheme.carries_prominence();

  Turn turn;
  std::optional<ProsodicWord> open_word;
  // Tone-doubling words decide prominence from their first tone.
  bool word_has_tone = false;
  bool closed = false;
  if (symbols.empty() || symbols[0] != Symbol{StructureSymbol::kTurnOpen}) {
    throw fail(ErrorKind::kMalformedNesting, "expected turn open", 0);
  }
  for (std::size_t i = 1; i < symbols.size(); ++i) {
    const Symbol& s = symbols[i];
    if (!scheme.find(s)) {
      throw fail(ErrorKind::kSymbolOutsideAlphabet,
                 "symbol '" + symbol_name(s) + "' is not in scheme '" +
                     scheme.id() + "'",
                 i);
    }
    if (closed) {
      throw fail(ErrorKind::kMalformedNesting, "symbols after turn close", i);
    }
    if (const auto* marker = std::get_if<StructureSymbol>(&s)) {
      switch (*marker) {
        case StructureSymbol::kTurnOpen:
          throw fail(ErrorKind::kMalformedNesting, "nested turn open", i);
        case StructureSymbol::kWordOpen:
        case StructureSymbol::kProminentWordOpen:
          if (open_word) {
            throw fail(ErrorKind::kMalformedNesting, "nested word open", i);
          }
          open_word = ProsodicWord{
              {}, *marker == StructureSymbol::kProminentWordOpen};
          word_has_tone = false;
          break;
        case StructureSymbol::kWordClose:
          if (!open_word) {
            throw fail(ErrorKind::kMalformedNesting,
                       "word close without open", i);
          }
          if (open_word->tones.empty()) {
            throw fail(ErrorKind::kEmptyWord, "empty word", i);
          }
          turn.words.push_back(std::move(*open_word));
          open_word.reset();
          break;
        case StructureSymbol::kTurnClose:
          if (open_word) {
            throw fail(ErrorKind::kMalformedNesting, "unclosed word", i);
          }
          if (turn.words.empty()) {
            throw fail(ErrorKind::kEmptyTurn, "turn has no words", i);
          }
          closed = true;
          break;
      }
      continue;
    }
    if (!open_word) {
      throw fail(ErrorKind::kMalformedNesting, "tone outside a word", i);
    }
    const bool prominent_tone = std::holds_alternative<ProminentTone>(s);
    const Tone tone = prominent_tone ? std::get<ProminentTone>(s).tone
                                     : std::get<Tone>(s);
    if (doubled) {
      if (!word_has_tone) {
        open_word->prominent = prominent_tone;
      } else if (open_word->prominent != prominent_tone) {
        throw fail(ErrorKind::kMalformedNesting,
                   "mixed prominent and plain tones in one word", i);
      }
    }
    word_has_tone = true;
    open_word->tones.push_back(tone);
  }
  if (!closed) {
    throw fail(ErrorKind::kMalformedNesting,
               open_word ? "unclosed word" : "unterminated turn",
               symbols.size());
  }
  return turn;
}

}  // namespace tonoseg
