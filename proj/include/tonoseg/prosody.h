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

// Tonal alphabet, the turn > prosodic word hierarchy, and the symbol
// encodings that flatten a turn into a sequence for the grammar.

#ifndef TONOSEG_PROSODY_H_
#define TONOSEG_PROSODY_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tonoseg {

// INTSINT tone labels, in canonical alphabet order.
enum class Tone : std::uint8_t { kT, kM, kB, kH, kS, kL, kU, kD };

inline constexpr std::size_t kToneCount = 8;
inline constexpr std::array<Tone, kToneCount> kAllTones = {
    Tone::kT, Tone::kM, Tone::kB, Tone::kH,
    Tone::kS, Tone::kL, Tone::kU, Tone::kD};

std::optional<Tone> parse_tone(char letter);
char tone_letter(Tone tone);

// T, M, B encode the speaker's range; the rest are defined against the
// neighbouring target.
constexpr bool is_absolute(Tone t) {
  return t == Tone::kT || t == Tone::kM || t == Tone::kB;
}
constexpr bool is_relative(Tone t) { return !is_absolute(t); }
constexpr bool is_iterative(Tone t) { return t == Tone::kU || t == Tone::kD; }
constexpr bool is_non_iterative(Tone t) {
  return t == Tone::kH || t == Tone::kS || t == Tone::kL;
}

enum class StructureSymbol : std::uint8_t {
  kTurnOpen,
  kTurnClose,
  kWordOpen,
  kWordClose,
  kProminentWordOpen,
};

// Tone emitted inside a prominent word under the tone-doubling prominence
// encoding.
struct ProminentTone {
  Tone tone;
  friend bool operator==(const ProminentTone&, const ProminentTone&) = default;
};

using Symbol = std::variant<Tone, ProminentTone, StructureSymbol>;

// Text form used by `encode` output and model files: tones by letter,
// prominent tones as "H*", and "[", "]", "(", ")", "*(" for structure.
std::string symbol_name(const Symbol& symbol);
std::optional<Symbol> parse_symbol_name(std::string_view name);

using SymbolId = std::uint16_t;

enum class SchemeKind { kFlat, kHierarchical, kHierarchyProminence };

enum class ProminenceEncoding {
  kOpenMarker,   // prominent words open with ProminentWordOpen
  kToneDoubling  // prominent words carry ProminentTone symbols
};

class EncodingScheme {
 public:
  static EncodingScheme flat();
  static EncodingScheme hierarchical();
  static EncodingScheme hierarchy_prominence(
      ProminenceEncoding encoding = ProminenceEncoding::kOpenMarker);

  // Registry lookup: "flat", "hier", "hierprom", "hierprom-tones".
  // Throws Error(kSchemeMismatch) for unknown ids.
  static EncodingScheme from_id(std::string_view id);
  static std::vector<std::string> registered_ids();

  const std::string& id() const { return id_; }
  SchemeKind kind() const { return kind_; }
  ProminenceEncoding prominence_encoding() const { return prominence_; }
  bool is_hierarchical() const { return kind_ != SchemeKind::kFlat; }
  bool carries_prominence() const {
    return kind_ == SchemeKind::kHierarchyProminence;
  }

  std::span<const Symbol> alphabet() const { return alphabet_; }
  std::size_t size() const { return alphabet_.size(); }

  std::optional<SymbolId> find(const Symbol& symbol) const;
  // Throws Error(kSymbolOutsideAlphabet).
  SymbolId id_of(const Symbol& symbol) const;
  const Symbol& symbol_at(SymbolId id) const { return alphabet_.at(id); }

  // Symbols a word renders to under this scheme.
  Symbol word_open(bool prominent) const;
  Symbol tone_symbol(Tone tone, bool prominent) const;

  friend bool operator==(const EncodingScheme& a, const EncodingScheme& b) {
    return a.id_ == b.id_;
  }

 private:
  EncodingScheme(std::string id, SchemeKind kind, ProminenceEncoding prom);

  std::string id_;
  SchemeKind kind_;
  ProminenceEncoding prominence_;
  std::vector<Symbol> alphabet_;
};

struct ProsodicWord {
  std::vector<Tone> tones;
  bool prominent = false;
  friend bool operator==(const ProsodicWord&, const ProsodicWord&) = default;
};

struct Turn {
  std::vector<ProsodicWord> words;

  std::size_t tone_count() const;
  // Tones with the word structure dropped.
  std::vector<Tone> tones() const;
  friend bool operator==(const Turn&, const Turn&) = default;
};

struct Corpus {
  std::vector<Turn> turns;
  std::map<std::string, std::string> metadata;

  std::size_t word_count() const;
  std::size_t tone_count() const;
  friend bool operator==(const Corpus&, const Corpus&) = default;
};

// Throws Error(kEmptyTurn / kEmptyWord) when the hierarchy invariants fail.
void validate(const Turn& turn);
void validate(const Corpus& corpus);

std::vector<Symbol> encode_turn(const Turn& turn, const EncodingScheme& scheme);
std::vector<SymbolId> encode_turn_ids(const Turn& turn,
                                      const EncodingScheme& scheme);
std::vector<std::vector<SymbolId>> encode_corpus_ids(
    const Corpus& corpus, const EncodingScheme& scheme);

// Inverse of encode_turn for the hierarchical schemes. Flat encodings carry
// no word partition and are rejected with kNotInvertible.
Turn decode_turn(std::span<const Symbol> symbols,
                 const EncodingScheme& scheme);

std::vector<SymbolId> to_ids(std::span<const Symbol> symbols,
                             const EncodingScheme& scheme);
std::vector<Symbol> to_symbols(std::span<const SymbolId> ids,
                               const EncodingScheme& scheme);

}  // namespace tonoseg

#endif  // TONOSEG_PROSODY_H_
