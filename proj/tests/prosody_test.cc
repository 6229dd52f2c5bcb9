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

#include <set>

#include "gtest/gtest.h"
#include "test_util.h"
#include "tonoseg/error.h"

namespace tonoseg {
namespace {

using S = StructureSymbol;

Turn two_word_turn() {
  return Turn{{{{Tone::kU, Tone::kS}, false}, {{Tone::kT, Tone::kD}, true}}};
}

TEST(ToneTest, ParsesExactlyEightLetters) {
  int accepted = 0;
  for (int c = 0; c < 256; ++c) {
    if (auto t = parse_tone(static_cast<char>(c))) {
      ++accepted;
      EXPECT_EQ(tone_letter(*t), static_cast<char>(c));
    }
  }
  EXPECT_EQ(accepted, 8);
  EXPECT_FALSE(parse_tone('X'));
  EXPECT_FALSE(parse_tone('h'));
}

TEST(ToneTest, Partitions) {
  for (Tone t : kAllTones) {
    EXPECT_NE(is_absolute(t), is_relative(t));
    if (is_relative(t)) EXPECT_NE(is_iterative(t), is_non_iterative(t));
    if (is_absolute(t)) {
      EXPECT_FALSE(is_iterative(t));
      EXPECT_FALSE(is_non_iterative(t));
    }
  }
  EXPECT_TRUE(is_absolute(Tone::kT));
  EXPECT_TRUE(is_absolute(Tone::kM));
  EXPECT_TRUE(is_absolute(Tone::kB));
  EXPECT_TRUE(is_iterative(Tone::kU));
  EXPECT_TRUE(is_iterative(Tone::kD));
  EXPECT_TRUE(is_non_iterative(Tone::kH));
  EXPECT_TRUE(is_non_iterative(Tone::kS));
  EXPECT_TRUE(is_non_iterative(Tone::kL));
}

TEST(EncodingSchemeTest, AlphabetSizesAndOrder) {
  EXPECT_EQ(EncodingScheme::flat().size(), 10u);
  EXPECT_EQ(EncodingScheme::hierarchical().size(), 12u);
  EXPECT_EQ(EncodingScheme::hierarchy_prominence().size(), 13u);
  EXPECT_EQ(EncodingScheme::hierarchy_prominence(ProminenceEncoding::kToneDoubling)
                .size(),
            20u);
  for (const auto& id : EncodingScheme::registered_ids()) {
    const auto scheme = EncodingScheme::from_id(id);
    EXPECT_EQ(scheme.id(), id);
    const auto alphabet = scheme.alphabet();
    for (std::size_t i = 0; i < kToneCount; ++i) {
      EXPECT_EQ(alphabet[i], Symbol{kAllTones[i]});
    }
    std::set<std::string> names;
    for (const auto& s : alphabet) {
      names.insert(symbol_name(s));
      EXPECT_EQ(parse_symbol_name(symbol_name(s)), s);
    }
    EXPECT_EQ(names.size(), alphabet.size()) << "duplicate symbol in " << id;
  }
  EXPECT_FALSE(EncodingScheme::flat().find(S::kWordOpen));
  EXPECT_FALSE(EncodingScheme::hierarchical().find(S::kProminentWordOpen));
}

TEST(EncodingSchemeTest, UnknownIdIsSchemeMismatch) {
  try {
    EncodingScheme::from_id("nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSchemeMismatch);
  }
}

TEST(EncodeTurnTest, MinimalFlat) {
  const Turn turn{{{{Tone::kH}, false}}};
  EXPECT_EQ(encode_turn(turn, EncodingScheme::flat()),
            (std::vector<Symbol>{S::kTurnOpen, Tone::kH, S::kTurnClose}));
}

TEST(EncodeTurnTest, TwoWordsHierarchical) {
  EXPECT_EQ(encode_turn(two_word_turn(), EncodingScheme::hierarchical()),
            (std::vector<Symbol>{S::kTurnOpen, S::kWordOpen, Tone::kU, Tone::kS,
                                 S::kWordClose, S::kWordOpen, Tone::kT, Tone::kD,
                                 S::kWordClose, S::kTurnClose}));
}

TEST(EncodeTurnTest, TwoWordsHierarchyProminence) {
  EXPECT_EQ(encode_turn(two_word_turn(), EncodingScheme::hierarchy_prominence()),
            (std::vector<Symbol>{S::kTurnOpen, S::kWordOpen, Tone::kU, Tone::kS,
                                 S::kWordClose, S::kProminentWordOpen, Tone::kT,
                                 Tone::kD, S::kWordClose, S::kTurnClose}));
}

TEST(EncodeTurnTest, ToneDoublingMarksProminentTones) {
  const auto scheme =
      EncodingScheme::hierarchy_prominence(ProminenceEncoding::kToneDoubling);
  EXPECT_EQ(encode_turn(two_word_turn(), scheme),
            (std::vector<Symbol>{S::kTurnOpen, S::kWordOpen, Tone::kU, Tone::kS,
                                 S::kWordClose, S::kWordOpen,
                                 ProminentTone{Tone::kT}, ProminentTone{Tone::kD},
                                 S::kWordClose, S::kTurnClose}));
}

TEST(DecodeTurnTest, MinimalHierarchical) {
  const std::vector<Symbol> symbols = {S::kTurnOpen, S::kWordOpen, Tone::kH,
                                       S::kWordClose, S::kTurnClose};
  EXPECT_EQ(decode_turn(symbols, EncodingScheme::hierarchical()),
            (Turn{{{{Tone::kH}, false}}}));
}

TEST(DecodeTurnTest, UnclosedWord) {
  const std::vector<Symbol> symbols = {S::kTurnOpen, S::kWordOpen, Tone::kH,
                                       S::kTurnClose};
  try {
    decode_turn(symbols, EncodingScheme::hierarchical());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMalformedNesting);
    EXPECT_EQ(e.index(), 3u);
    EXPECT_NE(e.message().find("unclosed word"), std::string::npos);
  }
}

TEST(DecodeTurnTest, FlatIsNotInvertible) {
  const auto symbols = encode_turn(two_word_turn(), EncodingScheme::flat());
  try {
    decode_turn(symbols, EncodingScheme::flat());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotInvertible);
    EXPECT_EQ(e.index(), 0u);
  }
}

TEST(DecodeTurnTest, MalformedInputsNameFirstOffendingIndex) {
  const auto hier = EncodingScheme::hierarchical();
  struct Case {
    std::vector<Symbol> symbols;
    ErrorKind kind;
    std::size_t index;
  };
  const std::vector<Case> cases = {
      {{S::kWordOpen, Tone::kH, S::kWordClose}, ErrorKind::kMalformedNesting, 0},
      {{S::kTurnOpen, Tone::kH, S::kTurnClose}, ErrorKind::kMalformedNesting, 1},
      {{S::kTurnOpen, S::kWordOpen, S::kWordClose, S::kTurnClose},
       ErrorKind::kEmptyWord, 2},
      {{S::kTurnOpen, S::kTurnClose}, ErrorKind::kEmptyTurn, 1},
      {{S::kTurnOpen, S::kWordOpen, Tone::kH, S::kWordClose},
       ErrorKind::kMalformedNesting, 4},
      {{S::kTurnOpen, S::kWordOpen, S::kWordOpen}, ErrorKind::kMalformedNesting, 2},
      {{S::kTurnOpen, S::kWordClose}, ErrorKind::kMalformedNesting, 1},
      {{S::kTurnOpen, S::kProminentWordOpen, Tone::kH, S::kWordClose,
        S::kTurnClose},
       ErrorKind::kSymbolOutsideAlphabet, 1},
      {{S::kTurnOpen, S::kWordOpen, Tone::kH, S::kWordClose, S::kTurnClose,
        S::kTurnOpen},
       ErrorKind::kMalformedNesting, 5},
  };
  for (std::size_t c = 0; c < cases.size(); ++c) {
    try {
      decode_turn(cases[c].symbols, hier);
      ADD_FAILURE() << "case " << c << " decoded";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), cases[c].kind) << "case " << c;
      EXPECT_EQ(e.index(), cases[c].index) << "case " << c;
    }
  }
}

TEST(DecodeTurnTest, ToneDoublingRejectsMixedWord) {
  const auto scheme =
      EncodingScheme::hierarchy_prominence(ProminenceEncoding::kToneDoubling);
  const std::vector<Symbol> symbols = {S::kTurnOpen, S::kWordOpen,
                                       ProminentTone{Tone::kH}, Tone::kL,
                                       S::kWordClose, S::kTurnClose};
  EXPECT_THROW(decode_turn(symbols, scheme), Error);
}

TEST(ValidateTest, EmptyTurnAndWord) {
  EXPECT_THROW(validate(Turn{}), Error);
  EXPECT_THROW(validate(Turn{{{{}, false}}}), Error);
  Corpus corpus{{two_word_turn(), Turn{}}, {}};
  try {
    validate(corpus);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyTurn);
    EXPECT_EQ(e.sequence(), 1u);
  }
}

// Round trip, length arithmetic and alphabet closure over random turns.
TEST(EncodingPropertyTest, RandomTurns) {
  Rng rng(20260101);
  const std::vector<EncodingScheme> schemes = {
      EncodingScheme::flat(), EncodingScheme::hierarchical(),
      EncodingScheme::hierarchy_prominence(),
      EncodingScheme::hierarchy_prominence(ProminenceEncoding::kToneDoubling)};
  for (int trial = 0; trial < 300; ++trial) {
    Turn turn;
    const std::size_t words = 1 + rng() % 6;
    std::size_t tones = 0;
    for (std::size_t w = 0; w < words; ++w) {
      const std::size_t len = 1 + rng() % 5;
      tones += len;
      turn.words.push_back({testing::random_tones(rng, len), rng() % 2 == 0});
    }
    std::size_t hier_length = 0;
    for (const auto& scheme : schemes) {
      const auto symbols = encode_turn(turn, scheme);
      for (const auto& s : symbols) ASSERT_TRUE(scheme.find(s)) << scheme.id();
      switch (scheme.kind()) {
        case SchemeKind::kFlat:
          EXPECT_EQ(symbols.size(), 2 + tones);
          break;
        case SchemeKind::kHierarchical:
          hier_length = symbols.size();
          EXPECT_EQ(symbols.size(), 2 + tones + 2 * words);
          EXPECT_EQ(decode_turn(symbols, scheme),
                    (Turn{[&] {
                      auto ws = turn.words;
                      for (auto& w : ws) w.prominent = false;
                      return ws;
                    }()}));
          break;
        case SchemeKind::kHierarchyProminence:
          EXPECT_EQ(symbols.size(), hier_length);
          EXPECT_EQ(decode_turn(symbols, scheme), turn);
          break;
      }
      EXPECT_EQ(to_symbols(to_ids(symbols, scheme), scheme), symbols);
    }
  }
}

}  // namespace
}  // namespace tonoseg
