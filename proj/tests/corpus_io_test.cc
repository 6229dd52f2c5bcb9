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

#include "tonoseg/corpus_io.h"

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "test_util.h"
#include "tonoseg/error.h"
#include "tonoseg/synth.h"

namespace tonoseg {
namespace {

template <typename F>
Error capture_error(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error thrown";
  return Error(ErrorKind::kInternal, "none");
}

TEST(ParseCorpusTest, MinimalDocument) {
  const auto corpus = parse_corpus("tonoseg-corpus v1\n[ (H) ]\n");
  ASSERT_EQ(corpus.turns.size(), 1u);
  EXPECT_EQ(corpus.word_count(), 1u);
  EXPECT_EQ(corpus.turns[0], (Turn{{{{Tone::kH}, false}}}));
}

TEST(ParseCorpusTest, CommentsMetadataAndCrlf) {
  const auto corpus = parse_corpus(
      "# leading comment\r\ntonoseg-corpus v1\r\n@source hand\r\n"
      "\r\n[ ( U S ) *( T D ) ]\r\n  # indented comment\n[ ( L ) ]");
  EXPECT_EQ(corpus.metadata.at("source"), "hand");
  ASSERT_EQ(corpus.turns.size(), 2u);
  EXPECT_EQ(corpus.turns[0],
            (Turn{{{{Tone::kU, Tone::kS}, false}, {{Tone::kT, Tone::kD}, true}}}));
  EXPECT_EQ(corpus.tone_count(), 5u);
}

TEST(ParseCorpusTest, UnknownToneIsPositioned) {
  const auto e = capture_error(
      [] { parse_corpus("tonoseg-corpus v1\n[ ( H S ) ]\n[ ( H X ) ]\n"); });
  EXPECT_EQ(e.kind(), ErrorKind::kUnknownTone);
  ASSERT_TRUE(e.position());
  EXPECT_EQ(e.position()->line, 3u);
  EXPECT_EQ(e.position()->column, 7u);
}

TEST(ParseCorpusTest, DistinctErrorKinds) {
  struct Case {
    const char* text;
    ErrorKind kind;
    std::size_t line;
    std::size_t column;
  };
  const std::vector<Case> cases = {
      {"tonoseg-corpus v1\n[ ( ) ]\n", ErrorKind::kEmptyWord, 2, 3},
      {"tonoseg-corpus v1\n[ ]\n", ErrorKind::kEmptyTurn, 2, 1},
      {"tonoseg-corpus v1\n[ ( H ]\n", ErrorKind::kMalformedNesting, 2, 7},
      {"tonoseg-corpus v1\n[ ( H )\n", ErrorKind::kMalformedNesting, 2, 1},
      {"tonoseg-corpus v1\n( H )\n", ErrorKind::kMalformedNesting, 2, 1},
      {"tonoseg-corpus v1\n[ H ]\n", ErrorKind::kMalformedNesting, 2, 3},
      {"tonoseg-corpus v1\n[ ( H ( S ) ) ]\n", ErrorKind::kMalformedNesting, 2, 7},
      {"tonoseg-corpus v1\n[ * ( H ) ]\n", ErrorKind::kMalformedNesting, 2, 3},
      {"tonoseg-corpus v1\n[ ( H ) ] [ ( H ) ]\n", ErrorKind::kMalformedNesting, 2, 11},
      {"tonoseg-corpus v2\n[ ( H ) ]\n", ErrorKind::kBadVersion, 1, 1},
      {"[ ( H ) ]\n", ErrorKind::kBadVersion, 1, 1},
  };
  for (const auto& c : cases) {
    const auto e = capture_error([&] { parse_corpus(c.text); });
    EXPECT_EQ(e.kind(), c.kind) << c.text;
    ASSERT_TRUE(e.position()) << c.text;
    EXPECT_EQ(e.position()->line, c.line) << c.text;
    EXPECT_EQ(e.position()->column, c.column) << c.text;
  }
  EXPECT_EQ(capture_error([] { parse_corpus(""); }).kind(), ErrorKind::kBadVersion);
}

TEST(ParseCorpusTest, ThreeTurnsOf825Words) {
  const auto sampled = sample_corpus(default_planted_grammar(), 825, 3);
  std::vector<ProsodicWord> words;
  for (const auto& t : sampled.turns) {
    words.insert(words.end(), t.words.begin(), t.words.end());
  }
  ASSERT_EQ(words.size(), 825u);
  Corpus corpus;
  for (std::size_t k = 0; k < 3; ++k) {
    corpus.turns.push_back(Turn{{words.begin() + 275 * k, words.begin() + 275 * (k + 1)}});
  }
  const std::string text = serialize_corpus(corpus);
  // Independent count: every word opens with exactly one '('.
  EXPECT_EQ(std::count(text.begin(), text.end(), '('), 825);
  const auto parsed = parse_corpus(text);
  EXPECT_EQ(parsed.turns.size(), 3u);
  EXPECT_EQ(parsed.word_count(), 825u);
}

TEST(SerializeCorpusTest, RoundTripAndDeterminism) {
  const Corpus minimal{{Turn{{{{Tone::kH}, false}}}}, {}};
  EXPECT_EQ(parse_corpus(serialize_corpus(minimal)), minimal);
  EXPECT_EQ(serialize_corpus(minimal), "tonoseg-corpus v1\n[ ( H ) ]\n");

  const auto big = sample_corpus(default_planted_grammar(), 1000, 99);
  EXPECT_EQ(big.word_count(), 1000u);
  const auto text = serialize_corpus(big);
  EXPECT_EQ(text, serialize_corpus(big));
  EXPECT_EQ(parse_corpus(text), big);
}

TEST(SerializeCorpusPropertyTest, RandomCorporaRoundTrip) {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto planted = testing::random_planted(rng);
    const auto corpus = sample_corpus(planted, 1 + rng() % 60, rng());
    EXPECT_EQ(parse_corpus(serialize_corpus(corpus)), corpus);
  }
}

// Random byte strings either parse to a valid corpus or fail with a
// positioned error.
TEST(ParseCorpusPropertyTest, ParsingIsTotal) {
  Rng rng(32);
  const std::string alphabet = "[]()*# \tHLTMBSUDX@\r\n1v";
  for (int trial = 0; trial < 3000; ++trial) {
    std::string text = trial % 2 ? "tonoseg-corpus v1\n" : "";
    const std::size_t len = rng() % 40;
    for (std::size_t i = 0; i < len; ++i) {
      text += trial % 7 == 0 ? static_cast<char>(rng() % 256)
                             : alphabet[rng() % alphabet.size()];
    }
    try {
      const auto corpus = parse_corpus(text);
      EXPECT_NO_THROW(validate(corpus));
    } catch (const Error& e) {
      EXPECT_TRUE(e.position()) << e.what();
    }
  }
}

PatternGrammar tiny_grammar() {
  const auto corpus = sample_corpus(default_planted_grammar(), 10, 5);
  return train(corpus, EncodingScheme::hierarchy_prominence(), {3, 1, 0.5});
}

TEST(ModelIoTest, RoundTripPreservesCountsAndProbabilities) {
  const auto g = tiny_grammar();
  const auto text = save_model(g);
  EXPECT_EQ(text.rfind("tonoseg-model v1\nscheme hierprom\nconfig 3 1 0.5\n", 0), 0u);
  const auto loaded = load_model(text);
  EXPECT_EQ(loaded.contexts(), g.contexts());
  EXPECT_EQ(loaded.scheme_id(), "hierprom");
  EXPECT_EQ(loaded.config().max_depth, 3);
  EXPECT_EQ(loaded.config().smoothing, 0.5);
  EXPECT_EQ(save_model(loaded), text);
  Rng rng(33);
  for (int q = 0; q < 500; ++q) {
    std::vector<SymbolId> ctx(rng() % 6);
    for (auto& x : ctx) x = static_cast<SymbolId>(rng() % g.alphabet_size());
    const auto a = g.conditional_distribution(ctx);
    const auto b = loaded.conditional_distribution(ctx);
    for (std::size_t s = 0; s < a.size(); ++s) EXPECT_NEAR(a[s], b[s], 1e-12);
  }
}

TEST(ModelIoTest, RoundTripEveryScheme) {
  const auto corpus = sample_corpus(default_planted_grammar(), 200, 6);
  for (const auto& id : EncodingScheme::registered_ids()) {
    const auto scheme = EncodingScheme::from_id(id);
    const auto g = train(corpus, scheme, {4, 2, 0.25});
    EXPECT_EQ(load_model(save_model(g), id).contexts(), g.contexts()) << id;
  }
}

TEST(ModelIoTest, Rejections) {
  const auto text = save_model(tiny_grammar());
  // Truncation anywhere after the header is corrupt.
  for (std::size_t cut : {text.size() / 4, text.size() / 2, text.size() - 5}) {
    EXPECT_EQ(capture_error([&] { load_model(text.substr(0, cut)); }).kind(),
              ErrorKind::kCorruptModel)
        << cut;
  }
  std::string unknown = text;
  unknown.replace(unknown.find("hierprom"), 8, "mystery");
  EXPECT_EQ(capture_error([&] { load_model(unknown); }).kind(),
            ErrorKind::kSchemeMismatch);
  EXPECT_EQ(capture_error([&] { load_model(text, "hier"); }).kind(),
            ErrorKind::kSchemeMismatch);
  std::string version = text;
  version.replace(version.find("v1"), 2, "v9");
  EXPECT_EQ(capture_error([&] { load_model(version); }).kind(), ErrorKind::kBadVersion);
  std::string bad_count = text;
  bad_count.replace(bad_count.find("\n.") + 3, 1, "x");
  EXPECT_EQ(capture_error([&] { load_model(bad_count); }).kind(),
            ErrorKind::kCorruptModel);
  EXPECT_EQ(capture_error([&] { load_model(text + "extra\n"); }).kind(),
            ErrorKind::kCorruptModel);
  EXPECT_EQ(capture_error([] { load_model(""); }).kind(), ErrorKind::kCorruptModel);
}

TEST(ModelIoTest, ToyGrammarCannotBeSaved) {
  const std::vector<std::vector<SymbolId>> seqs = {{0, 1}};
  const auto g = PatternGrammar::train(seqs, 2, {});
  EXPECT_EQ(capture_error([&] { save_model(g); }).kind(), ErrorKind::kInvalidArgument);
}

TEST(SegmentationIoTest, RoundTrip) {
  std::vector<SegmentationResult> results(2);
  results[0].spans = {{0, 2, false}, {2, 3, true}, {3, 5, false}};
  results[1].spans = {{0, 1, true}};
  const auto text = serialize_segmentation(results);
  EXPECT_EQ(text, "0-2 2-3* 3-5\n0-1*\n");
  const auto parsed = parse_segmentation(text);
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(parsed[0].spans, results[0].spans);
  EXPECT_EQ(parsed[1].spans, results[1].spans);
  EXPECT_TRUE(std::isnan(parsed[0].log_prob));
}

TEST(SegmentationIoTest, Rejections) {
  for (const char* text : {"0-2 3-4\n", "1-2\n", "0-0\n", "0+2\n", "0-2 2-x\n"}) {
    const auto e = capture_error([&] { parse_segmentation(text); });
    EXPECT_TRUE(e.position()) << text;
  }
  const auto e = capture_error([] { parse_segmentation("0-1\n0-1 1-3 4-5\n"); });
  EXPECT_EQ(e.position()->line, 2u);
  EXPECT_EQ(e.position()->column, 9u);
}

TEST(ToneStreamTest, PlainAndCorpusInput) {
  const auto plain = parse_tone_streams("# tones\nH S L\nT\n");
  ASSERT_EQ(plain.size(), 2u);
  EXPECT_EQ(plain[0], (std::vector<Tone>{Tone::kH, Tone::kS, Tone::kL}));
  EXPECT_EQ(serialize_tone_streams(plain), "H S L\nT\n");
  const auto from_corpus =
      parse_tone_streams("tonoseg-corpus v1\n[ ( U S ) *( T D ) ]\n");
  ASSERT_EQ(from_corpus.size(), 1u);
  EXPECT_EQ(from_corpus[0], (std::vector<Tone>{Tone::kU, Tone::kS, Tone::kT, Tone::kD}));
  const auto e = capture_error([] { parse_tone_streams("H S\nH HS\n"); });
  EXPECT_EQ(e.kind(), ErrorKind::kUnknownTone);
  EXPECT_EQ(e.position()->line, 2u);
  EXPECT_EQ(e.position()->column, 3u);
}

}  // namespace
}  // namespace tonoseg
