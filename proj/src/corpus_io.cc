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

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <utility>

#include "tonoseg/error.h"

namespace tonoseg {
namespace {

struct Line {
  std::size_t number;  // 1-based
  std::string_view text;
};

bool is_blank(char c) { return c == ' ' || c == '\t'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (is_blank(s.front()) || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (is_blank(s.back()) || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Non-blank, non-comment lines with their 1-based numbers. Trailing '\r' is
// dropped so CRLF files parse.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty() || number == 0) {
    ++number;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{}
                                         : text.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string_view body = trim(line);
    if (!body.empty() && body.front() != '#') lines.push_back({number, line});
    if (eol == std::string_view::npos) break;
  }
  return lines;
}

std::vector<std::string_view> split_blanks(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (is_blank(s[i]) || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_blank(s[j]) && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

Error corpus_error(ErrorKind kind, std::string msg, std::size_t line,
                   std::size_t column) {
  return Error(kind, std::move(msg), SourcePosition{line, column});
}

void check_header(const std::vector<Line>& lines, std::string_view header,
                  ErrorKind missing_kind) {
  if (lines.empty()) {
    throw Error(missing_kind, "missing '" + std::string(header) + "' header",
                SourcePosition{1, 1});
  }
  const std::string_view first = trim(lines.front().text);
  if (first == header) return;
  const std::string_view magic = header.substr(0, header.find(' '));
  const bool same_family = first.substr(0, magic.size()) == magic;
  throw Error(same_family ? ErrorKind::kBadVersion : missing_kind,
              "expected '" + std::string(header) + "', found '" +
                  std::string(first) + "'",
              SourcePosition{lines.front().number, 1});
}

Turn parse_turn_line(const Line& line) {
  enum class State { kBeforeTurn, kInTurn, kInWord, kAfterTurn };
  State state = State::kBeforeTurn;
  Turn turn;
  ProsodicWord word;
  std::size_t turn_column = 0;
  std::size_t word_column = 0;
  const std::string_view s = line.text;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    const std::size_t col = i + 1;
    if (is_blank(c)) continue;
    switch (state) {
      case State::kBeforeTurn:
        if (c != '[') {
          throw corpus_error(ErrorKind::kMalformedNesting,
                             "expected '[' to open a turn", line.number, col);
        }
        state = State::kInTurn;
        turn_column = col;
        break;
      case State::kInTurn:
        if (c == '(' || c == '*') {
          if (c == '*' && (i + 1 >= s.size() || s[i + 1] != '(')) {
            throw corpus_error(ErrorKind::kMalformedNesting,
                               "'*' must directly precede '('", line.number,
                               col);
          }
          word = ProsodicWord{{}, c == '*'};
          word_column = col;
          if (c == '*') ++i;
          state = State::kInWord;
        } else if (c == ']') {
          if (turn.words.empty()) {
            throw corpus_error(ErrorKind::kEmptyTurn, "turn has no words",
                               line.number, turn_column);
          }
          state = State::kAfterTurn;
        } else if (std::isalpha(static_cast<unsigned char>(c)) &&
                   !parse_tone(c)) {
          throw corpus_error(ErrorKind::kUnknownTone,
                             std::string("unknown tone '") + c + "'",
                             line.number, col);
        } else {
          throw corpus_error(ErrorKind::kMalformedNesting,
                             std::string("unexpected '") + c +
                                 "' outside a word",
                             line.number, col);
        }
        break;
      case State::kInWord:
        if (c == ')') {
          if (word.tones.empty()) {
            throw corpus_error(ErrorKind::kEmptyWord, "word has no tones",
                               line.number, word_column);
          }
          turn.words.push_back(std::move(word));
          word = {};
          state = State::kInTurn;
        } else if (auto tone = parse_tone(c)) {
          word.tones.push_back(*tone);
        } else if (c == '(' || c == '[' || c == ']' || c == '*') {
          throw corpus_error(ErrorKind::kMalformedNesting,
                             std::string("unexpected '") + c + "' inside a word",
                             line.number, col);
        } else {
          throw corpus_error(ErrorKind::kUnknownTone,
                             std::string("unknown tone '") + c + "'",
                             line.number, col);
        }
        break;
      case State::kAfterTurn:
        throw corpus_error(ErrorKind::kMalformedNesting,
                           "only one turn per line", line.number, col);
    }
  }
  if (state == State::kInWord) {
    throw corpus_error(ErrorKind::kMalformedNesting, "unclosed word",
                       line.number, word_column);
  }
  if (state == State::kInTurn) {
    throw corpus_error(ErrorKind::kMalformedNesting, "unclosed turn",
                       line.number, turn_column);
  }
  return turn;
}

bool parse_u64(std::string_view token, std::uint64_t& out) {
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_int(std::string_view token, int& out) {
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_real(std::string_view token, double& out) {
  const std::string copy(token);
  char* end = nullptr;
  out = std::strtod(copy.c_str(), &end);
  return !copy.empty() && end == copy.c_str() + copy.size();
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Corpus parse_corpus(std::string_view text) {
  const auto lines = content_lines(text);
  check_header(lines, kCorpusHeader, ErrorKind::kBadVersion);
  Corpus corpus;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const Line& line = lines[l];
    const std::string_view body = trim(line.text);
    if (body.front() == '@') {
      const auto rest = body.substr(1);
      const auto space = rest.find_first_of(" \t");
      const auto key = rest.substr(0, space);
      if (key.empty()) {
        throw corpus_error(ErrorKind::kInvalidArgument, "empty metadata key",
                           line.number, 1);
      }
      const auto value =
          space == std::string_view::npos ? std::string_view{} : trim(rest.substr(space));
      corpus.metadata[std::string(key)] = std::string(value);
      continue;
    }
    corpus.turns.push_back(parse_turn_line(line));
  }
  return corpus;
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out(kCorpusHeader);
  out += '\n';
  for (const auto& [key, value] : corpus.metadata) {
    out += '@';
    out += key;
    if (!value.empty()) {
      out += ' ';
      out += value;
    }
    out += '\n';
  }
  for (const auto& turn : corpus.turns) {
    out += '[';
    for (const auto& word : turn.words) {
      out += word.prominent ? " *(" : " (";
      for (Tone t : word.tones) {
        out += ' ';
        out += tone_letter(t);
      }
      out += " )";
    }
    out += " ]\n";
  }
  return out;
}

std::string save_model(const PatternGrammar& grammar) {
  if (grammar.scheme_id().empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "only grammars trained under a registered scheme can be saved");
  }
  const auto scheme = EncodingScheme::from_id(grammar.scheme_id());
  const auto& cfg = grammar.config();
  const auto contexts = grammar.contexts();
  std::ostringstream os;
  os << kModelHeader << "\n"
     << "scheme " << scheme.id() << "\n"
     << "config " << cfg.max_depth << ' ' << cfg.min_count << ' '
     << format_real(cfg.smoothing) << "\n"
     << "nodes " << contexts.size() << "\n";
  for (const auto& entry : contexts) {
    if (entry.context.empty()) {
      os << '.';
    } else {
      for (std::size_t i = 0; i < entry.context.size(); ++i) {
        if (i) os << ' ';
        os << symbol_name(scheme.symbol_at(entry.context[i]));
      }
    }
    for (std::uint64_t c : entry.counts) os << ' ' << c;
    os << "\n";
  }
  os << "end\n";
  return os.str();
}

PatternGrammar load_model(std::string_view text,
                          std::optional<std::string_view> expected_scheme) {
  const auto lines = content_lines(text);
  check_header(lines, kModelHeader, ErrorKind::kCorruptModel);
  auto corrupt = [](const Line& line, const std::string& msg) {
    return Error(ErrorKind::kCorruptModel, msg, SourcePosition{line.number, 1});
  };
  auto require_line = [&](std::size_t i) -> const Line& {
    if (i >= lines.size()) {
      throw Error(ErrorKind::kCorruptModel, "model document is truncated");
    }
    return lines[i];
  };

  const Line& scheme_line = require_line(1);
  const auto scheme_tokens = split_blanks(scheme_line.text);
  if (scheme_tokens.size() != 2 || scheme_tokens[0] != "scheme") {
    throw corrupt(scheme_line, "expected 'scheme <id>'");
  }
  const auto scheme = EncodingScheme::from_id(scheme_tokens[1]);
  if (expected_scheme && *expected_scheme != scheme.id()) {
    throw Error(ErrorKind::kSchemeMismatch,
                "model was trained under '" + scheme.id() + "', expected '" +
                    std::string(*expected_scheme) + "'",
                SourcePosition{scheme_line.number, 1});
  }

  const Line& config_line = require_line(2);
  const auto cfg_tokens = split_blanks(config_line.text);
  TrainConfig config;
  if (cfg_tokens.size() != 4 || cfg_tokens[0] != "config" ||
      !parse_int(cfg_tokens[1], config.max_depth) ||
      !parse_int(cfg_tokens[2], config.min_count) ||
      !parse_real(cfg_tokens[3], config.smoothing)) {
    throw corrupt(config_line,
                  "expected 'config <max_depth> <min_count> <smoothing>'");
  }
  try {
    config.validate();
  } catch (const Error& e) {
    throw corrupt(config_line, e.message());
  }

  const Line& nodes_line = require_line(3);
  const auto node_tokens = split_blanks(nodes_line.text);
  std::uint64_t node_count = 0;
  if (node_tokens.size() != 2 || node_tokens[0] != "nodes" ||
      !parse_u64(node_tokens[1], node_count) || node_count == 0) {
    throw corrupt(nodes_line, "expected 'nodes <count>'");
  }

  const std::size_t n = scheme.size();
  std::vector<ContextCounts> contexts;
  contexts.reserve(node_count);
  for (std::uint64_t k = 0; k < node_count; ++k) {
    const Line& line = require_line(4 + k);
    const auto tokens = split_blanks(line.text);
    if (tokens.size() < n + 1) throw corrupt(line, "too few fields");
    ContextCounts entry;
    const std::size_t context_tokens = tokens.size() - n;
    if (!(context_tokens == 1 && tokens[0] == ".")) {
      for (std::size_t i = 0; i < context_tokens; ++i) {
        auto symbol = parse_symbol_name(tokens[i]);
        auto id = symbol ? scheme.find(*symbol) : std::nullopt;
        if (!id) {
          throw corrupt(line, "unknown context symbol '" +
                                  std::string(tokens[i]) + "'");
        }
        entry.context.push_back(*id);
      }
    }
    entry.counts.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
      if (!parse_u64(tokens[context_tokens + s], entry.counts[s])) {
        throw corrupt(line, "bad count '" +
                                std::string(tokens[context_tokens + s]) + "'");
      }
    }
    contexts.push_back(std::move(entry));
  }
  const Line& end_line = require_line(4 + node_count);
  if (trim(end_line.text) != "end") throw corrupt(end_line, "expected 'end'");
  if (lines.size() > 5 + node_count) {
    throw corrupt(lines[5 + node_count], "content after 'end'");
  }
  return PatternGrammar::from_contexts(std::move(contexts), n, config,
                                       scheme.id());
}

std::string serialize_segmentation(
    const std::vector<SegmentationResult>& results) {
  std::string out;
  for (const auto& r : results) {
    for (std::size_t w = 0; w < r.spans.size(); ++w) {
      if (w) out += ' ';
      out += std::to_string(r.spans[w].begin);
      out += '-';
      out += std::to_string(r.spans[w].end);
      if (r.spans[w].prominent) out += '*';
    }
    out += '\n';
  }
  return out;
}

std::vector<SegmentationResult> parse_segmentation(std::string_view text) {
  std::vector<SegmentationResult> out;
  for (const auto& line : content_lines(text)) {
    SegmentationResult r;
    r.log_prob = std::numeric_limits<double>::quiet_NaN();
    std::size_t expected_begin = 0;
    for (auto token : split_blanks(line.text)) {
      const std::size_t column =
          static_cast<std::size_t>(token.data() - line.text.data()) + 1;
      auto bad = [&](const std::string& msg) {
        return corpus_error(ErrorKind::kMalformedNesting,
                            msg + " in span '" + std::string(token) + "'",
                            line.number, column);
      };
      WordSpan span;
      if (!token.empty() && token.back() == '*') {
        span.prominent = true;
        token.remove_suffix(1);
      }
      const auto dash = token.find('-');
      std::uint64_t begin = 0;
      std::uint64_t end = 0;
      if (dash == std::string_view::npos ||
          !parse_u64(token.substr(0, dash), begin) ||
          !parse_u64(token.substr(dash + 1), end)) {
        throw bad("expected start-end");
      }
      if (begin != expected_begin) throw bad("spans must be contiguous");
      if (end <= begin) throw bad("empty span");
      span.begin = begin;
      span.end = end;
      expected_begin = end;
      r.spans.push_back(span);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<Tone>> parse_tone_streams(std::string_view text) {
  const auto lines = content_lines(text);
  std::vector<std::vector<Tone>> out;
  if (!lines.empty() &&
      trim(lines.front().text).substr(0, 14) == "tonoseg-corpus") {
    for (const auto& turn : parse_corpus(text).turns) out.push_back(turn.tones());
    return out;
  }
  for (const auto& line : lines) {
    std::vector<Tone> tones;
    for (auto token : split_blanks(line.text)) {
      const std::size_t column =
          static_cast<std::size_t>(token.data() - line.text.data()) + 1;
      auto tone = token.size() == 1 ? parse_tone(token[0]) : std::nullopt;
      if (!tone) {
        throw corpus_error(ErrorKind::kUnknownTone,
                           "unknown tone '" + std::string(token) + "'",
                           line.number, column);
      }
      tones.push_back(*tone);
    }
    out.push_back(std::move(tones));
  }
  return out;
}

std::string serialize_tone_streams(const std::vector<std::vector<Tone>>& turns) {
  std::string out;
  for (const auto& tones : turns) {
    for (std::size_t i = 0; i < tones.size(); ++i) {
      if (i) out += ' ';
      out += tone_letter(tones[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace tonoseg
