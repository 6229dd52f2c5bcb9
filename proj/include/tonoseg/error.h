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

#ifndef TONOSEG_ERROR_H_
#define TONOSEG_ERROR_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tonoseg {

enum class ErrorKind {
  kUnknownTone,
  kEmptyWord,
  kEmptyTurn,
  kMalformedNesting,
  kBadVersion,
  kCorruptModel,
  kSchemeMismatch,
  kSymbolOutsideAlphabet,
  kNotInvertible,
  kInvalidArgument,
  kShapeMismatch,
  kTooLarge,
  kUnreachableContext,
  kInfiniteLogProb,
  kInternal,
};

std::string_view error_kind_name(ErrorKind kind);

// 1-based line/column in a text document.
struct SourcePosition {
  std::size_t line = 0;
  std::size_t column = 0;
};

// All library failures are reported through this type. Text parsers fill
// `position`; symbol-stream operations fill `sequence` and/or `index`
// (0-based).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message,
        std::optional<SourcePosition> position = std::nullopt,
        std::optional<std::size_t> sequence = std::nullopt,
        std::optional<std::size_t> index = std::nullopt);

  ErrorKind kind() const { return kind_; }
  const std::string& message() const { return message_; }
  const std::optional<SourcePosition>& position() const { return position_; }
  const std::optional<std::size_t>& sequence() const { return sequence_; }
  const std::optional<std::size_t>& index() const { return index_; }

 private:
  ErrorKind kind_;
  std::string message_;
  std::optional<SourcePosition> position_;
  std::optional<std::size_t> sequence_;
  std::optional<std::size_t> index_;
};

}  // namespace tonoseg

#endif  // TONOSEG_ERROR_H_
