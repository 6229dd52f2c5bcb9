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

#include "tonoseg/error.h"

#include <sstream>
#include <utility>

namespace tonoseg {
namespace {

std::string format_what(ErrorKind kind, const std::string& message,
                        const std::optional<SourcePosition>& position,
                        const std::optional<std::size_t>& sequence,
                        const std::optional<std::size_t>& index) {
  std::ostringstream os;
  os << error_kind_name(kind);
  if (position) {
    os << " at line " << position->line << ", column " << position->column;
  }
  if (sequence) os << " in sequence " << *sequence;
  if (index) os << " at index " << *index;
  os << ": " << message;
  return os.str();
}

}  // namespace

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnknownTone: return "UnknownTone";
    case ErrorKind::kEmptyWord: return "EmptyWord";
    case ErrorKind::kEmptyTurn: return "EmptyTurn";
    case ErrorKind::kMalformedNesting: return "MalformedNesting";
    case ErrorKind::kBadVersion: return "BadVersion";
    case ErrorKind::kCorruptModel: return "CorruptModel";
    case ErrorKind::kSchemeMismatch: return "SchemeMismatch";
    case ErrorKind::kSymbolOutsideAlphabet: return "SymbolOutsideAlphabet";
    case ErrorKind::kNotInvertible: return "NotInvertible";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kShapeMismatch: return "ShapeMismatch";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kUnreachableContext: return "UnreachableContext";
    case ErrorKind::kInfiniteLogProb: return "InfiniteLogProb";
    case ErrorKind::kInternal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, std::string message,
             std::optional<SourcePosition> position,
             std::optional<std::size_t> sequence,
             std::optional<std::size_t> index)
    : std::runtime_error(
          format_what(kind, message, position, sequence, index)),
      kind_(kind),
      message_(std::move(message)),
      position_(position),
      sequence_(sequence),
      index_(index) {}

}  // namespace tonoseg
