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

// Boundary-slot scoring of predicted segmentations. A slot is an inter-tone
// position inside a turn (n-1 slots for n tones); turn edges are not slots.

#ifndef TONOSEG_EVALUATION_H_
#define TONOSEG_EVALUATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "tonoseg/prosody.h"
#include "tonoseg/segmenter.h"

namespace tonoseg {

struct ConfusionMatrix {
  std::uint64_t tp = 0;  // boundary in both
  std::uint64_t fp = 0;  // predicted only
  std::uint64_t fn = 0;  // reference only
  std::uint64_t tn = 0;  // neither

  std::uint64_t total() const { return tp + fp + fn + tn; }
  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct EvalReport {
  ConfusionMatrix matrix;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  // Set when the corresponding denominator was zero and the value forced to 0.
  bool precision_degenerate = false;
  bool recall_degenerate = false;
  bool f_measure_degenerate = false;
  // Words whose span matches the reference exactly and whose prominence flag
  // also agrees; auxiliary, not part of the boundary scores.
  std::uint64_t prominence_agreements = 0;
  std::uint64_t matched_words = 0;
};

// Throws Error(kShapeMismatch) naming the turn when turn or tone counts
// differ.
ConfusionMatrix confusion(const Corpus& reference,
                          const std::vector<SegmentationResult>& predicted);
ConfusionMatrix confusion(const std::vector<bool>& reference_boundaries,
                          const std::vector<bool>& predicted_boundaries);

EvalReport metrics(const ConfusionMatrix& matrix);
// metrics() plus the prominence agreement counts.
EvalReport evaluate(const Corpus& reference,
                    const std::vector<SegmentationResult>& predicted);

enum class BaselineKind { kNone, kAll, kRandom };

struct BaselineStrategy {
  BaselineKind kind = BaselineKind::kNone;
  double p = 0.5;  // boundary probability per slot, kRandom only
  std::uint64_t seed = 0;
};

// `none`: one word per turn. `all`: one word per tone. `random`: each slot is
// a boundary with probability p, drawn from mt19937_64(seed) in turn/slot
// order. Baseline results carry a NaN log_prob.
std::vector<SegmentationResult> baseline_segment(
    const std::vector<std::vector<Tone>>& turns,
    const BaselineStrategy& strategy);

std::string format_report_table(const EvalReport& report);
// One `key=value` per line; reals with 6 decimals.
std::string format_report_kv(const EvalReport& report);

}  // namespace tonoseg

#endif  // TONOSEG_EVALUATION_H_
