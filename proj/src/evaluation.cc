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

#include "tonoseg/evaluation.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "tonoseg/error.h"
#include "tonoseg/random.h"

namespace tonoseg {

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  tp += other.tp;
  fp += other.fp;
  fn += other.fn;
  tn += other.tn;
  return *this;
}

ConfusionMatrix confusion(const std::vector<bool>& reference_boundaries,
                          const std::vector<bool>& predicted_boundaries) {
  if (reference_boundaries.size() != predicted_boundaries.size()) {
    throw Error(ErrorKind::kShapeMismatch,
                "reference has " + std::to_string(reference_boundaries.size()) +
                    " slots, prediction has " +
                    std::to_string(predicted_boundaries.size()));
  }
  ConfusionMatrix m;
  for (std::size_t i = 0; i < reference_boundaries.size(); ++i) {
    const bool ref = reference_boundaries[i];
    const bool pred = predicted_boundaries[i];
    if (ref && pred) {
      ++m.tp;
    } else if (pred) {
      ++m.fp;
    } else if (ref) {
      ++m.fn;
    } else {
      ++m.tn;
    }
  }
  return m;
}

ConfusionMatrix confusion(const Corpus& reference,
                          const std::vector<SegmentationResult>& predicted) {
  if (reference.turns.size() != predicted.size()) {
    throw Error(ErrorKind::kShapeMismatch,
                "reference has " + std::to_string(reference.turns.size()) +
                    " turns, prediction has " +
                    std::to_string(predicted.size()));
  }
  ConfusionMatrix total;
  for (std::size_t t = 0; t < predicted.size(); ++t) {
    const std::size_t ref_tones = reference.turns[t].tone_count();
    if (ref_tones != predicted[t].tone_count()) {
      throw Error(ErrorKind::kShapeMismatch,
                  "reference turn has " + std::to_string(ref_tones) +
                      " tones, prediction covers " +
                      std::to_string(predicted[t].tone_count()),
                  std::nullopt, t);
    }
    total += confusion(segmentation_from_turn(reference.turns[t]).boundaries(),
                       predicted[t].boundaries());
  }
  return total;
}

EvalReport metrics(const ConfusionMatrix& matrix) {
  EvalReport r;
  r.matrix = matrix;
  const auto inserted = matrix.tp + matrix.fp;
  const auto expected = matrix.tp + matrix.fn;
  if (inserted > 0) {
    r.precision = static_cast<double>(matrix.tp) / static_cast<double>(inserted);
  } else {
    r.precision_degenerate = true;
  }
  if (expected > 0) {
    r.recall = static_cast<double>(matrix.tp) / static_cast<double>(expected);
  } else {
    r.recall_degenerate = true;
  }
  if (r.precision + r.recall > 0.0) {
    r.f_measure = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  } else {
    r.f_measure_degenerate = true;
  }
  return r;
}

EvalReport evaluate(const Corpus& reference,
                    const std::vector<SegmentationResult>& predicted) {
  EvalReport r = metrics(confusion(reference, predicted));
  for (std::size_t t = 0; t < predicted.size(); ++t) {
    const auto ref = segmentation_from_turn(reference.turns[t]);
    for (const auto& ws : predicted[t].spans) {
      for (const auto& rs : ref.spans) {
        if (rs.begin != ws.begin || rs.end != ws.end) continue;
        ++r.matched_words;
        if (rs.prominent == ws.prominent) ++r.prominence_agreements;
      }
    }
  }
  return r;
}

std::vector<SegmentationResult> baseline_segment(
    const std::vector<std::vector<Tone>>& turns,
    const BaselineStrategy& strategy) {
  if (strategy.kind == BaselineKind::kRandom &&
      !(strategy.p >= 0.0 && strategy.p <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "p must lie in [0, 1]");
  }
  Rng rng(strategy.seed);
  std::vector<SegmentationResult> out;
  out.reserve(turns.size());
  for (std::size_t t = 0; t < turns.size(); ++t) {
    const std::size_t n = turns[t].size();
    if (n == 0) {
      throw Error(ErrorKind::kInvalidArgument, "empty tone sequence",
                  std::nullopt, t);
    }
    SegmentationResult r;
    r.log_prob = std::numeric_limits<double>::quiet_NaN();
    std::size_t begin = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      bool boundary = false;
      switch (strategy.kind) {
        case BaselineKind::kNone: boundary = false; break;
        case BaselineKind::kAll: boundary = true; break;
        case BaselineKind::kRandom:
          boundary = uniform01(rng) < strategy.p;
          break;
      }
      if (boundary) {
        r.spans.push_back({begin, i + 1, false});
        begin = i + 1;
      }
    }
    r.spans.push_back({begin, n, false});
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_report_table(const EvalReport& r) {
  const auto& m = r.matrix;
  char buf[512];
  std::ostringstream os;
  os << "Confusion matrix (boundary slots)\n";
  std::snprintf(buf, sizeof buf, "%-16s %14s %10s\n", "reference \\ pred",
                "no boundary", "boundary");
  os << buf;
  std::snprintf(buf, sizeof buf, "%-16s %14llu %10llu\n", "no boundary",
                static_cast<unsigned long long>(m.tn),
                static_cast<unsigned long long>(m.fp));
  os << buf;
  std::snprintf(buf, sizeof buf, "%-16s %14llu %10llu\n", "boundary",
                static_cast<unsigned long long>(m.fn),
                static_cast<unsigned long long>(m.tp));
  os << buf << "\n";
  auto line = [&](const char* name, double v, bool degenerate) {
    std::snprintf(buf, sizeof buf, "%-10s %.3f%s\n", name, v,
                  degenerate ? "  (degenerate)" : "");
    os << buf;
  };
  line("precision", r.precision, r.precision_degenerate);
  line("recall", r.recall, r.recall_degenerate);
  line("f-measure", r.f_measure, r.f_measure_degenerate);
  return os.str();
}

std::string format_report_kv(const EvalReport& r) {
  char buf[128];
  std::ostringstream os;
  os << "tp=" << r.matrix.tp << "\n"
     << "fp=" << r.matrix.fp << "\n"
     << "fn=" << r.matrix.fn << "\n"
     << "tn=" << r.matrix.tn << "\n"
     << "slots=" << r.matrix.total() << "\n";
  auto real = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%s=%.6f\n", key, v);
    os << buf;
  };
  real("precision", r.precision);
  real("recall", r.recall);
  real("f_measure", r.f_measure);
  os << "precision_degenerate=" << r.precision_degenerate << "\n"
     << "recall_degenerate=" << r.recall_degenerate << "\n"
     << "f_measure_degenerate=" << r.f_measure_degenerate << "\n"
     << "matched_words=" << r.matched_words << "\n"
     << "prominence_agreements=" << r.prominence_agreements << "\n";
  return os.str();
}

}  // namespace tonoseg
