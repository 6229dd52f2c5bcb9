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

#include "tonoseg/cli.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "tonoseg/corpus_io.h"
#include "tonoseg/error.h"
#include "tonoseg/evaluation.h"
#include "tonoseg/pattern_grammar.h"
#include "tonoseg/segmenter.h"
#include "tonoseg/synth.h"

namespace tonoseg {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to `path`, or to `out` when path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text)) {
    throw Error(ErrorKind::kInvalidArgument, "cannot write '" + path + "'");
  }
}

// Rethrows with the file name prepended so diagnostics say which input failed.
template <typename F>
auto with_file(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.message(), e.position(), e.sequence(),
                e.index());
  }
}

std::string format_real(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

struct TrainArgs {
  std::string corpus, out, scheme = "hier";
  TrainConfig config;
};

struct EntropyArgs {
  std::string model, corpus, out, format = "table";
  std::size_t alphabet_size = 0;
  std::optional<double> smoothing;
};

struct SegmentArgs {
  std::string model, input, out, baseline;
  std::optional<double> smoothing;
  std::size_t beam = 0;
  std::size_t threads = 1;
  double p = 0.5;
  std::uint64_t seed = 0;
};

struct EvalArgs {
  std::string reference, predicted, out, format = "table";
};

struct SynthArgs {
  std::string planted, out;
  std::size_t words = 0;
  std::optional<std::uint64_t> seed;
};

struct EncodeArgs {
  std::string corpus, out, scheme = "hier";
};

void run_train(const TrainArgs& a, std::ostream& out) {
  const auto scheme = EncodingScheme::from_id(a.scheme);
  const Corpus corpus =
      with_file(a.corpus, [&] { return parse_corpus(read_file(a.corpus)); });
  const auto grammar = train(corpus, scheme, a.config);
  emit(a.out, save_model(grammar), out);
}

void run_entropy(const EntropyArgs& a, std::ostream& out) {
  auto grammar =
      with_file(a.model, [&] { return load_model(read_file(a.model)); });
  if (a.smoothing) grammar = grammar.with_smoothing(*a.smoothing);
  const auto scheme = EncodingScheme::from_id(grammar.scheme_id());
  const Corpus corpus =
      with_file(a.corpus, [&] { return parse_corpus(read_file(a.corpus)); });
  const auto sequences = encode_corpus_ids(corpus, scheme);
  const std::size_t n = a.alphabet_size ? a.alphabet_size : scheme.size();
  const double log_n = std::log(static_cast<double>(n));
  const auto without = marginal_entropy(sequences, n);
  const auto with = model_entropy(grammar, sequences);
  const double with_norm = with.entropy / log_n;

  std::ostringstream os;
  if (a.format == "kv") {
    os << "scheme=" << scheme.id() << "\n"
       << "alphabet_size=" << n << "\n"
       << "entropy_without_model=" << format_real(without.entropy, 6) << "\n"
       << "entropy_with_model=" << format_real(with.entropy, 6) << "\n"
       << "normalized_without_model=" << format_real(without.normalized, 6) << "\n"
       << "normalized_with_model=" << format_real(with_norm, 6) << "\n";
  } else {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-16s %-19s %-19s\n", "", "entropy",
                  "normalized entropy");
    os << buf;
    std::snprintf(buf, sizeof buf, "%-16s %-9s %-9s %-9s %-9s\n", "model",
                  "without", "with", "without", "with");
    os << buf;
    std::snprintf(buf, sizeof buf, "%-16s %-9.3f %-9.3f %-9.3f %-9.3f\n",
                  scheme.id().c_str(), without.entropy, with.entropy,
                  without.normalized, with_norm);
    os << buf;
    os << "(N = " << n << ")\n";
  }
  emit(a.out, os.str(), out);
}

void run_segment(const SegmentArgs& a, std::ostream& out) {
  const auto turns =
      with_file(a.input, [&] { return parse_tone_streams(read_file(a.input)); });
  std::vector<SegmentationResult> results;
  if (!a.baseline.empty()) {
    BaselineStrategy strategy;
    strategy.kind = a.baseline == "none"  ? BaselineKind::kNone
                    : a.baseline == "all" ? BaselineKind::kAll
                                          : BaselineKind::kRandom;
    strategy.p = a.p;
    strategy.seed = a.seed;
    results = baseline_segment(turns, strategy);
  } else {
    auto grammar =
        with_file(a.model, [&] { return load_model(read_file(a.model)); });
    if (a.smoothing) grammar = grammar.with_smoothing(*a.smoothing);
    const auto scheme = EncodingScheme::from_id(grammar.scheme_id());
    SegmentOptions options;
    if (a.beam > 0) options.beam_width = a.beam;
    options.threads = a.threads;
    results = segment_corpus(grammar, turns, scheme, options);
  }
  emit(a.out, serialize_segmentation(results), out);
}

void run_eval(const EvalArgs& a, std::ostream& out) {
  const Corpus reference = with_file(
      a.reference, [&] { return parse_corpus(read_file(a.reference)); });
  const auto predicted = with_file(
      a.predicted, [&] { return parse_segmentation(read_file(a.predicted)); });
  const auto report = evaluate(reference, predicted);
  emit(a.out,
       a.format == "kv" ? format_report_kv(report) : format_report_table(report),
       out);
}

void run_synth(const SynthArgs& a, std::ostream& out) {
  const PlantedGrammar planted =
      a.planted.empty() ? default_planted_grammar()
                        : with_file(a.planted, [&] {
                            return parse_planted_grammar(read_file(a.planted));
                          });
  const Corpus corpus =
      sample_corpus(planted, a.words, a.seed.value_or(planted.seed));
  emit(a.out, serialize_corpus(corpus), out);
}

void run_encode(const EncodeArgs& a, std::ostream& out) {
  const auto scheme = EncodingScheme::from_id(a.scheme);
  const Corpus corpus =
      with_file(a.corpus, [&] { return parse_corpus(read_file(a.corpus)); });
  std::string text;
  for (const auto& turn : corpus.turns) {
    const auto symbols = encode_turn(turn, scheme);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (i) text += ' ';
      text += symbol_name(symbols[i]);
    }
    text += '\n';
  }
  emit(a.out, text, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Prosodic-word segmentation with variable-context tone grammars",
               "tonoseg"};
  app.require_subcommand(1);
  const auto schemes = EncodingScheme::registered_ids();
  const auto formats = std::vector<std::string>{"table", "kv"};

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Train a grammar from a corpus");
  train_cmd->add_option("--corpus", train_args.corpus, "Annotated corpus file")
      ->required()
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--out,-o", train_args.out, "Model file to write")->required();
  train_cmd->add_option("--scheme", train_args.scheme, "Symbol encoding")
      ->check(CLI::IsMember(schemes))
      ->capture_default_str();
  train_cmd->add_option("--max-depth", train_args.config.max_depth,
                        "Longest context retained (D)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  train_cmd->add_option("--min-count", train_args.config.min_count,
                        "Occurrences needed to retain a context (K)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--smoothing", train_args.config.smoothing,
                        "Add-lambda smoothing of successor counts")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  EntropyArgs entropy_args;
  auto* entropy_cmd = app.add_subcommand(
      "entropy", "Entropy and normalized entropy with and without the model");
  entropy_cmd->add_option("--model", entropy_args.model, "Model file")
      ->required()
      ->check(CLI::ExistingFile);
  entropy_cmd->add_option("--corpus", entropy_args.corpus, "Corpus to measure")
      ->required()
      ->check(CLI::ExistingFile);
  entropy_cmd->add_option("--alphabet-size", entropy_args.alphabet_size,
                          "N used for normalization (default: scheme alphabet size)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{65535}));
  entropy_cmd->add_option("--smoothing", entropy_args.smoothing,
                          "Override the model's smoothing")
      ->check(CLI::NonNegativeNumber);
  entropy_cmd->add_option("--format", entropy_args.format, "Report format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  entropy_cmd->add_option("--out,-o", entropy_args.out, "Report file (default: stdout)");

  SegmentArgs segment_args;
  auto* segment_cmd = app.add_subcommand(
      "segment", "Predict prosodic-word boundaries in tone streams");
  auto* model_opt = segment_cmd->add_option("--model", segment_args.model, "Model file")
                        ->check(CLI::ExistingFile);
  segment_cmd->add_option("--input", segment_args.input,
                          "Tone-stream or corpus file (word structure ignored)")
      ->required()
      ->check(CLI::ExistingFile);
  segment_cmd->add_option("--out,-o", segment_args.out,
                          "Segmentation file (default: stdout)");
  segment_cmd->add_option("--smoothing", segment_args.smoothing,
                          "Override the model's smoothing (must be > 0)")
      ->check(CLI::PositiveNumber);
  segment_cmd->add_option("--beam", segment_args.beam,
                          "Keep only this many decoder states (0 = exact)")
      ->capture_default_str();
  segment_cmd->add_option("--threads", segment_args.threads,
                          "Worker threads; output does not depend on it")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* baseline_opt =
      segment_cmd
          ->add_option("--baseline", segment_args.baseline,
                       "Chance baseline instead of a model: none, all, random")
          ->check(CLI::IsMember({"none", "all", "random"}));
  segment_cmd->add_option("--p", segment_args.p,
                          "Boundary probability for --baseline random")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  segment_cmd->add_option("--seed", segment_args.seed,
                          "Seed for --baseline random")
      ->capture_default_str();
  model_opt->excludes(baseline_opt);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand(
      "eval", "Confusion matrix and precision/recall/F-measure of boundaries");
  eval_cmd->add_option("--reference", eval_args.reference, "Reference corpus")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--predicted", eval_args.predicted, "Segmentation file")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--format", eval_args.format, "Report format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  eval_cmd->add_option("--out,-o", eval_args.out, "Report file (default: stdout)");

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand(
      "synth", "Sample a corpus from a planted generative grammar");
  synth_cmd->add_option("--planted", synth_args.planted,
                        "Planted grammar JSON (default: built-in L-final grammar)")
      ->check(CLI::ExistingFile);
  synth_cmd->add_option("--words", synth_args.words, "Number of words")
      ->required()
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--seed", synth_args.seed,
                        "Seed (default: the planted grammar's seed)");
  synth_cmd->add_option("--out,-o", synth_args.out, "Corpus file (default: stdout)");

  EncodeArgs encode_args;
  auto* encode_cmd = app.add_subcommand(
      "encode", "Print each turn as its symbol sequence");
  encode_cmd->add_option("--corpus", encode_args.corpus, "Corpus file")
      ->required()
      ->check(CLI::ExistingFile);
  encode_cmd->add_option("--scheme", encode_args.scheme, "Symbol encoding")
      ->check(CLI::IsMember(schemes))
      ->capture_default_str();
  encode_cmd->add_option("--out,-o", encode_args.out, "Output file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
    if (segment_cmd->parsed() && segment_args.baseline.empty() &&
        segment_args.model.empty()) {
      throw CLI::RequiredError("--model or --baseline");
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "tonoseg: usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (train_cmd->parsed()) run_train(train_args, out);
    if (entropy_cmd->parsed()) run_entropy(entropy_args, out);
    if (segment_cmd->parsed()) run_segment(segment_args, out);
    if (eval_cmd->parsed()) run_eval(eval_args, out);
    if (synth_cmd->parsed()) run_synth(synth_args, out);
    if (encode_cmd->parsed()) run_encode(encode_args, out);
  } catch (const Error& e) {
    err << "tonoseg: error: " << e.what() << "\n";
    return e.kind() == ErrorKind::kInternal ? kExitInternal : kExitInputData;
  } catch (const std::exception& e) {
    err << "tonoseg: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace tonoseg
