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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "test_util.h"
#include "tonoseg/corpus_io.h"

namespace tonoseg {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tonoseg");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(TONOSEG_TEST_TMP) / "cli_scratch" /
           ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
  }
  fs::path dir_;
};

const std::string kData = TONOSEG_TEST_DATA;

TEST_F(CliTest, SynthTrainSegmentEvalPipeline) {
  ASSERT_EQ(run({"synth", "--words", "600", "--seed", "3", "--out", path("train.tsc")}).code,
            kExitOk);
  ASSERT_EQ(run({"synth", "--words", "200", "--seed", "4", "--out", path("test.tsc")}).code,
            kExitOk);
  const auto train = run({"train", "--corpus", path("train.tsc"), "--out", path("m.model"),
                          "--scheme", "hier"});
  ASSERT_EQ(train.code, kExitOk) << train.err;
  const auto model = load_model(testing::read_text(path("m.model")));
  EXPECT_EQ(model.scheme_id(), "hier");
  EXPECT_EQ(model.config().max_depth, 4);
  EXPECT_EQ(model.config().min_count, 2);
  EXPECT_EQ(model.config().smoothing, 0.5);

  const auto seg = run({"segment", "--model", path("m.model"), "--input", path("test.tsc"),
                        "--out", path("pred.seg"), "--threads", "3"});
  ASSERT_EQ(seg.code, kExitOk) << seg.err;
  const auto eval = run({"eval", "--reference", path("test.tsc"), "--predicted",
                         path("pred.seg"), "--format", "kv"});
  ASSERT_EQ(eval.code, kExitOk) << eval.err;
  for (const char* key : {"tp=", "fp=", "fn=", "tn=", "precision=", "recall=", "f_measure="}) {
    EXPECT_NE(eval.out.find(key), std::string::npos) << key;
  }
  const auto table = run({"eval", "--reference", path("test.tsc"), "--predicted",
                          path("pred.seg")});
  EXPECT_EQ(table.code, kExitOk);
  EXPECT_NE(table.out.find("precision"), std::string::npos);

  const auto baseline = run({"segment", "--baseline", "random", "--seed", "9", "--input",
                             path("test.tsc")});
  EXPECT_EQ(baseline.code, kExitOk);
  EXPECT_EQ(baseline.out, run({"segment", "--baseline", "random", "--seed", "9",
                               "--input", path("test.tsc")}).out);
}

TEST_F(CliTest, EntropyOnUniformToyCorpus) {
  ASSERT_EQ(run({"train", "--corpus", kData + "/uniform_toy.tsc", "--out", path("flat.model"),
                 "--scheme", "flat", "--max-depth", "0", "--min-count", "1",
                 "--smoothing", "0"})
                .code,
            kExitOk);
  const auto table = run({"entropy", "--model", path("flat.model"), "--corpus",
                          kData + "/uniform_toy.tsc"});
  ASSERT_EQ(table.code, kExitOk) << table.err;
  EXPECT_NE(table.out.find("1.000"), std::string::npos) << table.out;
  EXPECT_NE(table.out.find("(N = 10)"), std::string::npos) << table.out;
  const auto kv = run({"entropy", "--model", path("flat.model"), "--corpus",
                       kData + "/uniform_toy.tsc", "--format", "kv"});
  EXPECT_NE(kv.out.find("normalized_without_model=1.000000\n"), std::string::npos) << kv.out;
  EXPECT_NE(kv.out.find("normalized_with_model=1.000000\n"), std::string::npos) << kv.out;
  EXPECT_NE(kv.out.find("alphabet_size=10\n"), std::string::npos);
}

TEST_F(CliTest, EncodePrintsSymbols) {
  write("c.tsc", "tonoseg-corpus v1\n[ ( U S ) *( T D ) ]\n");
  const auto r = run({"encode", "--corpus", path("c.tsc"), "--scheme", "hierprom"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "[ ( U S ) *( T D ) ]\n");
  EXPECT_EQ(run({"encode", "--corpus", path("c.tsc"), "--scheme", "flat"}).out,
            "[ U S T D ]\n");
}

TEST_F(CliTest, EvalShapeMismatchIsInputError) {
  write("ref.tsc", "tonoseg-corpus v1\n[ ( H ) ( L ) ]\n[ ( U L ) ]\n");
  write("pred.seg", "0-1 1-2\n");
  const auto r = run({"eval", "--reference", path("ref.tsc"), "--predicted", path("pred.seg")});
  EXPECT_EQ(r.code, kExitInputData);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("ShapeMismatch"), std::string::npos) << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);

  write("bad.seg", "0-1 1-2\n0-1 2-3\n");
  const auto positioned =
      run({"eval", "--reference", path("ref.tsc"), "--predicted", path("bad.seg")});
  EXPECT_EQ(positioned.code, kExitInputData);
  EXPECT_NE(positioned.err.find("line 2"), std::string::npos) << positioned.err;
}

TEST_F(CliTest, DataErrorsCarryPositions) {
  write("bad.tsc", "tonoseg-corpus v1\n[ ( H X ) ]\n");
  const auto r = run({"train", "--corpus", path("bad.tsc"), "--out", path("m.model")});
  EXPECT_EQ(r.code, kExitInputData);
  EXPECT_NE(r.err.find("UnknownTone"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("line 2, column 7"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(path("m.model")));

  write("trunc.model", "tonoseg-model v1\nscheme hier\n");
  const auto t = run({"segment", "--model", path("trunc.model"), "--input",
                      kData + "/uniform_toy.tsc"});
  EXPECT_EQ(t.code, kExitInputData);
  EXPECT_NE(t.err.find("CorruptModel"), std::string::npos) << t.err;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"train", "--out", path("m")}).code, kExitUsage);
  EXPECT_EQ(run({"train", "--corpus", kData + "/uniform_toy.tsc", "--out", path("m"),
                 "--scheme", "bogus"})
                .code,
            kExitUsage);
  EXPECT_EQ(run({"segment", "--input", kData + "/uniform_toy.tsc"}).code, kExitUsage);
  EXPECT_EQ(run({"segment", "--input", kData + "/uniform_toy.tsc", "--baseline", "all",
                 "--model", kData + "/uniform_toy.tsc"})
                .code,
            kExitUsage);
  EXPECT_EQ(run({"synth", "--words", "0"}).code, kExitUsage);
  const auto r = run({"eval", "--reference", path("missing.tsc")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("usage error"), std::string::npos);
}

TEST_F(CliTest, HelpDocumentsDefaults) {
  const auto top = run({"--help"});
  EXPECT_EQ(top.code, kExitOk);
  for (const char* sub : {"train", "entropy", "segment", "eval", "synth", "encode"}) {
    EXPECT_NE(top.out.find(sub), std::string::npos) << sub;
    const auto help = run({sub, "--help"});
    EXPECT_EQ(help.code, kExitOk) << sub;
    EXPECT_NE(help.out.find("--out"), std::string::npos) << sub;
  }
  const auto train = run({"train", "--help"}).out;
  EXPECT_NE(train.find("--max-depth"), std::string::npos);
  EXPECT_NE(train.find("[4]"), std::string::npos) << train;
  EXPECT_NE(train.find("[2]"), std::string::npos) << train;
  EXPECT_NE(train.find("[0.5]"), std::string::npos) << train;
  EXPECT_NE(train.find("[hier]"), std::string::npos) << train;
}

TEST_F(CliTest, OutputsAreDeterministic) {
  auto pipeline = [&](const std::string& tag) {
    run({"synth", "--planted", kData + "/planted_l_final.json", "--words", "300", "--seed",
         "5", "--out", path(tag + ".tsc")});
    run({"train", "--corpus", path(tag + ".tsc"), "--out", path(tag + ".model"),
         "--scheme", "hierprom"});
    run({"segment", "--model", path(tag + ".model"), "--input", path(tag + ".tsc"),
         "--out", path(tag + ".seg"), "--threads", tag == "a" ? "1" : "4"});
    run({"eval", "--reference", path(tag + ".tsc"), "--predicted", path(tag + ".seg"),
         "--format", "kv", "--out", path(tag + ".kv")});
  };
  pipeline("a");
  pipeline("b");
  for (const char* ext : {".tsc", ".model", ".seg", ".kv"}) {
    const auto a = testing::read_text(path(std::string("a") + ext));
    EXPECT_FALSE(a.empty()) << ext;
    EXPECT_EQ(a, testing::read_text(path(std::string("b") + ext))) << ext;
  }
}

}  // namespace
}  // namespace tonoseg
