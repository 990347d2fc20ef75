// Copyright 2026 The DP Recourse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dprecourse/runner.h"

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "dprecourse/config.h"
#include "test_util.h"

namespace dprecourse {
namespace {

namespace fs = std::filesystem;
using ::dprecourse::test_util::ReadFile;
using ::dprecourse::test_util::ScratchDir;
using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::StartsWith;

constexpr char kSmall[] = R"(# small synthetic run
dataset = synthetic
d = 20
n_owner = 100
n_adversary = 200
n_ensemble = 2
n_shadow = 2
seed = 3
)";

ExperimentConfig Small(const std::string& extra, const fs::path& out) {
  absl::StatusOr<ExperimentConfig> c = ParseConfig(
      std::string(kSmall) + extra + "\noutput_dir = " + out.string() + "\n");
  EXPECT_TRUE(c.ok()) << c.status();
  return *c;
}

TEST(ParseConfigTest, DefaultsAndOverrides) {
  absl::StatusOr<ExperimentConfig> c = ParseConfig("");
  ASSERT_OK(c);
  EXPECT_EQ(c->mechanism, Mechanism::kNone);
  EXPECT_EQ(c->n_shadow, 5);
  EXPECT_EQ(c->n_ensemble, 20);
  EXPECT_EQ(c->attacks.size(), 3u);
  EXPECT_EQ(c->effective_n_test(), c->n_owner);

  c = ParseConfig(
      "mechanism = dpm  # trailing comment\n"
      "epsilon = 0.5\n"
      "attacks = cfd, lrt_local\n"
      "step_size = 0.25\n"
      "n_test = 7\n"
      "lrt_tail = lower\n"
      "shadow_mirror_dp = false\n");
  ASSERT_OK(c);
  EXPECT_EQ(c->mechanism, Mechanism::kPrivateModel);
  EXPECT_EQ(c->epsilon, 0.5);
  EXPECT_THAT(c->attacks, ElementsAre(AttackKind::kCfd, AttackKind::kLrtLocal));
  EXPECT_EQ(c->train.step_size, 0.25);
  EXPECT_EQ(c->effective_n_test(), 7);
  EXPECT_EQ(c->lrt_tail, LrtTail::kLower);
  EXPECT_FALSE(c->shadow_mirror_dp);
  EXPECT_EQ(c->budget().epsilon, 0.5);
  EXPECT_EQ(c->budget().mechanism, Mechanism::kPrivateModel);
}

TEST(ParseConfigTest, RejectsMalformedInput) {
  const std::vector<std::string> bad = {
      "mechanism = lr\n",
      "mechanism = baseline\nepsilon = 1\n",
      "mechanism = lr\nepsilon = 0\n",
      "n_owner = -5\n",
      "n_shadow = 0\n",
      "d = ten\n",
      "seed = 1\nseed = 2\n",
      "colour = blue\n",
      "just some words\n",
      "mechanism = gaussian\n",
      "attacks = cfd,loss\n",
      "lambda = nan\n",
      "dataset = csv\n",
  };
  for (const std::string& text : bad) {
    EXPECT_FALSE(ParseConfig(text).ok()) << text;
  }
}

TEST(ParseConfigTest, CanonicalTextRoundTrips) {
  absl::StatusOr<ExperimentConfig> c = ParseConfig(
      "mechanism = lr\nepsilon = 0.1\nlambda = 3e-5\nseed = 18446744073709551615\n");
  ASSERT_OK(c);
  const std::string text = ConfigToText(*c);
  absl::StatusOr<ExperimentConfig> again = ParseConfig(text);
  ASSERT_OK(again);
  EXPECT_EQ(ConfigToText(*again), text);
  EXPECT_EQ(again->epsilon, 0.1);
  EXPECT_EQ(again->train.lambda, 3e-5);
  EXPECT_EQ(again->seed, 18446744073709551615ull);
}

TEST(ParseConfigTest, MissingFile) {
  EXPECT_FALSE(LoadConfigFile("/nonexistent/dir/run.cfg").ok());
}

TEST(EpsilonListTest, Parsing) {
  absl::StatusOr<std::vector<double>> eps = ParseEpsilonList("0.5,1.0");
  ASSERT_OK(eps);
  EXPECT_THAT(*eps, ElementsAre(0.5, 1.0));
  EXPECT_THAT(*ParseEpsilonList(" 5 , 10,20 "), ElementsAre(5, 10, 20));
  EXPECT_FALSE(ParseEpsilonList("").ok());
  EXPECT_FALSE(ParseEpsilonList("1,,2").ok());
  EXPECT_FALSE(ParseEpsilonList("one").ok());
}

TEST(FormatTest, FullPrecision) {
  EXPECT_EQ(FormatDouble(0.1), "0.10000000000000001");
  EXPECT_EQ(FormatDouble(1.0), "1");
  EXPECT_EQ(FormatDouble(INFINITY), "inf");
  EXPECT_EQ(FormatDouble(-INFINITY), "-inf");
  for (double v : {1.0 / 3.0, 2.5e-300, 123456.789}) {
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
  const nlohmann::json err = nlohmann::json::parse(
      ErrorRecordJson(absl::InvalidArgumentError("boom"), kExitConfigError));
  EXPECT_EQ(err["error"]["message"], "boom");
  EXPECT_EQ(err["error"]["exit_code"], 2);
  EXPECT_EQ(err["error"]["code"], "INVALID_ARGUMENT");
}

TEST(RunExperimentTest, BaselineInterpolatesTrainingData) {
  const fs::path dir = ScratchDir("baseline_d100");
  ExperimentConfig c = Small("", dir);
  c.dataset.d = 100;
  absl::StatusOr<RunOutcome> out = RunExperiment(c);
  ASSERT_OK(out);
  const nlohmann::json summary =
      nlohmann::json::parse(ReadFile(dir / "summary.json"));
  EXPECT_EQ(summary["train_accuracy"], 1.0);
  EXPECT_TRUE(summary["ba_bound"].is_null());
  EXPECT_EQ(summary["per_model_train_size"], 50);
  EXPECT_EQ(summary["version"], VersionString());
  EXPECT_EQ(summary["config"]["d"], "100");
  EXPECT_FALSE(summary["config"].contains("output_dir"));
  for (const char* attack : {"cfd", "lrt_global", "lrt_local"}) {
    const nlohmann::json& a = summary["attacks"][attack];
    EXPECT_GE(a["auc"].get<double>(), 0.0);
    EXPECT_LE(a["auc"].get<double>(), 1.0);
    EXPECT_EQ(a["tpr_at_fpr"].size(), 3u);
    EXPECT_THAT(ReadFile(dir / ("roc_" + std::string(attack) + ".csv")),
                StartsWith("fpr,tpr,threshold\n0,0,inf\n"));
    EXPECT_THAT(ReadFile(dir / ("hist_" + std::string(attack) + ".csv")),
                StartsWith("bin_left,bin_right,train_count,test_count\n"));
    EXPECT_TRUE(fs::exists(dir / ("roc_" + std::string(attack) + "_loggrid.csv")));
  }
  const nlohmann::json manifest =
      nlohmann::json::parse(ReadFile(dir / "manifest.json"));
  EXPECT_EQ(manifest["seed"], 3);
  EXPECT_TRUE(manifest["substreams"].contains("experiment"));
}

TEST(RunExperimentTest, LaplaceRecourseCarriesBound) {
  const fs::path dir = ScratchDir("lr_bound");
  ASSERT_OK(RunExperiment(Small("mechanism = lr\nepsilon = 0.5\n", dir)));
  const nlohmann::json summary =
      nlohmann::json::parse(ReadFile(dir / "summary.json"));
  EXPECT_NEAR(summary["ba_bound"].get<double>(), 0.697, 5e-4);
  for (const auto& [name, attack] : summary["attacks"].items()) {
    EXPECT_NEAR(attack["ba_bound"].get<double>(), 0.697, 5e-4) << name;
  }
}

TEST(RunExperimentTest, ArtifactsAreByteIdentical) {
  const fs::path a = ScratchDir("det_a");
  const fs::path b = ScratchDir("det_b");
  ASSERT_OK(RunExperiment(Small("mechanism = dpm\nepsilon = 2\n", a)));
  ASSERT_OK(RunExperiment(Small("mechanism = dpm\nepsilon = 2\n", b)));
  int compared = 0;
  for (const fs::directory_entry& e : fs::directory_iterator(a)) {
    const std::string name = e.path().filename().string();
    if (name == "manifest.json") continue;
    EXPECT_EQ(ReadFile(e.path()), ReadFile(b / name)) << name;
    ++compared;
  }
  EXPECT_EQ(compared, 10);
  nlohmann::json ma = nlohmann::json::parse(ReadFile(a / "manifest.json"));
  nlohmann::json mb = nlohmann::json::parse(ReadFile(b / "manifest.json"));
  for (nlohmann::json* m : {&ma, &mb}) {
    m->erase("started_at");
    m->erase("finished_at");
  }
  EXPECT_EQ(ma, mb);
}

TEST(RunExperimentTest, InvalidConfigWritesNothing) {
  const fs::path dir = ScratchDir("invalid") / "out";
  ExperimentConfig c = Small("", dir);
  c.mechanism = Mechanism::kLaplaceRecourse;
  EXPECT_FALSE(RunExperiment(c).ok());
  EXPECT_FALSE(fs::exists(dir));
}

TEST(RunExperimentTest, PipelineFailureIsReported) {
  const fs::path dir = ScratchDir("too_small");
  ExperimentConfig c = Small("", dir);
  c.n_ensemble = 60;  // 100 owner rows cannot fill 60 partitions of 2
  EXPECT_FALSE(RunExperiment(c).ok());
}

TEST(RunSweepTest, SingletonMatchesSingleRun) {
  const fs::path sweep_dir = ScratchDir("sweep_one");
  const fs::path run_dir = ScratchDir("sweep_ref");
  absl::StatusOr<std::vector<SweepRow>> rows =
      RunSweep(Small("mechanism = lr\nepsilon = 7\n", sweep_dir), {0.5});
  ASSERT_OK(rows);
  ASSERT_EQ(rows->size(), 1u);
  EXPECT_EQ((*rows)[0].status, "ok");
  EXPECT_GT((*rows)[0].wasserstein_to_baseline, 0.0);
  ASSERT_OK(RunExperiment(Small("mechanism = lr\nepsilon = 0.5\n", run_dir)));
  const fs::path eps_dir = sweep_dir / "eps_0.5";
  for (const char* f : {"summary.json", "roc_cfd.csv", "hist_lrt_local.csv"}) {
    EXPECT_EQ(ReadFile(eps_dir / f), ReadFile(run_dir / f)) << f;
  }
  EXPECT_TRUE(fs::exists(sweep_dir / "baseline" / "summary.json"));
  const std::string csv = ReadFile(sweep_dir / "sweep.csv");
  EXPECT_THAT(csv, StartsWith(
                       "epsilon,attack,auc,ba,wasserstein_to_baseline,status\n"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(RunSweepTest, FailuresAreRecordedAndSweepContinues) {
  const fs::path dir = ScratchDir("sweep_fail");
  absl::StatusOr<std::vector<SweepRow>> rows =
      RunSweep(Small("mechanism = lr\nepsilon = 1\n", dir), {-1.0, 1.0});
  ASSERT_OK(rows);
  ASSERT_EQ(rows->size(), 2u);
  EXPECT_NE((*rows)[0].status, "ok");
  EXPECT_EQ((*rows)[1].status, "ok");
  EXPECT_THAT(ReadFile(dir / "sweep.csv"), HasSubstr("\n-1,,,,,\""));
}

TEST(RunSweepTest, RejectsEmptyListAndBaselineTemplate) {
  const fs::path dir = ScratchDir("sweep_bad");
  EXPECT_FALSE(RunSweep(Small("mechanism = lr\nepsilon = 1\n", dir), {}).ok());
  EXPECT_FALSE(RunSweep(Small("", dir), {1.0}).ok());
}

}  // namespace
}  // namespace dprecourse
