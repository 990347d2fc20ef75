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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "test_util.h"

namespace dprecourse {
namespace {

namespace fs = std::filesystem;
using ::dprecourse::test_util::ReadFile;
using ::dprecourse::test_util::ScratchDir;
using ::dprecourse::test_util::WriteText;
using ::testing::HasSubstr;

struct Invocation {
  int exit_code;
  std::string out;
  std::string err;
};

Invocation RunCli(const fs::path& dir, const std::string& args) {
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = std::string(DPRECOURSE_CLI_PATH) + " " + args +
                          " >" + out.string() + " 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, ReadFile(out), ReadFile(err)};
}

fs::path WriteConfig(const fs::path& dir, const std::string& extra) {
  const fs::path cfg = dir / "run.cfg";
  WriteText(cfg, "dataset = synthetic\nd = 20\nn_owner = 100\n"
                 "n_adversary = 200\nn_ensemble = 2\nn_shadow = 2\nseed = 5\n"
                 "output_dir = " + (dir / "out").string() + "\n" + extra);
  return cfg;
}

TEST(CliTest, RunSucceedsAndPrintsSummary) {
  const fs::path dir = ScratchDir("cli_ok");
  const Invocation r =
      RunCli(dir, "run --config " + WriteConfig(dir, "").string());
  EXPECT_EQ(r.exit_code, 0) << r.err;
  const nlohmann::json summary = nlohmann::json::parse(r.out);
  EXPECT_TRUE(summary.contains("attacks"));
  EXPECT_EQ(ReadFile(dir / "out" / "summary.json"), r.out);
}

TEST(CliTest, MissingEpsilonIsConfigError) {
  const fs::path dir = ScratchDir("cli_no_eps");
  const Invocation r =
      RunCli(dir, "run --config " + WriteConfig(dir, "mechanism = lr\n").string());
  EXPECT_EQ(r.exit_code, 2);
  const nlohmann::json err = nlohmann::json::parse(r.err);
  EXPECT_EQ(err["error"]["exit_code"], 2);
  EXPECT_THAT(err["error"]["message"].get<std::string>(), HasSubstr("epsilon"));
  EXPECT_FALSE(fs::exists(dir / "out"));
}

TEST(CliTest, UnreadableConfigAndBadFlagsAreConfigErrors) {
  const fs::path dir = ScratchDir("cli_flags");
  EXPECT_EQ(RunCli(dir, "run --config " + (dir / "nope.cfg").string()).exit_code,
            2);
  EXPECT_EQ(RunCli(dir, "run").exit_code, 2);
  EXPECT_EQ(RunCli(dir, "explode").exit_code, 2);
  EXPECT_EQ(RunCli(dir, "").exit_code, 2);
  const Invocation version = RunCli(dir, "--version");
  EXPECT_EQ(version.exit_code, 0);
  EXPECT_THAT(version.out, HasSubstr("0.1.0"));
}

TEST(CliTest, PipelineFailureExitsThree) {
  const fs::path dir = ScratchDir("cli_pipeline");
  const Invocation r = RunCli(
      dir, "run --config " + WriteConfig(dir, "n_test = 10\n").string());
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"]["exit_code"], 3);
}

TEST(CliTest, SweepWritesAggregateAndValidatesList) {
  const fs::path dir = ScratchDir("cli_sweep");
  const fs::path cfg = WriteConfig(dir, "mechanism = lr\nepsilon = 1\n");
  const Invocation ok =
      RunCli(dir, "sweep --config " + cfg.string() + " --epsilons 0.5,1.0");
  EXPECT_EQ(ok.exit_code, 0) << ok.err;
  const std::string csv = ReadFile(dir / "out" / "sweep.csv");
  EXPECT_THAT(csv, HasSubstr("\n0.5,cfd,"));
  EXPECT_THAT(csv, HasSubstr("\n1,lrt_local,"));
  EXPECT_TRUE(fs::exists(dir / "out" / "eps_0.5" / "summary.json"));
  EXPECT_TRUE(fs::exists(dir / "out" / "eps_1" / "summary.json"));

  EXPECT_EQ(RunCli(dir, "sweep --config " + cfg.string() + " --epsilons ''")
                .exit_code,
            2);
  EXPECT_EQ(RunCli(dir, "sweep --config " + cfg.string() + " --epsilons 1,x")
                .exit_code,
            2);
  const fs::path base_dir = ScratchDir("cli_sweep_base");
  EXPECT_EQ(RunCli(base_dir, "sweep --config " +
                                 WriteConfig(base_dir, "").string() +
                                 " --epsilons 1")
                .exit_code,
            2);
}

}  // namespace
}  // namespace dprecourse
