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

// Experiment runner for private recourse against distance-based membership
// inference.
//
//   dprecourse_cli run   --config exp.cfg
//   dprecourse_cli sweep --config exp.cfg --epsilons 0.5,1.0
//
// Exit codes: 0 success, 2 config error, 3 pipeline error. Failures print a
// one-line JSON error record on stderr.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dprecourse/config.h"
#include "dprecourse/runner.h"

namespace {

int Fail(const absl::Status& status, int code) {
  std::cerr << dprecourse::ErrorRecordJson(status, code) << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private recourse vs. membership inference"};
  app.require_subcommand(1);
  app.set_version_flag("--version", dprecourse::VersionString());

  std::string run_config;
  CLI::App* run = app.add_subcommand("run", "Run one experiment");
  run->add_option("--config", run_config, "Config file")->required();

  std::string sweep_config;
  std::string epsilons;
  CLI::App* sweep = app.add_subcommand("sweep", "Run one experiment per epsilon");
  sweep->add_option("--config", sweep_config, "Config template")->required();
  sweep->add_option("--epsilons", epsilons, "Comma-separated epsilons")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dprecourse::kExitConfigError;
  }

  if (*run) {
    absl::StatusOr<dprecourse::ExperimentConfig> config =
        dprecourse::LoadConfigFile(run_config);
    if (!config.ok()) return Fail(config.status(), dprecourse::kExitConfigError);
    absl::StatusOr<dprecourse::RunOutcome> outcome =
        dprecourse::RunExperiment(*config);
    if (!outcome.ok()) {
      return Fail(outcome.status(), dprecourse::kExitPipelineError);
    }
    std::cout << dprecourse::SummaryJson(*config, *outcome);
    return dprecourse::kExitOk;
  }

  absl::StatusOr<dprecourse::ExperimentConfig> config =
      dprecourse::LoadConfigFile(sweep_config);
  if (!config.ok()) return Fail(config.status(), dprecourse::kExitConfigError);
  absl::StatusOr<std::vector<double>> eps_list =
      dprecourse::ParseEpsilonList(epsilons);
  if (!eps_list.ok()) {
    return Fail(eps_list.status(), dprecourse::kExitConfigError);
  }
  if (config->mechanism == dprecourse::Mechanism::kNone) {
    return Fail(absl::InvalidArgumentError(
                    "sweep template mechanism must be dpm or lr"),
                dprecourse::kExitConfigError);
  }
  absl::StatusOr<std::vector<dprecourse::SweepRow>> rows =
      dprecourse::RunSweep(*config, *eps_list);
  if (!rows.ok()) return Fail(rows.status(), dprecourse::kExitPipelineError);
  for (const dprecourse::SweepRow& row : *rows) {
    std::cout << "epsilon " << dprecourse::FormatDouble(row.epsilon) << ": "
              << row.status << "\n";
  }
  return dprecourse::kExitOk;
}
