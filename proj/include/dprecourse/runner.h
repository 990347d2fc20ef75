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

#ifndef DPRECOURSE_RUNNER_H_
#define DPRECOURSE_RUNNER_H_

#include <map>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dprecourse/config.h"
#include "dprecourse/eval.h"
#include "dprecourse/experiment.h"

namespace dprecourse {

// Process exit codes for the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitPipelineError = 3;

std::string VersionString();

struct RunOutcome {
  ExperimentResult result;
  std::map<AttackKind, EvalReport> reports;
};

// Builds the dataset, preprocesses, splits, runs all attacks and evaluates
// them. Performs no file IO beyond reading a CSV dataset.
absl::StatusOr<RunOutcome> ExecuteConfig(const ExperimentConfig& config);

// Writes roc_<attack>.csv, roc_<attack>_loggrid.csv, hist_<attack>.csv,
// summary.json and manifest.json under config.output_dir. Everything except
// the manifest timestamps is a deterministic function of the config.
absl::Status WriteArtifacts(const ExperimentConfig& config,
                            const RunOutcome& outcome,
                            const std::string& started_at);

// ExecuteConfig followed by WriteArtifacts.
absl::StatusOr<RunOutcome> RunExperiment(const ExperimentConfig& config);

struct SweepRow {
  double epsilon = 0.0;
  std::string status;  // "ok" or the error message
  std::map<AttackKind, EvalReport> reports;
  double wasserstein_to_baseline = 0.0;
};

// Runs a baseline (output_dir/baseline) and one run per epsilon
// (output_dir/eps_<epsilon>), then writes output_dir/sweep.csv with columns
// epsilon,attack,auc,ba,wasserstein_to_baseline,status. A failing epsilon is
// recorded and the sweep continues. The template's mechanism must be dpm or lr.
absl::StatusOr<std::vector<SweepRow>> RunSweep(
    const ExperimentConfig& config_template,
    const std::vector<double>& epsilons);

// Deterministic CSV/JSON text for the artifacts.
std::string RocCsv(const RocCurve& curve);
std::string LogGridCsv(const RocCurve& curve);
std::string HistogramCsv(const Histogram& histogram);
std::string SummaryJson(const ExperimentConfig& config,
                        const RunOutcome& outcome);

// Machine-readable one-line error record.
std::string ErrorRecordJson(const absl::Status& status, int exit_code);

// %.17g rendering; infinities as "inf" / "-inf".
std::string FormatDouble(double v);

}  // namespace dprecourse

#endif  // DPRECOURSE_RUNNER_H_
