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

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_replace.h"
#include "absl/strings/str_split.h"
#include "dprecourse/dataops.h"
#include "dprecourse/rng.h"
#include "dprecourse/status_macros.h"
#include "json.hpp"

#ifndef DPRECOURSE_VERSION
#define DPRECOURSE_VERSION "0.0.0"
#endif

namespace dprecourse {
namespace {

using Json = nlohmann::ordered_json;

std::string UtcNow() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

absl::Status WriteFile(const std::filesystem::path& path,
                       const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::InternalError(absl::StrCat("cannot write ", path.string()));
  }
  out << body;
  out.close();
  if (!out) {
    return absl::InternalError(absl::StrCat("write failed for ", path.string()));
  }
  return absl::OkStatus();
}

Json ConfigEcho(const ExperimentConfig& config) {
  Json echo = Json::object();
  for (absl::string_view line :
       absl::StrSplit(ConfigToText(config), '\n', absl::SkipEmpty())) {
    const size_t eq = line.find(" = ");
    const std::string key(line.substr(0, eq));
    // Where results land is not part of the experiment.
    if (key == "output_dir") continue;
    echo[key] = std::string(line.substr(eq + 3));
  }
  return echo;
}

struct DataStreams {
  uint64_t data;
  uint64_t split;
  uint64_t experiment;
};

DataStreams StreamsFor(uint64_t seed) {
  return {DeriveSeed(seed, "data"), DeriveSeed(seed, "split"),
          DeriveSeed(seed, "experiment")};
}

}  // namespace

std::string VersionString() { return DPRECOURSE_VERSION; }

std::string FormatDouble(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return absl::StrFormat("%.17g", v);
}

absl::StatusOr<RunOutcome> ExecuteConfig(const ExperimentConfig& config) {
  RETURN_IF_ERROR(config.Validate());
  const DataStreams streams = StreamsFor(config.seed);
  const int n_test = config.effective_n_test();
  FeatureMatrix raw;
  if (config.dataset.kind == DatasetConfig::Kind::kSynthetic) {
    int n = config.n_owner + n_test + config.n_adversary;
    n += n % 2;
    ASSIGN_OR_RETURN(raw, GenerateSynthetic(config.dataset.d, n, streams.data));
  } else {
    ASSIGN_OR_RETURN(raw, LoadCsv(config.dataset.csv_path,
                                  config.dataset.label_column,
                                  config.dataset.positive_label));
  }
  ASSIGN_OR_RETURN(FeatureMatrix data, Preprocess(raw, config.corr_threshold));
  SplitSizes sizes;
  sizes.owner_train = config.n_owner;
  sizes.owner_test = n_test;
  sizes.adversary_pool = config.n_adversary;
  ASSIGN_OR_RETURN(SplitSpec split,
                   Split(data.num_rows(), sizes, streams.split));

  ExperimentSettings settings;
  settings.pipeline.train = config.train;
  settings.pipeline.budget = config.budget();
  settings.pipeline.recourse.target.value = config.target_score;
  settings.pipeline.recourse.clamp = config.clamp;
  settings.pipeline.shadow_mirror_dp = config.shadow_mirror_dp;
  settings.n_ensemble = config.n_ensemble;
  settings.n_shadow = config.n_shadow;
  settings.shadow_train_size = config.shadow_train_size;
  settings.attacks = config.attacks;
  settings.local_variance_floor = config.local_variance_floor;
  settings.lrt_tail = config.lrt_tail;

  RunOutcome outcome;
  ASSIGN_OR_RETURN(outcome.result,
                   RunAttackExperiment(data.Select(split.owner_train),
                                       data.Select(split.owner_test),
                                       data.Select(split.adversary_pool),
                                       settings, streams.experiment));
  for (const auto& [kind, scores] : outcome.result.scores) {
    ASSIGN_OR_RETURN(outcome.reports[kind],
                     Evaluate(scores, config.budget(), config.hist_bins));
  }
  return outcome;
}

std::string RocCsv(const RocCurve& curve) {
  std::string out = "fpr,tpr,threshold\n";
  for (int k = 0; k < curve.size(); ++k) {
    absl::StrAppend(&out, FormatDouble(curve.fpr[k]), ",",
                    FormatDouble(curve.tpr[k]), ",",
                    FormatDouble(curve.thresholds[k]), "\n");
  }
  return out;
}

std::string LogGridCsv(const RocCurve& curve) {
  std::string out = "fpr,tpr\n";
  for (const auto& [fpr, tpr] : LogSpacedRoc(curve)) {
    absl::StrAppend(&out, FormatDouble(fpr), ",", FormatDouble(tpr), "\n");
  }
  return out;
}

std::string HistogramCsv(const Histogram& h) {
  std::string out = "bin_left,bin_right,train_count,test_count\n";
  for (size_t b = 0; b < h.train_counts.size(); ++b) {
    absl::StrAppend(&out, FormatDouble(h.edges[b]), ",",
                    FormatDouble(h.edges[b + 1]), ",", h.train_counts[b], ",",
                    h.test_counts[b], "\n");
  }
  return out;
}

std::string SummaryJson(const ExperimentConfig& config,
                        const RunOutcome& outcome) {
  Json summary;
  summary["version"] = VersionString();
  summary["train_accuracy"] = outcome.result.train_accuracy;
  summary["test_accuracy"] = outcome.result.test_accuracy;
  summary["per_model_train_size"] = outcome.result.per_model_train_size;
  const PrivacyBudget budget = config.budget();
  if (budget.mechanism == Mechanism::kLaplaceRecourse) {
    summary["ba_bound"] = *BalancedAccuracyBound(budget.epsilon);
  } else {
    summary["ba_bound"] = nullptr;
  }
  Json attacks = Json::object();
  for (const auto& [kind, report] : outcome.reports) {
    Json a;
    a["auc"] = report.auc;
    a["ba"] = report.balanced_accuracy;
    Json tpr = Json::object();
    for (const auto& [level, value] : report.tpr_at) {
      tpr[absl::StrFormat("%g", level)] = value;
    }
    a["tpr_at_fpr"] = tpr;
    if (report.ba_bound.has_value()) {
      a["ba_bound"] = *report.ba_bound;
    } else {
      a["ba_bound"] = nullptr;
    }
    a["ba_bound_violated"] = report.ba_bound_violated;
    attacks[std::string(AttackName(kind))] = a;
  }
  summary["attacks"] = attacks;
  summary["config"] = ConfigEcho(config);
  return summary.dump(2) + "\n";
}

absl::Status WriteArtifacts(const ExperimentConfig& config,
                            const RunOutcome& outcome,
                            const std::string& started_at) {
  const std::filesystem::path dir(config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::InternalError(
        absl::StrCat("cannot create ", dir.string(), ": ", ec.message()));
  }
  for (const auto& [kind, report] : outcome.reports) {
    const std::string name(AttackName(kind));
    RETURN_IF_ERROR(WriteFile(dir / ("roc_" + name + ".csv"), RocCsv(report.roc)));
    RETURN_IF_ERROR(WriteFile(dir / ("roc_" + name + "_loggrid.csv"),
                              LogGridCsv(report.roc)));
    RETURN_IF_ERROR(WriteFile(dir / ("hist_" + name + ".csv"),
                              HistogramCsv(report.histogram)));
  }
  RETURN_IF_ERROR(WriteFile(dir / "summary.json", SummaryJson(config, outcome)));

  const DataStreams streams = StreamsFor(config.seed);
  Json manifest;
  manifest["version"] = VersionString();
  manifest["seed"] = config.seed;
  manifest["substreams"] = {{"data", streams.data},
                            {"split", streams.split},
                            {"experiment", streams.experiment}};
  manifest["started_at"] = started_at;
  manifest["finished_at"] = UtcNow();
  return WriteFile(dir / "manifest.json", manifest.dump(2) + "\n");
}

absl::StatusOr<RunOutcome> RunExperiment(const ExperimentConfig& config) {
  const std::string started_at = UtcNow();
  ASSIGN_OR_RETURN(RunOutcome outcome, ExecuteConfig(config));
  RETURN_IF_ERROR(WriteArtifacts(config, outcome, started_at));
  return outcome;
}

absl::StatusOr<std::vector<SweepRow>> RunSweep(
    const ExperimentConfig& config_template,
    const std::vector<double>& epsilons) {
  if (epsilons.empty()) {
    return absl::InvalidArgumentError("sweep needs at least one epsilon");
  }
  if (config_template.mechanism == Mechanism::kNone) {
    return absl::InvalidArgumentError(
        "sweep template mechanism must be dpm or lr");
  }
  const std::filesystem::path root(config_template.output_dir);

  ExperimentConfig baseline = config_template;
  baseline.mechanism = Mechanism::kNone;
  baseline.epsilon.reset();
  baseline.output_dir = (root / "baseline").string();
  ASSIGN_OR_RETURN(RunOutcome base, RunExperiment(baseline));

  std::vector<SweepRow> rows;
  for (double eps : epsilons) {
    ExperimentConfig run = config_template;
    run.epsilon = eps;
    run.output_dir = (root / absl::StrCat("eps_", FormatDouble(eps))).string();
    SweepRow row;
    row.epsilon = eps;
    absl::StatusOr<RunOutcome> outcome = RunExperiment(run);
    if (!outcome.ok()) {
      row.status = std::string(outcome.status().message());
      rows.push_back(std::move(row));
      continue;
    }
    absl::StatusOr<double> w1 = Wasserstein1(outcome->result.target_cfds.scores,
                                             base.result.target_cfds.scores);
    if (!w1.ok()) {
      row.status = std::string(w1.status().message());
      rows.push_back(std::move(row));
      continue;
    }
    row.status = "ok";
    row.reports = outcome->reports;
    row.wasserstein_to_baseline = *w1;
    rows.push_back(std::move(row));
  }

  std::string csv = "epsilon,attack,auc,ba,wasserstein_to_baseline,status\n";
  for (const SweepRow& row : rows) {
    if (row.status != "ok") {
      absl::StrAppend(&csv, FormatDouble(row.epsilon), ",,,,,\"",
                      absl::StrReplaceAll(row.status, {{"\"", "'"}}), "\"\n");
      continue;
    }
    for (const auto& [kind, report] : row.reports) {
      absl::StrAppend(&csv, FormatDouble(row.epsilon), ",",
                      std::string(AttackName(kind)),
                      ",", FormatDouble(report.auc), ",",
                      FormatDouble(report.balanced_accuracy), ",",
                      FormatDouble(row.wasserstein_to_baseline), ",ok\n");
    }
  }
  std::error_code ec;
  std::filesystem::create_directories(root, ec);
  RETURN_IF_ERROR(WriteFile(root / "sweep.csv", csv));
  return rows;
}

std::string ErrorRecordJson(const absl::Status& status, int exit_code) {
  Json record;
  record["error"] = {
      {"code", absl::StatusCodeToString(status.code())},
      {"message", std::string(status.message())},
      {"exit_code", exit_code},
  };
  return record.dump();
}

}  // namespace dprecourse
