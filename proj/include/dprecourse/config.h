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

#ifndef DPRECOURSE_CONFIG_H_
#define DPRECOURSE_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dprecourse/attacks.h"
#include "dprecourse/dpcore.h"
#include "dprecourse/logreg.h"

namespace dprecourse {

struct DatasetConfig {
  enum class Kind { kSynthetic, kCsv };
  Kind kind = Kind::kSynthetic;
  int d = 100;
  std::string csv_path;
  std::string label_column;
  std::string positive_label;
};

// One experiment. Loaded from a flat "key = value" text file, one pair per
// line, '#' starting a comment. Recognized keys:
//   dataset            synthetic | csv
//   d                  synthetic dimension
//   csv_path, label_column, positive_label
//   n_owner, n_test, n_adversary
//   mechanism          baseline | dpm | lr
//   epsilon            required unless mechanism = baseline
//   attacks            comma list from cfd, lrt_global, lrt_local
//   n_shadow, n_ensemble, shadow_train_size
//   lambda, max_iters, step_size (number or "auto"), tol
//   corr_threshold, target_score, clamp
//   shadow_mirror_dp   true | false
//   lrt_tail           upper | lower
//   local_variance_floor, hist_bins, seed, output_dir
struct ExperimentConfig {
  DatasetConfig dataset;
  int n_owner = 5000;
  // Non-member pool; 0 means the same as n_owner.
  int n_test = 0;
  int n_adversary = 5000;
  Mechanism mechanism = Mechanism::kNone;
  std::optional<double> epsilon;
  std::vector<AttackKind> attacks = {AttackKind::kCfd, AttackKind::kLrtGlobal,
                                     AttackKind::kLrtLocal};
  int n_shadow = 5;
  int n_ensemble = 20;
  int shadow_train_size = 0;
  TrainConfig train;
  double corr_threshold = 0.95;
  double target_score = 0.0;
  double clamp = 1e-6;
  bool shadow_mirror_dp = true;
  double local_variance_floor = 1e-12;
  LrtTail lrt_tail = LrtTail::kUpper;
  int hist_bins = 50;
  uint64_t seed = 0;
  std::string output_dir = "results";

  int effective_n_test() const { return n_test > 0 ? n_test : n_owner; }
  PrivacyBudget budget() const;

  absl::Status Validate() const;
};

absl::StatusOr<ExperimentConfig> ParseConfig(std::string_view text);
absl::StatusOr<ExperimentConfig> LoadConfigFile(const std::string& path);

// Canonical "key = value" rendering; ParseConfig(ConfigToText(c)) == c.
std::string ConfigToText(const ExperimentConfig& config);

// Parses "0.5,1.0" style lists. Empty lists are an error.
absl::StatusOr<std::vector<double>> ParseEpsilonList(std::string_view text);

}  // namespace dprecourse

#endif  // DPRECOURSE_CONFIG_H_
