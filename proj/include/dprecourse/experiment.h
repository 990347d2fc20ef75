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

#ifndef DPRECOURSE_EXPERIMENT_H_
#define DPRECOURSE_EXPERIMENT_H_

#include <cstdint>
#include <map>
#include <vector>

#include "absl/status/statusor.h"
#include "dprecourse/attacks.h"
#include "dprecourse/dataops.h"

namespace dprecourse {

struct ExperimentSettings {
  PipelineConfig pipeline;
  int n_ensemble = 20;
  int n_shadow = 5;
  // Rows per shadow training set; 0 means the per-target partition size.
  int shadow_train_size = 0;
  std::vector<AttackKind> attacks = {AttackKind::kCfd, AttackKind::kLrtGlobal,
                                     AttackKind::kLrtLocal};
  double local_variance_floor = 1e-12;
  LrtTail lrt_tail = LrtTail::kUpper;
};

struct ExperimentResult {
  std::map<AttackKind, AttackScoreSet> scores;
  // Raw target distances (members and non-members) pooled over all target
  // models, whether or not the CFD attack was requested.
  AttackScoreSet target_cfds;
  // Mean training and owner_test accuracy over all target models.
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  int per_model_train_size = 0;
};

// Trains n_ensemble target models on disjoint equal partitions of owner_train.
// Each target is queried on its own rows (members) and an equal-size sample of
// owner_test (non-members); scores are pooled over targets. Shadow models are
// trained once on the adversary pool. Every random choice derives from seed.
absl::StatusOr<ExperimentResult> RunAttackExperiment(
    const FeatureMatrix& owner_train, const FeatureMatrix& owner_test,
    const FeatureMatrix& adversary_pool, const ExperimentSettings& settings,
    uint64_t seed);

}  // namespace dprecourse

#endif  // DPRECOURSE_EXPERIMENT_H_
