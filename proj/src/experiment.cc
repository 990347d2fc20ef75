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

#include "dprecourse/experiment.h"

#include <algorithm>
#include <numeric>
#include <vector>

#include "absl/strings/str_cat.h"
#include "dprecourse/status_macros.h"

namespace dprecourse {

absl::StatusOr<ExperimentResult> RunAttackExperiment(
    const FeatureMatrix& owner_train, const FeatureMatrix& owner_test,
    const FeatureMatrix& adversary_pool, const ExperimentSettings& settings,
    uint64_t seed) {
  const PipelineConfig& pipeline = settings.pipeline;
  RETURN_IF_ERROR(pipeline.budget.Validate());
  RETURN_IF_ERROR(pipeline.train.Validate());
  const int k_models = settings.n_ensemble;
  if (k_models < 1 || settings.n_shadow < 1) {
    return absl::InvalidArgumentError("model counts must be positive");
  }
  const int m = owner_train.num_rows() / k_models;
  if (m < 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        owner_train.num_rows(), " owner rows cannot form ", k_models,
        " partitions of at least 2 rows"));
  }
  if (owner_test.num_rows() < m) {
    return absl::InvalidArgumentError(absl::StrCat(
        "owner_test has ", owner_test.num_rows(), " rows, need ", m,
        " non-members per target model"));
  }
  const int d = owner_train.num_features();
  const Rng master(seed, "experiment");

  ExperimentResult result;
  result.per_model_train_size = m;
  RowMatrix queries(static_cast<Eigen::Index>(2) * m * k_models, d);
  std::vector<double> target_cfds;
  std::vector<bool> is_member;
  target_cfds.reserve(static_cast<size_t>(queries.rows()));
  is_member.reserve(static_cast<size_t>(queries.rows()));

  std::vector<int> partition(static_cast<size_t>(m));
  std::vector<int> test_perm(static_cast<size_t>(owner_test.num_rows()));
  double train_accuracy_sum = 0.0;
  double test_accuracy_sum = 0.0;
  Eigen::Index next_row = 0;
  for (int k = 0; k < k_models; ++k) {
    // owner_train rows arrive in split (uniformly shuffled) order, so
    // contiguous blocks are uniform disjoint partitions.
    std::iota(partition.begin(), partition.end(), k * m);
    const FeatureMatrix members = owner_train.Select(partition);

    Rng train_rng = master.Substream("owner-model", k);
    ASSIGN_OR_RETURN(LinearModel target,
                     TrainPipelineModel(members, pipeline.train,
                                        pipeline.budget, train_rng));

    Rng sample_rng = master.Substream("nonmember-sample", k);
    std::iota(test_perm.begin(), test_perm.end(), 0);
    std::shuffle(test_perm.begin(), test_perm.end(), sample_rng.engine());
    const FeatureMatrix nonmembers = owner_test.Select(
        std::span<const int>(test_perm.data(), static_cast<size_t>(m)));

    RowMatrix target_queries(2 * m, d);
    target_queries.topRows(m) = members.rows;
    target_queries.bottomRows(m) = nonmembers.rows;
    Rng recourse_rng = master.Substream("target-recourse", k);
    ASSIGN_OR_RETURN(std::vector<double> costs,
                     BatchRecourseCosts(target, target_queries,
                                        pipeline.recourse, pipeline.budget,
                                        recourse_rng));
    queries.middleRows(next_row, 2 * m) = target_queries;
    next_row += 2 * m;
    target_cfds.insert(target_cfds.end(), costs.begin(), costs.end());
    is_member.insert(is_member.end(), static_cast<size_t>(m), true);
    is_member.insert(is_member.end(), static_cast<size_t>(m), false);

    ASSIGN_OR_RETURN(double test_acc, Accuracy(target, owner_test));
    test_accuracy_sum += test_acc;
    ASSIGN_OR_RETURN(double train_acc, Accuracy(target, members));
    train_accuracy_sum += train_acc;
  }
  result.train_accuracy = train_accuracy_sum / k_models;
  result.test_accuracy = test_accuracy_sum / k_models;

  result.target_cfds.kind = AttackKind::kCfd;
  result.target_cfds.scores = target_cfds;
  result.target_cfds.is_member = is_member;
  RETURN_IF_ERROR(result.target_cfds.Validate());

  const bool wants_lrt =
      std::any_of(settings.attacks.begin(), settings.attacks.end(),
                  [](AttackKind a) { return a != AttackKind::kCfd; });
  ShadowEnsemble ensemble;
  if (wants_lrt) {
    const int shadow_size =
        settings.shadow_train_size > 0 ? settings.shadow_train_size : m;
    Rng shadow_rng = master.Substream("shadow-models");
    ASSIGN_OR_RETURN(ensemble,
                     TrainShadowEnsemble(adversary_pool, queries, pipeline,
                                         settings.n_shadow, shadow_size,
                                         shadow_rng));
  }

  for (AttackKind kind : settings.attacks) {
    if (kind == AttackKind::kCfd) {
      result.scores[kind] = result.target_cfds;
      continue;
    }
    LrtOptions opts;
    opts.mode = kind == AttackKind::kLrtGlobal ? VarianceMode::kGlobal
                                               : VarianceMode::kLocal;
    opts.local_variance_floor = settings.local_variance_floor;
    opts.tail = settings.lrt_tail;
    ASSIGN_OR_RETURN(result.scores[kind],
                     LrtAttackScores(ensemble, target_cfds, is_member, opts));
  }
  return result;
}

}  // namespace dprecourse
