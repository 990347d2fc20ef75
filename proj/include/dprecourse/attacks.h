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

#ifndef DPRECOURSE_ATTACKS_H_
#define DPRECOURSE_ATTACKS_H_

#include <span>
#include <string_view>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dprecourse/dataops.h"
#include "dprecourse/dpcore.h"
#include "dprecourse/logreg.h"
#include "dprecourse/recourse.h"
#include "dprecourse/rng.h"

namespace dprecourse {

enum class AttackKind { kCfd, kLrtGlobal, kLrtLocal };

std::string_view AttackName(AttackKind kind);
absl::StatusOr<AttackKind> ParseAttack(std::string_view name);

// Per-point membership scores. Higher means more member-like for every kind.
struct AttackScoreSet {
  std::vector<double> scores;
  std::vector<bool> is_member;
  AttackKind kind = AttackKind::kCfd;

  int size() const { return static_cast<int>(scores.size()); }
  int num_members() const;
  int num_nonmembers() const { return size() - num_members(); }

  // Equal lengths and finite scores.
  absl::Status Validate() const;
  // Validate() plus at least one point of each class.
  absl::Status ValidateForMetrics() const;
  void Append(const AttackScoreSet& other);
};

// Distances below this are floored before taking logs.
inline constexpr double kMinDistance = 1e-12;
// Floor on the pooled log-distance variance in global mode.
inline constexpr double kMinPooledVariance = 1e-24;

// Score for each query is its counterfactual distance under the target
// model's recourse mechanism.
absl::StatusOr<AttackScoreSet> CfdAttackScores(
    const LinearModel& target, const RowMatrix& queries,
    const std::vector<bool>& is_member, const RecourseOptions& recourse,
    const PrivacyBudget& budget, Rng& rng);

// Everything needed to reproduce the owner's training and recourse pipeline.
struct PipelineConfig {
  TrainConfig train;
  PrivacyBudget budget;
  RecourseOptions recourse;
  // Shadow models train (DPM) and answer recourse (LR) through the same
  // mechanism as the target. When false they are trained and queried without
  // privacy.
  bool shadow_mirror_dp = true;
};

// Trains one model the way the owner would under budget: the private trainer
// for kPrivateModel, the plain trainer otherwise.
absl::StatusOr<LinearModel> TrainPipelineModel(const FeatureMatrix& data,
                                               const TrainConfig& cfg,
                                               const PrivacyBudget& budget,
                                               Rng& rng);

struct ShadowEnsemble {
  std::vector<LinearModel> models;
  // per_point_cfds(i, j): distance of query i under shadow model j.
  Eigen::MatrixXd per_point_cfds;

  int size() const { return static_cast<int>(models.size()); }
};

// Trains num_shadow models, each on a fresh uniform subsample (without
// replacement) of train_size rows of the adversary pool, then records every
// query's counterfactual distance under each model.
absl::StatusOr<ShadowEnsemble> TrainShadowEnsemble(
    const FeatureMatrix& adversary_pool, const RowMatrix& queries,
    const PipelineConfig& pipeline, int num_shadow, int train_size, Rng& rng);

// Recomputes per_point_cfds for a new query set with the ensemble's models.
absl::StatusOr<Eigen::MatrixXd> ShadowDistances(
    const std::vector<LinearModel>& models, const RowMatrix& queries,
    const PipelineConfig& pipeline, Rng& rng);

enum class VarianceMode {
  kGlobal,  // one variance pooled over all queries' centered log-distances
  kLocal,   // each query's own shadow log-distance variance
};

// Which tail of the fitted out-distribution counts as member-like.
enum class LrtTail {
  // MEMBER when t0 > z_{1-alpha}: training points sit farther from the
  // boundary than the out-distribution predicts, and alpha is the FPR.
  kUpper,
  // MEMBER when t0 <= z_{1-alpha}, the literal test of the one-sided
  // algorithm as usually printed.
  kLower,
};

std::string_view LrtTailName(LrtTail tail);
absl::StatusOr<LrtTail> ParseLrtTail(std::string_view name);

struct LrtOptions {
  VarianceMode mode = VarianceMode::kGlobal;
  LrtTail tail = LrtTail::kUpper;
  // Local mode only. With 0, a query whose shadow distances are all equal is
  // an error; otherwise the per-point variance is raised to this value.
  double local_variance_floor = 0.0;
};

// One-sided likelihood-ratio test against the lognormal out-distribution
// fitted to the shadow distances (MLE mean and 1/N variance of the logs).
// With z = (log t0 - mu_out) / sigma_out the score is z for kUpper and -z for
// kLower.
absl::StatusOr<AttackScoreSet> LrtAttackScores(
    const ShadowEnsemble& ensemble, std::span<const double> target_cfds,
    const std::vector<bool>& is_member, const LrtOptions& opts);

// Decision of the fixed-level test from an LRT score, alpha in (0, 1).
// kUpper: MEMBER iff score > q; kLower: MEMBER iff score >= -q, where q is
// the standard normal 1-alpha quantile. Equivalent to comparing t0 with the
// lognormal quantile z_{1-alpha} = exp(mu_out + sigma_out * q).
absl::StatusOr<bool> LrtIsMember(double score, double alpha, LrtTail tail);

}  // namespace dprecourse

#endif  // DPRECOURSE_ATTACKS_H_
