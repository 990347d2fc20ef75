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

#include "dprecourse/attacks.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "boost/math/distributions/normal.hpp"
#include "dprecourse/status_macros.h"

namespace dprecourse {

std::string_view AttackName(AttackKind kind) {
  switch (kind) {
    case AttackKind::kCfd:
      return "cfd";
    case AttackKind::kLrtGlobal:
      return "lrt_global";
    case AttackKind::kLrtLocal:
      return "lrt_local";
  }
  return "unknown";
}

absl::StatusOr<AttackKind> ParseAttack(std::string_view name) {
  if (name == "cfd") return AttackKind::kCfd;
  if (name == "lrt_global") return AttackKind::kLrtGlobal;
  if (name == "lrt_local") return AttackKind::kLrtLocal;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown attack '", std::string(name), "'"));
}

std::string_view LrtTailName(LrtTail tail) {
  return tail == LrtTail::kUpper ? "upper" : "lower";
}

absl::StatusOr<LrtTail> ParseLrtTail(std::string_view name) {
  if (name == "upper") return LrtTail::kUpper;
  if (name == "lower") return LrtTail::kLower;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown LRT tail '", std::string(name), "'"));
}

int AttackScoreSet::num_members() const {
  return static_cast<int>(std::count(is_member.begin(), is_member.end(), true));
}

absl::Status AttackScoreSet::Validate() const {
  if (scores.size() != is_member.size()) {
    return absl::InvalidArgumentError("scores and labels differ in length");
  }
  for (double s : scores) {
    if (!std::isfinite(s)) {
      return absl::InvalidArgumentError("attack scores must be finite");
    }
  }
  return absl::OkStatus();
}

absl::Status AttackScoreSet::ValidateForMetrics() const {
  RETURN_IF_ERROR(Validate());
  if (num_members() == 0 || num_nonmembers() == 0) {
    return absl::InvalidArgumentError(
        "metrics need at least one member and one non-member");
  }
  return absl::OkStatus();
}

void AttackScoreSet::Append(const AttackScoreSet& other) {
  scores.insert(scores.end(), other.scores.begin(), other.scores.end());
  is_member.insert(is_member.end(), other.is_member.begin(),
                   other.is_member.end());
}

absl::StatusOr<AttackScoreSet> CfdAttackScores(
    const LinearModel& target, const RowMatrix& queries,
    const std::vector<bool>& is_member, const RecourseOptions& recourse,
    const PrivacyBudget& budget, Rng& rng) {
  if (queries.rows() == 0) return absl::InvalidArgumentError("no queries");
  if (static_cast<Eigen::Index>(is_member.size()) != queries.rows()) {
    return absl::InvalidArgumentError("ground truth length != query count");
  }
  AttackScoreSet out;
  out.kind = AttackKind::kCfd;
  ASSIGN_OR_RETURN(out.scores,
                   BatchRecourseCosts(target, queries, recourse, budget, rng));
  out.is_member = is_member;
  RETURN_IF_ERROR(out.Validate());
  return out;
}

absl::StatusOr<LinearModel> TrainPipelineModel(const FeatureMatrix& data,
                                               const TrainConfig& cfg,
                                               const PrivacyBudget& budget,
                                               Rng& rng) {
  RETURN_IF_ERROR(budget.Validate());
  if (budget.mechanism == Mechanism::kPrivateModel) {
    return TrainPrivateModel(data, cfg, budget.epsilon, rng);
  }
  return Train(data, cfg);
}

namespace {

PrivacyBudget ShadowBudget(const PipelineConfig& pipeline) {
  return pipeline.shadow_mirror_dp ? pipeline.budget : PrivacyBudget{};
}

}  // namespace

absl::StatusOr<Eigen::MatrixXd> ShadowDistances(
    const std::vector<LinearModel>& models, const RowMatrix& queries,
    const PipelineConfig& pipeline, Rng& rng) {
  const PrivacyBudget budget = ShadowBudget(pipeline);
  Eigen::MatrixXd cfds(queries.rows(), static_cast<Eigen::Index>(models.size()));
  for (size_t j = 0; j < models.size(); ++j) {
    Rng noise = rng.Substream("shadow-recourse", j);
    ASSIGN_OR_RETURN(std::vector<double> costs,
                     BatchRecourseCosts(models[j], queries, pipeline.recourse,
                                        budget, noise));
    cfds.col(static_cast<Eigen::Index>(j)) =
        Eigen::Map<const Eigen::VectorXd>(costs.data(), queries.rows());
  }
  return cfds;
}

absl::StatusOr<ShadowEnsemble> TrainShadowEnsemble(
    const FeatureMatrix& adversary_pool, const RowMatrix& queries,
    const PipelineConfig& pipeline, int num_shadow, int train_size, Rng& rng) {
  if (num_shadow < 1) return absl::InvalidArgumentError("need >= 1 shadow model");
  if (train_size < 2 || train_size > adversary_pool.num_rows()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "adversary pool of ", adversary_pool.num_rows(),
        " rows cannot supply shadow training sets of ", train_size));
  }
  const PrivacyBudget budget = ShadowBudget(pipeline);
  ShadowEnsemble out;
  std::vector<int> perm(static_cast<size_t>(adversary_pool.num_rows()));
  for (int j = 0; j < num_shadow; ++j) {
    Rng sample_rng = rng.Substream("shadow-sample", j);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), sample_rng.engine());
    const FeatureMatrix train_set = adversary_pool.Select(
        std::span<const int>(perm.data(), static_cast<size_t>(train_size)));
    Rng train_rng = rng.Substream("shadow-train", j);
    ASSIGN_OR_RETURN(LinearModel model,
                     TrainPipelineModel(train_set, pipeline.train, budget,
                                        train_rng));
    out.models.push_back(std::move(model));
  }
  ASSIGN_OR_RETURN(out.per_point_cfds,
                   ShadowDistances(out.models, queries, pipeline, rng));
  return out;
}

absl::StatusOr<AttackScoreSet> LrtAttackScores(
    const ShadowEnsemble& ensemble, std::span<const double> target_cfds,
    const std::vector<bool>& is_member, const LrtOptions& opts) {
  const Eigen::MatrixXd& cfds = ensemble.per_point_cfds;
  const Eigen::Index n = cfds.rows();
  const Eigen::Index shadows = cfds.cols();
  if (static_cast<Eigen::Index>(target_cfds.size()) != n ||
      static_cast<Eigen::Index>(is_member.size()) != n) {
    return absl::InvalidArgumentError(
        "target distances, labels and shadow rows differ in length");
  }
  if (opts.mode == VarianceMode::kLocal && shadows < 2) {
    return absl::InvalidArgumentError("local variance needs >= 2 shadow models");
  }
  if (opts.mode == VarianceMode::kGlobal && (shadows < 1 || n * shadows < 2)) {
    return absl::InvalidArgumentError(
        "global variance needs >= 2 shadow distances in total");
  }
  if ((cfds.array() < 0).any()) {
    return absl::InvalidArgumentError("shadow distances must be nonnegative");
  }

  const Eigen::MatrixXd logs = cfds.cwiseMax(kMinDistance).array().log();
  const Eigen::VectorXd mu = logs.rowwise().mean();
  const Eigen::VectorXd local_var =
      (logs.colwise() - mu).array().square().rowwise().mean();
  const double pooled_var = std::max(local_var.mean(), kMinPooledVariance);

  AttackScoreSet out;
  out.kind = opts.mode == VarianceMode::kGlobal ? AttackKind::kLrtGlobal
                                                : AttackKind::kLrtLocal;
  out.is_member = is_member;
  out.scores.resize(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(target_cfds[i] >= 0.0)) {
      return absl::InvalidArgumentError("target distances must be nonnegative");
    }
    double var = pooled_var;
    if (opts.mode == VarianceMode::kLocal) {
      var = local_var(i);
      if (!(var > 0.0)) {
        if (!(opts.local_variance_floor > 0.0)) {
          return absl::InvalidArgumentError(absl::StrCat(
              "query ", i, " has zero shadow log-distance variance"));
        }
      }
      var = std::max(var, opts.local_variance_floor);
    }
    const double log_t0 = std::log(std::max(target_cfds[i], kMinDistance));
    const double z = (log_t0 - mu(i)) / std::sqrt(var);
    out.scores[static_cast<size_t>(i)] = opts.tail == LrtTail::kUpper ? z : -z;
  }
  RETURN_IF_ERROR(out.Validate());
  return out;
}

absl::StatusOr<bool> LrtIsMember(double score, double alpha, LrtTail tail) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    return absl::InvalidArgumentError("alpha must be in (0, 1)");
  }
  const boost::math::normal standard;
  const double q = boost::math::quantile(standard, 1.0 - alpha);
  return tail == LrtTail::kUpper ? score > q : score >= -q;
}

}  // namespace dprecourse
