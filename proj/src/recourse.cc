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

#include "dprecourse/recourse.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "dprecourse/status_macros.h"

namespace dprecourse {
namespace {

absl::Status CheckModel(const LinearModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.weights.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dimension mismatch: model ", model.weights.size(), ", input ",
        x.size()));
  }
  if (!(model.weights.squaredNorm() > 0.0)) {
    return absl::InvalidArgumentError("recourse needs a nonzero weight vector");
  }
  return absl::OkStatus();
}

absl::Status CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError("epsilon must be finite and > 0");
  }
  return absl::OkStatus();
}

// Moves x along w until the score equals target, given its current score.
RecourseOutcome MoveToTarget(const LinearModel& model, const Eigen::VectorXd& x,
                             double current_score, double target) {
  const double w2 = model.weights.squaredNorm();
  RecourseOutcome out;
  out.delta = ((target - current_score) / w2) * model.weights;
  out.x_prime = x + out.delta;
  out.cost = std::abs(target - current_score) / std::sqrt(w2);
  return out;
}

double NoisyLogit(double p, double noise, double clamp) {
  const double noisy = std::clamp(p + noise, clamp, 1.0 - clamp);
  return std::log(noisy / (1.0 - noisy));
}

}  // namespace

absl::StatusOr<RecourseOutcome> CounterfactualDistance(const LinearModel& model,
                                                       const Eigen::VectorXd& x,
                                                       TargetScore s) {
  RETURN_IF_ERROR(CheckModel(model, x));
  const double f = model.weights.dot(x) + model.intercept;
  return MoveToTarget(model, x, f, s.value);
}

absl::StatusOr<RecourseOutcome> LaplaceRecourseWithNoise(
    const LinearModel& model, const Eigen::VectorXd& x,
    const RecourseOptions& opts, double epsilon, double noise) {
  RETURN_IF_ERROR(CheckModel(model, x));
  RETURN_IF_ERROR(CheckEpsilon(epsilon));
  if (!(opts.clamp > 0.0 && opts.clamp < 0.5)) {
    return absl::InvalidArgumentError("clamp must be in (0, 0.5)");
  }
  const double p = Sigmoid(model.weights.dot(x) + model.intercept);
  RecourseOutcome out =
      MoveToTarget(model, x, NoisyLogit(p, noise, opts.clamp), opts.target.value);
  out.noisy = true;
  out.epsilon_used = epsilon;
  return out;
}

absl::StatusOr<RecourseOutcome> LaplaceRecourse(const LinearModel& model,
                                                const Eigen::VectorXd& x,
                                                const RecourseOptions& opts,
                                                double epsilon, Rng& rng) {
  RETURN_IF_ERROR(CheckEpsilon(epsilon));
  ASSIGN_OR_RETURN(double noise, SampleLaplace(1.0 / epsilon, rng));
  return LaplaceRecourseWithNoise(model, x, opts, epsilon, noise);
}

absl::StatusOr<std::vector<RecourseOutcome>> BatchRecourse(
    const LinearModel& model, const RowMatrix& queries,
    const RecourseOptions& opts, const PrivacyBudget& budget, Rng& rng) {
  RETURN_IF_ERROR(budget.Validate());
  std::vector<RecourseOutcome> out;
  out.reserve(static_cast<size_t>(queries.rows()));
  for (Eigen::Index i = 0; i < queries.rows(); ++i) {
    const Eigen::VectorXd x = queries.row(i).transpose();
    if (budget.mechanism == Mechanism::kLaplaceRecourse) {
      ASSIGN_OR_RETURN(RecourseOutcome r,
                       LaplaceRecourse(model, x, opts, budget.epsilon, rng));
      out.push_back(std::move(r));
    } else {
      ASSIGN_OR_RETURN(RecourseOutcome r,
                       CounterfactualDistance(model, x, opts.target));
      out.push_back(std::move(r));
    }
  }
  return out;
}

absl::StatusOr<std::vector<double>> BatchRecourseCosts(
    const LinearModel& model, const RowMatrix& queries,
    const RecourseOptions& opts, const PrivacyBudget& budget, Rng& rng) {
  RETURN_IF_ERROR(budget.Validate());
  std::vector<double> costs;
  if (queries.rows() == 0) return costs;
  if (!(model.weights.squaredNorm() > 0.0)) {
    return absl::InvalidArgumentError("recourse needs a nonzero weight vector");
  }
  ASSIGN_OR_RETURN(Eigen::VectorXd scores, ScoreRows(model, queries));
  const bool laplace = budget.mechanism == Mechanism::kLaplaceRecourse;
  if (laplace) {
    RETURN_IF_ERROR(CheckEpsilon(budget.epsilon));
    if (!(opts.clamp > 0.0 && opts.clamp < 0.5)) {
      return absl::InvalidArgumentError("clamp must be in (0, 0.5)");
    }
  }
  const double w_norm = model.weights.norm();
  costs.reserve(static_cast<size_t>(scores.size()));
  for (Eigen::Index i = 0; i < scores.size(); ++i) {
    double f = scores(i);
    if (laplace) {
      ASSIGN_OR_RETURN(double noise, SampleLaplace(1.0 / budget.epsilon, rng));
      f = NoisyLogit(Sigmoid(f), noise, opts.clamp);
    }
    costs.push_back(std::abs(opts.target.value - f) / w_norm);
  }
  return costs;
}

}  // namespace dprecourse
