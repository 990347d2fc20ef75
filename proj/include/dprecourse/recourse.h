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

#ifndef DPRECOURSE_RECOURSE_H_
#define DPRECOURSE_RECOURSE_H_

#include <optional>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "dprecourse/dataops.h"
#include "dprecourse/dpcore.h"
#include "dprecourse/logreg.h"
#include "dprecourse/rng.h"

namespace dprecourse {

// Decision-boundary target in logit space.
struct TargetScore {
  double value = 0.0;
};

struct RecourseOutcome {
  Eigen::VectorXd x_prime;
  Eigen::VectorXd delta;  // x_prime - x
  double cost = 0.0;      // |delta|_2
  bool noisy = false;
  std::optional<double> epsilon_used;
};

struct RecourseOptions {
  TargetScore target;
  // Noisy probabilities are clamped to [clamp, 1 - clamp] so the logit stays
  // finite.
  double clamp = 1e-6;
};

// Minimal l2 move onto {x : f(x) = s} for a linear model:
//   delta = ((s - f(x)) / |w|^2) w,  cost = |s - f(x)| / |w|.
// Recourse functions only ever see the model, never training data, so any
// output derived from a private model is post-processing of that model.
absl::StatusOr<RecourseOutcome> CounterfactualDistance(const LinearModel& model,
                                                       const Eigen::VectorXd& x,
                                                       TargetScore s);

// Laplace recourse with the noise value supplied by the caller. Applies
// p' = clamp(sigmoid(f(x)) + noise), f' = logit(p'), and moves along w by
// (s - f') / |w|^2.
absl::StatusOr<RecourseOutcome> LaplaceRecourseWithNoise(
    const LinearModel& model, const Eigen::VectorXd& x,
    const RecourseOptions& opts, double epsilon, double noise);

// Laplace recourse with noise ~ Laplace(1/epsilon); the probability query has
// global sensitivity 1.
absl::StatusOr<RecourseOutcome> LaplaceRecourse(const LinearModel& model,
                                                const Eigen::VectorXd& x,
                                                const RecourseOptions& opts,
                                                double epsilon, Rng& rng);

// Recourse for every row. kNone and kPrivateModel use the exact formula
// (privacy for the latter lives in the weights); kLaplaceRecourse draws fresh
// noise per row, in row order.
absl::StatusOr<std::vector<RecourseOutcome>> BatchRecourse(
    const LinearModel& model, const RowMatrix& queries,
    const RecourseOptions& opts, const PrivacyBudget& budget, Rng& rng);

// Costs only, same mechanism and draw order as BatchRecourse.
absl::StatusOr<std::vector<double>> BatchRecourseCosts(
    const LinearModel& model, const RowMatrix& queries,
    const RecourseOptions& opts, const PrivacyBudget& budget, Rng& rng);

}  // namespace dprecourse

#endif  // DPRECOURSE_RECOURSE_H_
