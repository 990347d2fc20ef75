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

#ifndef DPRECOURSE_DPCORE_H_
#define DPRECOURSE_DPCORE_H_

#include <string>
#include <string_view>

#include "Eigen/Dense"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dprecourse/dataops.h"
#include "dprecourse/logreg.h"
#include "dprecourse/rng.h"

namespace dprecourse {

enum class Mechanism {
  kNone,              // non-private baseline
  kPrivateModel,      // DPM: output-perturbed model, exact recourse
  kLaplaceRecourse,   // LR: exact model, Laplace noise on the probability
};

std::string_view MechanismName(Mechanism m);
absl::StatusOr<Mechanism> ParseMechanism(std::string_view name);

struct PrivacyBudget {
  double epsilon = 0.0;
  Mechanism mechanism = Mechanism::kNone;

  // epsilon must be positive and finite unless mechanism is kNone.
  absl::Status Validate() const;
};

struct NoiseDraw {
  Eigen::VectorXd value;
  double scale = 0.0;
  std::string lineage;
};

// Inverse-CDF transform of u in (0,1) to Laplace(0, b):
//   -b * sign(u - 1/2) * ln(1 - 2|u - 1/2|).
double LaplaceFromUniform(double u, double b);

absl::StatusOr<double> SampleLaplace(double b, Rng& rng);

// Vector with density proportional to exp(-|eta|_2 / beta): direction uniform
// on the unit sphere, norm ~ Gamma(dim, beta) drawn as a sum of dim
// exponentials.
absl::StatusOr<NoiseDraw> SampleL2Laplace(int dim, double beta, Rng& rng);

// beta = 2 / (n * lambda * epsilon), the output-perturbation scale for
// l2-regularized logistic regression on rows of norm at most 1.
absl::StatusOr<double> OutputPerturbationScale(int n, double lambda,
                                               double epsilon);

// Scales every row with l2 norm above 1 down to norm 1.
RowMatrix ClipRowsToUnitNorm(const RowMatrix& rows);

// epsilon-DP logistic regression by output perturbation. Rows are augmented
// with the intercept column and clipped to unit norm, the exact regularized
// minimizer is found with the non-private trainer, and an SampleL2Laplace
// vector of dimension d+1 is added to (weights, intercept).
absl::StatusOr<LinearModel> TrainPrivateModel(const FeatureMatrix& data,
                                              const TrainConfig& cfg,
                                              double epsilon, Rng& rng);

// 1/2 + (1 - exp(-epsilon)) / 2, the ceiling on any membership attack's
// balanced accuracy against an epsilon-DP recourse mechanism.
absl::StatusOr<double> BalancedAccuracyBound(double epsilon);

}  // namespace dprecourse

#endif  // DPRECOURSE_DPCORE_H_
