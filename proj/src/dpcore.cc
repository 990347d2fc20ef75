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

#include "dprecourse/dpcore.h"

#include <cmath>
#include <limits>
#include <string>

#include "absl/strings/str_cat.h"
#include "dprecourse/status_macros.h"

namespace dprecourse {

std::string_view MechanismName(Mechanism m) {
  switch (m) {
    case Mechanism::kNone:
      return "baseline";
    case Mechanism::kPrivateModel:
      return "dpm";
    case Mechanism::kLaplaceRecourse:
      return "lr";
  }
  return "unknown";
}

absl::StatusOr<Mechanism> ParseMechanism(std::string_view name) {
  if (name == "baseline" || name == "none") return Mechanism::kNone;
  if (name == "dpm") return Mechanism::kPrivateModel;
  if (name == "lr") return Mechanism::kLaplaceRecourse;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown mechanism '", std::string(name), "'"));
}

absl::Status PrivacyBudget::Validate() const {
  if (mechanism == Mechanism::kNone) return absl::OkStatus();
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "epsilon must be finite and > 0 for mechanism ",
        std::string(MechanismName(mechanism))));
  }
  return absl::OkStatus();
}

double LaplaceFromUniform(double u, double b) {
  const double centered = u - 0.5;
  const double sign = centered < 0 ? -1.0 : (centered > 0 ? 1.0 : 0.0);
  return -b * sign * std::log1p(-2.0 * std::abs(centered));
}

absl::StatusOr<double> SampleLaplace(double b, Rng& rng) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    return absl::InvalidArgumentError("Laplace scale must be finite and > 0");
  }
  return LaplaceFromUniform(rng.UniformOpen(), b);
}

absl::StatusOr<NoiseDraw> SampleL2Laplace(int dim, double beta, Rng& rng) {
  if (dim < 1) return absl::InvalidArgumentError("noise dimension must be >= 1");
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    return absl::InvalidArgumentError("noise scale must be finite and > 0");
  }
  Eigen::VectorXd direction(dim);
  double norm = 0.0;
  do {
    for (int j = 0; j < dim; ++j) direction(j) = rng.StandardNormal();
    norm = direction.norm();
  } while (norm == 0.0);
  direction /= norm;
  // Gamma(dim, beta) as a sum of dim Exp(beta) variables.
  double radius = 0.0;
  for (int j = 0; j < dim; ++j) radius -= std::log(rng.UniformOpen());
  radius *= beta;
  NoiseDraw out;
  out.value = radius * direction;
  out.scale = beta;
  out.lineage = rng.lineage();
  return out;
}

absl::StatusOr<double> OutputPerturbationScale(int n, double lambda,
                                               double epsilon) {
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  if (!(lambda > 0.0)) {
    return absl::InvalidArgumentError(
        "lambda must be > 0: unregularized ERM has unbounded sensitivity");
  }
  if (!(epsilon > 0.0)) return absl::InvalidArgumentError("epsilon must be > 0");
  return 2.0 / (static_cast<double>(n) * lambda * epsilon);
}

RowMatrix ClipRowsToUnitNorm(const RowMatrix& rows) {
  RowMatrix out = rows;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double norm = out.row(i).norm();
    if (norm > 1.0) out.row(i) /= norm;
  }
  return out;
}

absl::StatusOr<LinearModel> TrainPrivateModel(const FeatureMatrix& data,
                                              const TrainConfig& cfg,
                                              double epsilon, Rng& rng) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError("epsilon must be finite and > 0");
  }
  if (!(cfg.lambda > 0.0)) {
    return absl::InvalidArgumentError(
        "private training needs lambda > 0 for finite sensitivity");
  }
  RETURN_IF_ERROR(cfg.Validate());
  int positives = 0;
  for (int y : data.labels) positives += y;
  if (data.num_rows() < 1 || positives == 0 || positives == data.num_rows()) {
    return absl::InvalidArgumentError("training data has a single class");
  }
  LogisticObjective objective(
      ClipRowsToUnitNorm(AugmentWithIntercept(data.rows)),
      SignedLabels(data.labels), cfg.lambda);
  ASSIGN_OR_RETURN(DescentResult fit,
                   MinimizeByGradientDescent(objective, cfg));
  ASSIGN_OR_RETURN(double beta, OutputPerturbationScale(data.num_rows(),
                                                        cfg.lambda, epsilon));
  ASSIGN_OR_RETURN(NoiseDraw noise,
                   SampleL2Laplace(objective.dim(), beta, rng));
  LinearModel model = ModelFromAugmented(fit.w + noise.value, cfg.lambda);
  model.converged = fit.converged;
  model.iterations = fit.iterations;
  return model;
}

absl::StatusOr<double> BalancedAccuracyBound(double epsilon) {
  if (!(epsilon > 0.0)) return absl::InvalidArgumentError("epsilon must be > 0");
  return 0.5 + 0.5 * -std::expm1(-epsilon);
}

}  // namespace dprecourse
