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

#include "dprecourse/logreg.h"

#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"

namespace dprecourse {

absl::Status TrainConfig::Validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    return absl::InvalidArgumentError("lambda must be finite and > 0");
  }
  if (max_iters < 1) return absl::InvalidArgumentError("max_iters must be >= 1");
  if (step_size.has_value() && !(*step_size > 0.0)) {
    return absl::InvalidArgumentError("step_size must be > 0");
  }
  if (!(tol > 0.0)) return absl::InvalidArgumentError("tol must be > 0");
  return absl::OkStatus();
}

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double LogisticLoss(double margin) {
  // log(1 + exp(-m))
  if (margin > 0) return std::log1p(std::exp(-margin));
  return -margin + std::log1p(std::exp(margin));
}

LogisticObjective::LogisticObjective(RowMatrix design,
                                     Eigen::VectorXd signed_labels,
                                     double lambda)
    : design_(std::move(design)),
      labels_(std::move(signed_labels)),
      lambda_(lambda) {}

double LogisticObjective::Value(const Eigen::VectorXd& w) const {
  const Eigen::VectorXd margins = labels_.cwiseProduct(design_ * w);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i) {
    loss += LogisticLoss(margins(i));
  }
  return loss / static_cast<double>(num_rows()) + 0.5 * lambda_ * w.squaredNorm();
}

Eigen::VectorXd LogisticObjective::Gradient(const Eigen::VectorXd& w) const {
  const Eigen::VectorXd margins = labels_.cwiseProduct(design_ * w);
  Eigen::VectorXd coeff(margins.size());
  for (Eigen::Index i = 0; i < margins.size(); ++i) {
    coeff(i) = -labels_(i) * Sigmoid(-margins(i));
  }
  return design_.transpose() * coeff / static_cast<double>(num_rows()) +
         lambda_ * w;
}

double LogisticObjective::ValueAndGradient(const Eigen::VectorXd& w,
                                           Eigen::VectorXd* grad) const {
  const Eigen::VectorXd margins = labels_.cwiseProduct(design_ * w);
  Eigen::VectorXd coeff(margins.size());
  double loss = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i) {
    loss += LogisticLoss(margins(i));
    coeff(i) = -labels_(i) * Sigmoid(-margins(i));
  }
  const double n = static_cast<double>(num_rows());
  *grad = design_.transpose() * coeff / n + lambda_ * w;
  return loss / n + 0.5 * lambda_ * w.squaredNorm();
}

double LogisticObjective::LipschitzBound() const {
  return design_.squaredNorm() / (4.0 * num_rows()) + lambda_;
}

RowMatrix AugmentWithIntercept(const RowMatrix& rows) {
  RowMatrix out(rows.rows(), rows.cols() + 1);
  out.leftCols(rows.cols()) = rows;
  out.col(rows.cols()).setOnes();
  return out;
}

Eigen::VectorXd SignedLabels(const std::vector<int>& labels) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(labels.size()));
  for (size_t i = 0; i < labels.size(); ++i) y(i) = labels[i] == 1 ? 1.0 : -1.0;
  return y;
}

absl::StatusOr<DescentResult> MinimizeByGradientDescent(
    const LogisticObjective& objective, const TrainConfig& cfg) {
  const double step = cfg.step_size.value_or(1.0 / objective.LipschitzBound());
  DescentResult out;
  out.w = Eigen::VectorXd::Zero(objective.dim());
  Eigen::VectorXd grad;
  double loss = objective.ValueAndGradient(out.w, &grad);
  int increases = 0;
  for (int it = 0; it < cfg.max_iters; ++it) {
    if (grad.norm() < cfg.tol) {
      out.converged = true;
      out.iterations = it;
      return out;
    }
    out.w -= step * grad;
    const double next = objective.ValueAndGradient(out.w, &grad);
    if (!std::isfinite(next)) {
      return absl::InternalError("training loss became non-finite");
    }
    increases = next > loss ? increases + 1 : 0;
    if (increases >= 10) {
      return absl::InternalError(absl::StrCat(
          "training diverged: loss rose for 10 consecutive steps (step ",
          step, ")"));
    }
    loss = next;
  }
  out.iterations = cfg.max_iters;
  out.converged = grad.norm() < cfg.tol;
  return out;
}

LinearModel ModelFromAugmented(const Eigen::VectorXd& w_aug, double lambda) {
  LinearModel m;
  const Eigen::Index d = w_aug.size() - 1;
  m.weights = w_aug.head(d);
  m.intercept = w_aug(d);
  m.lambda = lambda;
  return m;
}

absl::StatusOr<LinearModel> Train(const FeatureMatrix& data,
                                  const TrainConfig& cfg) {
  if (absl::Status s = cfg.Validate(); !s.ok()) return s;
  if (data.num_rows() < 1 || data.num_features() < 1) {
    return absl::InvalidArgumentError("training data is empty");
  }
  int positives = 0;
  for (int y : data.labels) positives += y;
  if (positives == 0 || positives == data.num_rows()) {
    return absl::InvalidArgumentError("training data has a single class");
  }
  LogisticObjective objective(AugmentWithIntercept(data.rows),
                              SignedLabels(data.labels), cfg.lambda);
  absl::StatusOr<DescentResult> fit = MinimizeByGradientDescent(objective, cfg);
  if (!fit.ok()) return fit.status();
  LinearModel model = ModelFromAugmented(fit->w, cfg.lambda);
  model.converged = fit->converged;
  model.iterations = fit->iterations;
  return model;
}

absl::StatusOr<double> Score(const LinearModel& model,
                             const Eigen::VectorXd& x) {
  if (x.size() != model.weights.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dimension mismatch: model ", model.weights.size(), ", input ",
        x.size()));
  }
  return model.weights.dot(x) + model.intercept;
}

absl::StatusOr<double> PredictProba(const LinearModel& model,
                                    const Eigen::VectorXd& x) {
  absl::StatusOr<double> z = Score(model, x);
  if (!z.ok()) return z.status();
  return Sigmoid(*z);
}

absl::StatusOr<Eigen::VectorXd> ScoreRows(const LinearModel& model,
                                          const RowMatrix& rows) {
  if (rows.cols() != model.weights.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dimension mismatch: model ", model.weights.size(), ", input ",
        rows.cols()));
  }
  return Eigen::VectorXd((rows * model.weights).array() + model.intercept);
}

absl::StatusOr<double> Accuracy(const LinearModel& model,
                                const FeatureMatrix& data) {
  if (data.num_rows() == 0) return absl::InvalidArgumentError("empty data");
  absl::StatusOr<Eigen::VectorXd> z = ScoreRows(model, data.rows);
  if (!z.ok()) return z.status();
  int correct = 0;
  for (int i = 0; i < data.num_rows(); ++i) {
    const int predicted = Sigmoid((*z)(i)) >= 0.5 ? 1 : 0;
    correct += predicted == data.labels[i];
  }
  return static_cast<double>(correct) / data.num_rows();
}

}  // namespace dprecourse
