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

#ifndef DPRECOURSE_LOGREG_H_
#define DPRECOURSE_LOGREG_H_

#include <optional>

#include "Eigen/Dense"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dprecourse/dataops.h"

namespace dprecourse {

struct TrainConfig {
  double lambda = 1e-4;
  int max_iters = 5000;
  // Fixed gradient-descent step. When unset the trainer uses 1/L, where L is
  // the Frobenius upper bound on the objective's gradient Lipschitz constant.
  std::optional<double> step_size;
  // Stop once the gradient l2 norm drops below this.
  double tol = 1e-6;

  absl::Status Validate() const;
};

// Logistic-regression classifier f(x) = w.x + b.
struct LinearModel {
  Eigen::VectorXd weights;
  double intercept = 0.0;
  double lambda = 0.0;
  bool converged = false;
  int iterations = 0;

  int dim() const { return static_cast<int>(weights.size()); }
};

// l2-regularized mean logistic loss over a design matrix whose rows already
// include the constant intercept column:
//   (1/n) sum_i log(1 + exp(-y_i w.x_i)) + (lambda/2) |w|^2,  y_i in {-1,+1}.
class LogisticObjective {
 public:
  LogisticObjective(RowMatrix design, Eigen::VectorXd signed_labels,
                    double lambda);

  double Value(const Eigen::VectorXd& w) const;
  Eigen::VectorXd Gradient(const Eigen::VectorXd& w) const;
  // Value and gradient from a single pass over the design.
  double ValueAndGradient(const Eigen::VectorXd& w, Eigen::VectorXd* grad) const;
  // (|X|_F^2 / (4n)) + lambda, an upper bound on the Hessian spectral norm.
  double LipschitzBound() const;

  int num_rows() const { return static_cast<int>(design_.rows()); }
  int dim() const { return static_cast<int>(design_.cols()); }
  const RowMatrix& design() const { return design_; }

 private:
  RowMatrix design_;
  Eigen::VectorXd labels_;
  double lambda_;
};

// Appends a constant-1 column.
RowMatrix AugmentWithIntercept(const RowMatrix& rows);
// Maps {0,1} labels to {-1,+1}.
Eigen::VectorXd SignedLabels(const std::vector<int>& labels);

struct DescentResult {
  Eigen::VectorXd w;
  bool converged = false;
  int iterations = 0;
};

// Full-batch gradient descent from w = 0. Fails if the loss increases for 10
// consecutive steps.
absl::StatusOr<DescentResult> MinimizeByGradientDescent(
    const LogisticObjective& objective, const TrainConfig& cfg);

// Splits an augmented parameter vector (weights..., intercept).
LinearModel ModelFromAugmented(const Eigen::VectorXd& w_aug, double lambda);

absl::StatusOr<LinearModel> Train(const FeatureMatrix& data,
                                  const TrainConfig& cfg);

// w.x + b.
absl::StatusOr<double> Score(const LinearModel& model,
                             const Eigen::VectorXd& x);
// sigmoid(Score(x)).
absl::StatusOr<double> PredictProba(const LinearModel& model,
                                    const Eigen::VectorXd& x);
// Scores for every row of a matrix.
absl::StatusOr<Eigen::VectorXd> ScoreRows(const LinearModel& model,
                                          const RowMatrix& rows);
// Fraction of rows with (PredictProba >= 0.5) == label.
absl::StatusOr<double> Accuracy(const LinearModel& model,
                                const FeatureMatrix& data);

// Numerically stable sigmoid and log(1 + exp(-z)).
double Sigmoid(double z);
double LogisticLoss(double margin);

}  // namespace dprecourse

#endif  // DPRECOURSE_LOGREG_H_
