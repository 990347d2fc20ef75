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

#ifndef DPRECOURSE_EVAL_H_
#define DPRECOURSE_EVAL_H_

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "dprecourse/attacks.h"
#include "dprecourse/dpcore.h"

namespace dprecourse {

// Vertices of the empirical ROC curve from the highest threshold down.
// Point k predicts MEMBER for scores >= thresholds[k]; the first point uses
// +inf and is always (0, 0), the last is always (1, 1).
struct RocCurve {
  std::vector<double> fpr;
  std::vector<double> tpr;
  std::vector<double> thresholds;

  int size() const { return static_cast<int>(fpr.size()); }
};

absl::StatusOr<RocCurve> Roc(const AttackScoreSet& scores);

// Trapezoidal area under the curve.
double Auc(const RocCurve& curve);

// max over thresholds of (TPR + TNR) / 2.
absl::StatusOr<double> BalancedAccuracy(const AttackScoreSet& scores);

// Largest TPR among vertices with FPR <= level (0 if none).
absl::StatusOr<double> TprAtFpr(const RocCurve& curve, double level);

// Step-function TPR on num_points log-spaced FPR levels in [1e-3, 1].
std::vector<std::pair<double, double>> LogSpacedRoc(const RocCurve& curve,
                                                    int num_points = 61);

struct Histogram {
  std::vector<double> edges;  // bins + 1 shared edges
  std::vector<long> train_counts;
  std::vector<long> test_counts;
};

// Shared equal-width bins spanning the pooled range of both samples.
absl::StatusOr<Histogram> CfdHistogram(std::span<const double> train,
                                       std::span<const double> test, int bins);

// 1-Wasserstein distance between two empirical distributions.
absl::StatusOr<double> Wasserstein1(std::span<const double> a,
                                    std::span<const double> b);

inline constexpr double kReportFprLevels[] = {0.001, 0.01, 0.1};

struct EvalReport {
  double auc = 0.0;
  double balanced_accuracy = 0.0;
  std::map<double, double> tpr_at;
  std::optional<double> ba_bound;
  bool ba_bound_violated = false;
  Histogram histogram;
  RocCurve roc;
};

// Full report for one attack. The BA bound is attached only for the Laplace
// recourse mechanism, whose outputs are epsilon-DP per query.
absl::StatusOr<EvalReport> Evaluate(const AttackScoreSet& scores,
                                    const PrivacyBudget& budget,
                                    int histogram_bins);

}  // namespace dprecourse

#endif  // DPRECOURSE_EVAL_H_
