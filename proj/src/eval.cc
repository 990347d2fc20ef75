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

#include "dprecourse/eval.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "dprecourse/status_macros.h"

namespace dprecourse {

absl::StatusOr<RocCurve> Roc(const AttackScoreSet& scores) {
  RETURN_IF_ERROR(scores.ValidateForMetrics());
  const int n = scores.size();
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return scores.scores[a] > scores.scores[b];
  });
  const double positives = scores.num_members();
  const double negatives = scores.num_nonmembers();

  RocCurve curve;
  curve.fpr.push_back(0.0);
  curve.tpr.push_back(0.0);
  curve.thresholds.push_back(std::numeric_limits<double>::infinity());
  long tp = 0;
  long fp = 0;
  for (int i = 0; i < n;) {
    const double threshold = scores.scores[order[i]];
    // Ties collapse into a single vertex.
    while (i < n && scores.scores[order[i]] == threshold) {
      if (scores.is_member[order[i]]) {
        ++tp;
      } else {
        ++fp;
      }
      ++i;
    }
    curve.fpr.push_back(fp / negatives);
    curve.tpr.push_back(tp / positives);
    curve.thresholds.push_back(threshold);
  }
  return curve;
}

double Auc(const RocCurve& curve) {
  double area = 0.0;
  for (int k = 1; k < curve.size(); ++k) {
    area += (curve.fpr[k] - curve.fpr[k - 1]) *
            (curve.tpr[k] + curve.tpr[k - 1]) / 2.0;
  }
  return area;
}

absl::StatusOr<double> BalancedAccuracy(const AttackScoreSet& scores) {
  ASSIGN_OR_RETURN(RocCurve curve, Roc(scores));
  double best = 0.5;
  for (int k = 0; k < curve.size(); ++k) {
    best = std::max(best, (curve.tpr[k] + 1.0 - curve.fpr[k]) / 2.0);
  }
  return best;
}

absl::StatusOr<double> TprAtFpr(const RocCurve& curve, double level) {
  if (!(level > 0.0 && level <= 1.0)) {
    return absl::InvalidArgumentError("FPR level must be in (0, 1]");
  }
  double best = 0.0;
  for (int k = 0; k < curve.size(); ++k) {
    if (curve.fpr[k] <= level) best = std::max(best, curve.tpr[k]);
  }
  return best;
}

std::vector<std::pair<double, double>> LogSpacedRoc(const RocCurve& curve,
                                                    int num_points) {
  std::vector<std::pair<double, double>> out;
  num_points = std::max(num_points, 2);
  for (int i = 0; i < num_points; ++i) {
    const double level =
        std::pow(10.0, -3.0 + 3.0 * i / static_cast<double>(num_points - 1));
    out.emplace_back(level, *TprAtFpr(curve, std::min(level, 1.0)));
  }
  return out;
}

absl::StatusOr<Histogram> CfdHistogram(std::span<const double> train,
                                       std::span<const double> test, int bins) {
  if (bins < 1) return absl::InvalidArgumentError("bins must be >= 1");
  if (train.empty() && test.empty()) {
    return absl::InvalidArgumentError("histogram needs at least one value");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (auto values : {train, test}) {
    for (double v : values) {
      if (!std::isfinite(v)) {
        return absl::InvalidArgumentError("histogram values must be finite");
      }
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  Histogram h;
  h.edges.resize(static_cast<size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) h.edges[b] = lo + (hi - lo) * b / bins;
  h.edges.back() = hi;
  auto fill = [&](std::span<const double> values, std::vector<long>& counts) {
    counts.assign(static_cast<size_t>(bins), 0);
    for (double v : values) {
      int b = static_cast<int>((v - lo) / (hi - lo) * bins);
      counts[static_cast<size_t>(std::clamp(b, 0, bins - 1))]++;
    }
  };
  fill(train, h.train_counts);
  fill(test, h.test_counts);
  return h;
}

absl::StatusOr<double> Wasserstein1(std::span<const double> a,
                                    std::span<const double> b) {
  if (a.empty() || b.empty()) {
    return absl::InvalidArgumentError("Wasserstein distance needs samples");
  }
  std::vector<double> xs(a.begin(), a.end());
  std::vector<double> ys(b.begin(), b.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  // Integrate |F_a - F_b| between consecutive pooled support points.
  const double na = xs.size();
  const double nb = ys.size();
  size_t i = 0;
  size_t j = 0;
  double total = 0.0;
  double prev = std::min(xs.front(), ys.front());
  while (i < xs.size() || j < ys.size()) {
    double next;
    if (j == ys.size() || (i < xs.size() && xs[i] <= ys[j])) {
      next = xs[i];
    } else {
      next = ys[j];
    }
    total += std::abs(i / na - j / nb) * (next - prev);
    while (i < xs.size() && xs[i] == next) ++i;
    while (j < ys.size() && ys[j] == next) ++j;
    prev = next;
  }
  return total;
}

absl::StatusOr<EvalReport> Evaluate(const AttackScoreSet& scores,
                                    const PrivacyBudget& budget,
                                    int histogram_bins) {
  EvalReport report;
  ASSIGN_OR_RETURN(report.roc, Roc(scores));
  report.auc = Auc(report.roc);
  ASSIGN_OR_RETURN(report.balanced_accuracy, BalancedAccuracy(scores));
  for (double level : kReportFprLevels) {
    ASSIGN_OR_RETURN(report.tpr_at[level], TprAtFpr(report.roc, level));
  }
  if (budget.mechanism == Mechanism::kLaplaceRecourse) {
    ASSIGN_OR_RETURN(double bound, BalancedAccuracyBound(budget.epsilon));
    report.ba_bound = bound;
    report.ba_bound_violated = report.balanced_accuracy > bound;
  }
  std::vector<double> members;
  std::vector<double> nonmembers;
  for (int i = 0; i < scores.size(); ++i) {
    (scores.is_member[i] ? members : nonmembers).push_back(scores.scores[i]);
  }
  ASSIGN_OR_RETURN(report.histogram,
                   CfdHistogram(members, nonmembers, histogram_bins));
  return report;
}

}  // namespace dprecourse
