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

#ifndef DPRECOURSE_DATAOPS_H_
#define DPRECOURSE_DATAOPS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dprecourse {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Row-major numeric dataset with binary labels.
struct FeatureMatrix {
  RowMatrix rows;           // n x d
  std::vector<int> labels;  // length n, each 0 or 1
  std::vector<std::string> feature_names;  // length d

  int num_rows() const { return static_cast<int>(rows.rows()); }
  int num_features() const { return static_cast<int>(rows.cols()); }

  // Checks shape agreement, binary labels, finite entries, d >= 1, n >= 2.
  absl::Status Validate() const;

  // Copies the listed rows, in order. Indices must be in range.
  FeatureMatrix Select(std::span<const int> indices) const;
};

struct SplitSizes {
  int owner_train = 0;
  int owner_test = 0;
  int adversary_pool = 0;
};

// Pairwise-disjoint index sets over the rows of one dataset.
struct SplitSpec {
  std::vector<int> owner_train;
  std::vector<int> owner_test;
  std::vector<int> adversary_pool;
  uint64_t seed = 0;
};

// Two Gaussian clusters with identity covariance, centered on two distinct
// hypercube vertices drawn uniformly from {0,1}^d. Rows [0, n/2) carry label
// 0 and rows [n/2, n) label 1. n must be even and at least 2.
absl::StatusOr<FeatureMatrix> GenerateSynthetic(int d, int n, uint64_t seed);

// Reads a comma-delimited file with a header row. Every column other than
// label_column becomes a feature; the label is 1 exactly when the cell equals
// positive_label. Rows with a non-numeric feature cell are skipped.
absl::StatusOr<FeatureMatrix> LoadCsv(const std::string& path,
                                      const std::string& label_column,
                                      const std::string& positive_label);

// Greedy keep-first multicollinearity filter (|pearson| > corr_threshold
// against any kept column drops the candidate), then zero-mean unit
// population variance, then unit l2 norm per column. Constant columns are
// dropped.
absl::StatusOr<FeatureMatrix> Preprocess(const FeatureMatrix& data,
                                         double corr_threshold);

// Uniform random disjoint split of row indices [0, n). Sizes may sum to less
// than n; leftover rows are unused.
absl::StatusOr<SplitSpec> Split(int n, const SplitSizes& sizes, uint64_t seed);

}  // namespace dprecourse

#endif  // DPRECOURSE_DATAOPS_H_
