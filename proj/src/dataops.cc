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

#include "dprecourse/dataops.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "absl/strings/ascii.h"
#include "dprecourse/rng.h"

namespace dprecourse {

absl::Status FeatureMatrix::Validate() const {
  if (num_features() < 1) {
    return absl::InvalidArgumentError("dataset needs at least one feature");
  }
  if (num_rows() < 2) {
    return absl::InvalidArgumentError("dataset needs at least two rows");
  }
  if (static_cast<int>(labels.size()) != num_rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat("label count ", labels.size(), " != row count ",
                     num_rows()));
  }
  if (static_cast<int>(feature_names.size()) != num_features()) {
    return absl::InvalidArgumentError("feature name count != column count");
  }
  for (int y : labels) {
    if (y != 0 && y != 1) {
      return absl::InvalidArgumentError(absl::StrCat("label ", y,
                                                     " is not in {0,1}"));
    }
  }
  if (!rows.allFinite()) {
    return absl::InvalidArgumentError("dataset has non-finite entries");
  }
  return absl::OkStatus();
}

FeatureMatrix FeatureMatrix::Select(std::span<const int> indices) const {
  FeatureMatrix out;
  out.rows.resize(static_cast<Eigen::Index>(indices.size()), rows.cols());
  out.labels.reserve(indices.size());
  for (size_t i = 0; i < indices.size(); ++i) {
    out.rows.row(static_cast<Eigen::Index>(i)) = rows.row(indices[i]);
    out.labels.push_back(labels[indices[i]]);
  }
  out.feature_names = feature_names;
  return out;
}

absl::StatusOr<FeatureMatrix> GenerateSynthetic(int d, int n, uint64_t seed) {
  if (d < 1) return absl::InvalidArgumentError("d must be >= 1");
  if (n < 2 || n % 2 != 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("n must be even and >= 2, got ", n));
  }
  Rng rng(seed, "synthetic");
  auto draw_vertex = [&] {
    Eigen::VectorXd v(d);
    for (int j = 0; j < d; ++j) v(j) = (rng.engine()() >> 63) ? 1.0 : 0.0;
    return v;
  };
  const Eigen::VectorXd v0 = draw_vertex();
  Eigen::VectorXd v1 = draw_vertex();
  while (v1 == v0) v1 = draw_vertex();

  FeatureMatrix out;
  out.rows.resize(n, d);
  out.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    const int label = i < n / 2 ? 0 : 1;
    const Eigen::VectorXd& center = label == 0 ? v0 : v1;
    for (int j = 0; j < d; ++j) out.rows(i, j) = center(j) + rng.StandardNormal();
    out.labels[i] = label;
  }
  out.feature_names.reserve(d);
  for (int j = 0; j < d; ++j) out.feature_names.push_back(absl::StrCat("x", j));
  return out;
}

namespace {

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> cells;
  for (absl::string_view cell : absl::StrSplit(
           absl::string_view(line.data(), line.size()), ',')) {
    cell = absl::StripAsciiWhitespace(cell);
    if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') {
      cell = cell.substr(1, cell.size() - 2);
    }
    cells.emplace_back(cell);
  }
  return cells;
}

}  // namespace

absl::StatusOr<FeatureMatrix> LoadCsv(const std::string& path,
                                      const std::string& label_column,
                                      const std::string& positive_label) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (!absl::StripAsciiWhitespace(line).empty()) {
      header = SplitCsvLine(line);
      break;
    }
  }
  if (header.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(path, " is empty"));
  }
  const auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end()) {
    return absl::InvalidArgumentError(
        absl::StrCat("label column '", label_column, "' not in header"));
  }
  const size_t label_idx = static_cast<size_t>(label_it - header.begin());
  const int d = static_cast<int>(header.size()) - 1;
  if (d < 1) return absl::InvalidArgumentError("no feature columns");

  std::vector<double> values;
  std::vector<int> labels;
  std::set<std::string> raw_labels;
  while (std::getline(in, line)) {
    if (absl::StripAsciiWhitespace(line).empty()) continue;
    const std::vector<std::string> cells = SplitCsvLine(line);
    if (cells.size() != header.size()) continue;
    std::vector<double> row;
    row.reserve(d);
    bool usable = true;
    for (size_t c = 0; c < cells.size() && usable; ++c) {
      if (c == label_idx) continue;
      double v;
      usable = absl::SimpleAtod(cells[c], &v) && std::isfinite(v);
      row.push_back(v);
    }
    if (!usable) continue;
    raw_labels.insert(cells[label_idx]);
    if (raw_labels.size() > 2) {
      return absl::InvalidArgumentError(absl::StrCat(
          "label column '", label_column, "' has more than two values"));
    }
    values.insert(values.end(), row.begin(), row.end());
    labels.push_back(cells[label_idx] == positive_label ? 1 : 0);
  }
  if (labels.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(path, " has no usable rows"));
  }

  FeatureMatrix out;
  out.rows = Eigen::Map<RowMatrix>(values.data(),
                                   static_cast<Eigen::Index>(labels.size()), d);
  out.labels = std::move(labels);
  for (size_t c = 0; c < header.size(); ++c) {
    if (c != label_idx) out.feature_names.push_back(header[c]);
  }
  return out;
}

absl::StatusOr<FeatureMatrix> Preprocess(const FeatureMatrix& data,
                                         double corr_threshold) {
  if (!(corr_threshold > 0.0 && corr_threshold <= 1.0)) {
    return absl::InvalidArgumentError("corr_threshold must be in (0, 1]");
  }
  if (data.num_rows() < 2) {
    return absl::InvalidArgumentError("preprocess needs at least two rows");
  }
  const int d = data.num_features();
  const double n = data.num_rows();
  const Eigen::RowVectorXd mean = data.rows.colwise().mean();
  // Column-major, centered, and scaled to unit l2 norm: Pearson correlation
  // is then a plain dot product.
  Eigen::MatrixXd unit = data.rows.rowwise() - mean;
  std::vector<double> sd(static_cast<size_t>(d));
  std::vector<bool> constant(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    const double norm = unit.col(j).norm();
    const double scale = std::max(1.0, std::abs(mean(j)));
    constant[j] = !(norm > 1e-12 * scale * std::sqrt(n));
    sd[j] = norm / std::sqrt(n);
    if (!constant[j]) unit.col(j) /= norm;
  }

  // Greedy keep-first in column order. Correlations against all columns are
  // formed one block of candidates at a time.
  constexpr int kBlock = 256;
  std::vector<int> kept;
  for (int j0 = 0; j0 < d; j0 += kBlock) {
    const int width = std::min(kBlock, d - j0);
    const Eigen::MatrixXd corr =
        unit.transpose() * unit.middleCols(j0, width);  // d x width
    for (int b = 0; b < width; ++b) {
      const int j = j0 + b;
      // Zero-variance columns are dropped and never act as a kept reference.
      if (constant[j]) continue;
      bool collinear = false;
      for (int k : kept) {
        if (std::abs(corr(k, b)) > corr_threshold) {
          collinear = true;
          break;
        }
      }
      if (!collinear) kept.push_back(j);
    }
  }
  if (kept.empty()) {
    return absl::InvalidArgumentError("preprocessing dropped every feature");
  }

  FeatureMatrix out;
  out.rows.resize(data.num_rows(), static_cast<Eigen::Index>(kept.size()));
  out.labels = data.labels;
  for (size_t c = 0; c < kept.size(); ++c) {
    const int j = kept[c];
    // Standardize (population SD), then rescale to unit l2 norm.
    Eigen::VectorXd col = (data.rows.col(j).array() - mean(j)) / sd[j];
    col /= col.norm();
    out.rows.col(static_cast<Eigen::Index>(c)) = col;
    out.feature_names.push_back(data.feature_names[j]);
  }
  return out;
}

absl::StatusOr<SplitSpec> Split(int n, const SplitSizes& sizes, uint64_t seed) {
  if (sizes.owner_train < 0 || sizes.owner_test < 0 ||
      sizes.adversary_pool < 0) {
    return absl::InvalidArgumentError("split sizes must be nonnegative");
  }
  const long total = static_cast<long>(sizes.owner_train) + sizes.owner_test +
                     sizes.adversary_pool;
  if (total > n) {
    return absl::InvalidArgumentError(
        absl::StrCat("split sizes sum to ", total, " but only ", n, " rows"));
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed, "split");
  std::shuffle(perm.begin(), perm.end(), rng.engine());

  SplitSpec out;
  out.seed = seed;
  auto it = perm.begin();
  out.owner_train.assign(it, it + sizes.owner_train);
  it += sizes.owner_train;
  out.owner_test.assign(it, it + sizes.owner_test);
  it += sizes.owner_test;
  out.adversary_pool.assign(it, it + sizes.adversary_pool);
  return out;
}

}  // namespace dprecourse
