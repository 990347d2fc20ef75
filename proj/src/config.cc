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

#include "dprecourse/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "dprecourse/status_macros.h"

namespace dprecourse {
namespace {

absl::Status BadValue(absl::string_view key, absl::string_view value) {
  return absl::InvalidArgumentError(
      absl::StrCat("config: bad value '", value, "' for key '", key, "'"));
}

absl::Status ParseInt(absl::string_view key, absl::string_view value, int* out) {
  if (!absl::SimpleAtoi(value, out)) return BadValue(key, value);
  return absl::OkStatus();
}

absl::Status ParseReal(absl::string_view key, absl::string_view value,
                       double* out) {
  if (!absl::SimpleAtod(value, out) || !std::isfinite(*out)) {
    return BadValue(key, value);
  }
  return absl::OkStatus();
}

std::string Real(double v) { return absl::StrFormat("%.17g", v); }

}  // namespace

PrivacyBudget ExperimentConfig::budget() const {
  PrivacyBudget b;
  b.mechanism = mechanism;
  b.epsilon = epsilon.value_or(0.0);
  return b;
}

absl::Status ExperimentConfig::Validate() const {
  if (mechanism == Mechanism::kNone && epsilon.has_value()) {
    return absl::InvalidArgumentError(
        "config: epsilon must not be set for the baseline mechanism");
  }
  if (mechanism != Mechanism::kNone && !epsilon.has_value()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "config: mechanism ", std::string(MechanismName(mechanism)),
        " requires epsilon"));
  }
  RETURN_IF_ERROR(budget().Validate());
  RETURN_IF_ERROR(train.Validate());
  if (dataset.kind == DatasetConfig::Kind::kSynthetic && dataset.d < 1) {
    return absl::InvalidArgumentError("config: d must be >= 1");
  }
  if (dataset.kind == DatasetConfig::Kind::kCsv &&
      (dataset.csv_path.empty() || dataset.label_column.empty() ||
       dataset.positive_label.empty())) {
    return absl::InvalidArgumentError(
        "config: csv datasets need csv_path, label_column and positive_label");
  }
  if (n_owner < 1 || n_test < 0 || n_adversary < 1 || n_shadow < 1 ||
      n_ensemble < 1 || shadow_train_size < 0 || hist_bins < 1) {
    return absl::InvalidArgumentError("config: counts must be positive");
  }
  if (n_owner / n_ensemble < 2) {
    return absl::InvalidArgumentError(
        "config: n_owner must give every ensemble model at least 2 rows");
  }
  if (attacks.empty()) return absl::InvalidArgumentError("config: no attacks");
  if (!(corr_threshold > 0.0 && corr_threshold <= 1.0)) {
    return absl::InvalidArgumentError("config: corr_threshold must be in (0,1]");
  }
  if (!(clamp > 0.0 && clamp < 0.5)) {
    return absl::InvalidArgumentError("config: clamp must be in (0, 0.5)");
  }
  if (local_variance_floor < 0.0) {
    return absl::InvalidArgumentError("config: local_variance_floor < 0");
  }
  if (output_dir.empty()) {
    return absl::InvalidArgumentError("config: output_dir is empty");
  }
  return absl::OkStatus();
}

absl::StatusOr<ExperimentConfig> ParseConfig(std::string_view text) {
  ExperimentConfig c;
  std::set<std::string> seen;
  int line_no = 0;
  for (absl::string_view raw :
       absl::StrSplit(absl::string_view(text.data(), text.size()), '\n')) {
    ++line_no;
    absl::string_view line = raw.substr(0, raw.find('#'));
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("config line ", line_no, ": expected key = value"));
    }
    const std::string key(absl::StripAsciiWhitespace(line.substr(0, eq)));
    const std::string value(absl::StripAsciiWhitespace(line.substr(eq + 1)));
    if (!seen.insert(key).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("config line ", line_no, ": duplicate key '", key, "'"));
    }

    if (key == "dataset") {
      if (value == "synthetic") {
        c.dataset.kind = DatasetConfig::Kind::kSynthetic;
      } else if (value == "csv") {
        c.dataset.kind = DatasetConfig::Kind::kCsv;
      } else {
        return BadValue(key, value);
      }
    } else if (key == "d") {
      RETURN_IF_ERROR(ParseInt(key, value, &c.dataset.d));
    } else if (key == "csv_path") {
      c.dataset.csv_path = value;
    } else if (key == "label_column") {
      c.dataset.label_column = value;
    } else if (key == "positive_label") {
      c.dataset.positive_label = value;
    } else if (key == "n_owner") {
      RETURN_IF_ERROR(ParseInt(key, value, &c.n_owner));
    } else if (key == "n_test") {
      RETURN_IF_ERROR(ParseInt(key, value, &c.n_test));
    } else if (key == "n_adversary") {
      RETURN_IF_ERROR(ParseInt(key, value, &c.n_adversary));
    } else if (key == "mechanism") {
      absl::StatusOr<Mechanism> m = ParseMechanism(value);
      if (!m.ok()) return BadValue(key, value);
      c.mechanism = *m;
    } else if (key == "epsilon") {
      double eps;
      RETURN_IF_ERROR(ParseReal(key, value, &eps));
      c.epsilon = eps;
    } else if (key == "attacks") {
      c.attacks.clear();
      for (absl::string_view name : absl::StrSplit(value, ',')) {
        name = absl::StripAsciiWhitespace(name);
        absl::StatusOr<AttackKind> a =
            ParseAttack(std::string_view(name.data(), name.size()));
        if (!a.ok()) return BadValue(key, value);
        c.attacks.push_back(*a);
      }
    } else if (key == "n_shadow") {
      RETURN_IF_ERROR(ParseInt(key, value, &c.n_shadow));
    } else if (key == "n_ensemble") {
      RETURN_IF_ERROR(ParseInt(key, value, &c.n_ensemble));
    } else if (key == "shadow_train_size") {
      RETURN_IF_ERROR(ParseInt(key, value, &c.shadow_train_size));
    } else if (key == "lambda") {
      RETURN_IF_ERROR(ParseReal(key, value, &c.train.lambda));
    } else if (key == "max_iters") {
      RETURN_IF_ERROR(ParseInt(key, value, &c.train.max_iters));
    } else if (key == "step_size") {
      if (value == "auto") {
        c.train.step_size.reset();
      } else {
        double step;
        RETURN_IF_ERROR(ParseReal(key, value, &step));
        c.train.step_size = step;
      }
    } else if (key == "tol") {
      RETURN_IF_ERROR(ParseReal(key, value, &c.train.tol));
    } else if (key == "corr_threshold") {
      RETURN_IF_ERROR(ParseReal(key, value, &c.corr_threshold));
    } else if (key == "target_score") {
      RETURN_IF_ERROR(ParseReal(key, value, &c.target_score));
    } else if (key == "clamp") {
      RETURN_IF_ERROR(ParseReal(key, value, &c.clamp));
    } else if (key == "shadow_mirror_dp") {
      if (!absl::SimpleAtob(value, &c.shadow_mirror_dp)) {
        return BadValue(key, value);
      }
    } else if (key == "local_variance_floor") {
      RETURN_IF_ERROR(ParseReal(key, value, &c.local_variance_floor));
    } else if (key == "lrt_tail") {
      absl::StatusOr<LrtTail> tail = ParseLrtTail(value);
      if (!tail.ok()) return BadValue(key, value);
      c.lrt_tail = *tail;
    } else if (key == "hist_bins") {
      RETURN_IF_ERROR(ParseInt(key, value, &c.hist_bins));
    } else if (key == "seed") {
      if (!absl::SimpleAtoi(value, &c.seed)) return BadValue(key, value);
    } else if (key == "output_dir") {
      c.output_dir = value;
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("config line ", line_no, ": unknown key '", key, "'"));
    }
  }
  RETURN_IF_ERROR(c.Validate());
  return c;
}

absl::StatusOr<ExperimentConfig> LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::InvalidArgumentError(absl::StrCat("cannot read config ", path));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str());
}

std::string ConfigToText(const ExperimentConfig& c) {
  std::vector<std::string> attacks;
  for (AttackKind a : c.attacks) attacks.emplace_back(AttackName(a));
  std::string out;
  auto put = [&out](absl::string_view key, absl::string_view value) {
    absl::StrAppend(&out, key, " = ", value, "\n");
  };
  if (c.dataset.kind == DatasetConfig::Kind::kSynthetic) {
    put("dataset", "synthetic");
    put("d", absl::StrCat(c.dataset.d));
  } else {
    put("dataset", "csv");
    put("csv_path", c.dataset.csv_path);
    put("label_column", c.dataset.label_column);
    put("positive_label", c.dataset.positive_label);
  }
  put("n_owner", absl::StrCat(c.n_owner));
  put("n_test", absl::StrCat(c.n_test));
  put("n_adversary", absl::StrCat(c.n_adversary));
  put("mechanism", std::string(MechanismName(c.mechanism)));
  if (c.epsilon.has_value()) put("epsilon", Real(*c.epsilon));
  put("attacks", absl::StrJoin(attacks, ","));
  put("n_shadow", absl::StrCat(c.n_shadow));
  put("n_ensemble", absl::StrCat(c.n_ensemble));
  put("shadow_train_size", absl::StrCat(c.shadow_train_size));
  put("lambda", Real(c.train.lambda));
  put("max_iters", absl::StrCat(c.train.max_iters));
  put("step_size",
      c.train.step_size.has_value() ? Real(*c.train.step_size) : "auto");
  put("tol", Real(c.train.tol));
  put("corr_threshold", Real(c.corr_threshold));
  put("target_score", Real(c.target_score));
  put("clamp", Real(c.clamp));
  put("shadow_mirror_dp", c.shadow_mirror_dp ? "true" : "false");
  put("local_variance_floor", Real(c.local_variance_floor));
  put("lrt_tail", std::string(LrtTailName(c.lrt_tail)));
  put("hist_bins", absl::StrCat(c.hist_bins));
  put("seed", absl::StrCat(c.seed));
  put("output_dir", c.output_dir);
  return out;
}

absl::StatusOr<std::vector<double>> ParseEpsilonList(std::string_view text) {
  const absl::string_view all =
      absl::StripAsciiWhitespace(absl::string_view(text.data(), text.size()));
  if (all.empty()) return absl::InvalidArgumentError("epsilon list is empty");
  std::vector<double> out;
  for (absl::string_view item : absl::StrSplit(all, ',')) {
    double eps;
    item = absl::StripAsciiWhitespace(item);
    if (!absl::SimpleAtod(item, &eps) || !(eps > 0.0) || !std::isfinite(eps)) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad epsilon '", item, "'"));
    }
    out.push_back(eps);
  }
  return out;
}

}  // namespace dprecourse
