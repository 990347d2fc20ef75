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

#include "dprecourse/attacks.h"

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "dprecourse/dataops.h"
#include "dprecourse/experiment.h"
#include "oracles.h"
#include "test_util.h"

namespace dprecourse {
namespace {

ShadowEnsemble EnsembleFrom(const std::vector<std::vector<double>>& rows) {
  ShadowEnsemble e;
  e.per_point_cfds.resize(static_cast<Eigen::Index>(rows.size()),
                          static_cast<Eigen::Index>(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows[i].size(); ++j) {
      e.per_point_cfds(static_cast<Eigen::Index>(i),
                       static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return e;
}

LrtOptions Options(VarianceMode mode, LrtTail tail = LrtTail::kUpper,
                   double floor = 0.0) {
  LrtOptions o;
  o.mode = mode;
  o.tail = tail;
  o.local_variance_floor = floor;
  return o;
}

TEST(CfdAttackTest, SeparatedCostsAndLaplaceDegeneration) {
  LinearModel m;
  m.weights = Eigen::Vector2d(1.0, 0.0);
  RowMatrix q(4, 2);
  q << 2, 0, -2, 1, 1, 0, -1, 5;
  const std::vector<bool> truth = {true, true, false, false};
  Rng rng(1);
  absl::StatusOr<AttackScoreSet> exact =
      CfdAttackScores(m, q, truth, RecourseOptions{}, PrivacyBudget{}, rng);
  ASSERT_OK(exact);
  EXPECT_EQ(exact->kind, AttackKind::kCfd);
  EXPECT_EQ(exact->scores, (std::vector<double>{2, 2, 1, 1}));
  absl::StatusOr<AttackScoreSet> lr = CfdAttackScores(
      m, q, truth, RecourseOptions{},
      PrivacyBudget{1e9, Mechanism::kLaplaceRecourse}, rng);
  ASSERT_OK(lr);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(lr->scores[i], exact->scores[i], 1e-6);
  EXPECT_FALSE(CfdAttackScores(m, RowMatrix(0, 2), {}, RecourseOptions{},
                               PrivacyBudget{}, rng)
                   .ok());
  EXPECT_FALSE(CfdAttackScores(m, q, {true}, RecourseOptions{},
                               PrivacyBudget{}, rng)
                   .ok());
}

TEST(LrtTest, SymmetricLogValuesExample) {
  const double e = std::exp(1.0);
  const ShadowEnsemble ens = EnsembleFrom({{1.0, e, e * e}});
  const double t0 = std::exp(1.0 + std::sqrt(2.0 / 3.0));
  absl::StatusOr<AttackScoreSet> local = LrtAttackScores(
      ens, std::vector<double>{t0}, {true}, Options(VarianceMode::kLocal));
  ASSERT_OK(local);
  EXPECT_NEAR(local->scores[0], 1.0, 1e-12);
  absl::StatusOr<AttackScoreSet> median = LrtAttackScores(
      ens, std::vector<double>{e}, {true}, Options(VarianceMode::kLocal));
  ASSERT_OK(median);
  EXPECT_NEAR(median->scores[0], 0.0, 1e-12);
  absl::StatusOr<AttackScoreSet> lower =
      LrtAttackScores(ens, std::vector<double>{t0}, {true},
                      Options(VarianceMode::kLocal, LrtTail::kLower));
  ASSERT_OK(lower);
  EXPECT_NEAR(lower->scores[0], -1.0, 1e-12);
}

TEST(LrtTest, LognormalCutoffExample) {
  const double q = oracles::NormalQuantile(0.95);
  EXPECT_NEAR(q, 1.6449, 1e-4);
  EXPECT_NEAR(std::exp(q), 5.180, 1e-3);
  // mu = 0, sigma = 1 from shadow distances exp(+1), exp(-1).
  const ShadowEnsemble ens = EnsembleFrom({{std::exp(1.0), std::exp(-1.0)}});
  for (LrtTail tail : {LrtTail::kUpper, LrtTail::kLower}) {
    absl::StatusOr<AttackScoreSet> s =
        LrtAttackScores(ens, std::vector<double>{6.0}, {false},
                        Options(VarianceMode::kLocal, tail));
    ASSERT_OK(s);
    absl::StatusOr<bool> member = LrtIsMember(s->scores[0], 0.05, tail);
    ASSERT_OK(member);
    // The literal lower-tail test calls t0 = 6 > 5.180 a non-member; the
    // upper-tail test calls it a member.
    EXPECT_EQ(*member, tail == LrtTail::kUpper);
    absl::StatusOr<AttackScoreSet> below =
        LrtAttackScores(ens, std::vector<double>{5.0}, {false},
                        Options(VarianceMode::kLocal, tail));
    EXPECT_EQ(*LrtIsMember(below->scores[0], 0.05, tail),
              tail == LrtTail::kLower);
  }
}

TEST(LrtTest, ZeroLocalVarianceErrorsUnlessFloored) {
  const ShadowEnsemble ens = EnsembleFrom({{2.0, 2.0, 2.0}, {1.0, 2.0, 3.0}});
  const std::vector<double> t = {2.0, 2.0};
  EXPECT_FALSE(
      LrtAttackScores(ens, t, {true, false}, Options(VarianceMode::kLocal)).ok());
  absl::StatusOr<AttackScoreSet> floored = LrtAttackScores(
      ens, t, {true, false},
      Options(VarianceMode::kLocal, LrtTail::kUpper, 1e-12));
  ASSERT_OK(floored);
  EXPECT_EQ(floored->scores[0], 0.0);
  EXPECT_OK(
      LrtAttackScores(ens, t, {true, false}, Options(VarianceMode::kGlobal))
          .status());
  const ShadowEnsemble flat = EnsembleFrom({{2.0, 2.0}, {3.0, 3.0}});
  absl::StatusOr<AttackScoreSet> global = LrtAttackScores(
      flat, std::vector<double>{2.0, 3.0}, {true, false},
      Options(VarianceMode::kGlobal));
  ASSERT_OK(global);
  EXPECT_EQ(global->scores[0], 0.0);
}

TEST(LrtTest, ShapeAndSignErrors) {
  const ShadowEnsemble one = EnsembleFrom({{1.0}, {2.0}});
  EXPECT_FALSE(LrtAttackScores(one, std::vector<double>{1, 2}, {true, false},
                               Options(VarianceMode::kLocal))
                   .ok());
  EXPECT_OK(LrtAttackScores(one, std::vector<double>{1, 2}, {true, false},
                            Options(VarianceMode::kGlobal))
                .status());
  const ShadowEnsemble single = EnsembleFrom({{1.0}});
  EXPECT_FALSE(LrtAttackScores(single, std::vector<double>{1}, {true},
                               Options(VarianceMode::kGlobal))
                   .ok());
  EXPECT_FALSE(LrtAttackScores(one, std::vector<double>{1}, {true},
                               Options(VarianceMode::kGlobal))
                   .ok());
  const ShadowEnsemble negative = EnsembleFrom({{-1.0, 1.0}});
  EXPECT_FALSE(LrtAttackScores(negative, std::vector<double>{1}, {true},
                               Options(VarianceMode::kGlobal))
                   .ok());
  EXPECT_FALSE(LrtIsMember(0.0, 0.0, LrtTail::kUpper).ok());
  EXPECT_FALSE(LrtIsMember(0.0, 1.0, LrtTail::kUpper).ok());
}

TEST(LrtTest, ZeroDistancesAreFloored) {
  const ShadowEnsemble ens = EnsembleFrom({{0.0, 1e-12, 1.0}});
  absl::StatusOr<AttackScoreSet> s = LrtAttackScores(
      ens, std::vector<double>{0.0}, {true}, Options(VarianceMode::kLocal));
  ASSERT_OK(s);
  EXPECT_TRUE(std::isfinite(s->scores[0]));
  EXPECT_LT(s->scores[0], 0.0);
}

std::vector<std::vector<double>> RandomCfds(std::mt19937_64& gen, int n, int k) {
  std::lognormal_distribution<double> dist(0.0, 0.7);
  std::vector<std::vector<double>> rows(static_cast<size_t>(n));
  for (auto& row : rows) {
    for (int j = 0; j < k; ++j) row.push_back(dist(gen));
  }
  return rows;
}

TEST(LrtTest, GlobalScoresInvariantToCommonRescaling) {
  std::mt19937_64 gen(3);
  const auto rows = RandomCfds(gen, 30, 5);
  std::vector<double> t0(30);
  std::lognormal_distribution<double> dist(0.0, 0.7);
  for (double& t : t0) t = dist(gen);
  std::vector<bool> truth(30);
  for (size_t i = 0; i < truth.size(); ++i) truth[i] = i % 2 == 0;
  const AttackScoreSet base = *LrtAttackScores(EnsembleFrom(rows), t0, truth,
                                               Options(VarianceMode::kGlobal));
  for (double c : {1e-3, 0.37, 12.0, 1e5}) {
    auto scaled_rows = rows;
    for (auto& row : scaled_rows) {
      for (double& v : row) v *= c;
    }
    std::vector<double> scaled_t = t0;
    for (double& t : scaled_t) t *= c;
    const AttackScoreSet scaled = *LrtAttackScores(
        EnsembleFrom(scaled_rows), scaled_t, truth, Options(VarianceMode::kGlobal));
    for (int i = 0; i < 30; ++i) {
      EXPECT_NEAR(scaled.scores[i], base.scores[i], 1e-9);
    }
  }
}

TEST(LrtTest, ThresholdingMatchesDirectQuantileTest) {
  std::mt19937_64 gen(2718);
  std::lognormal_distribution<double> target(0.2, 0.9);
  const std::vector<double> alphas = {0.001, 0.01, 0.05, 0.1, 0.25, 0.5, 0.9};
  int decisions = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const int n = 3 + inst % 7;
    const int k = 2 + inst % 5;
    const auto rows = RandomCfds(gen, n, k);
    std::vector<double> t0(static_cast<size_t>(n));
    for (double& t : t0) t = target(gen);
    const std::vector<bool> truth(static_cast<size_t>(n), true);
    for (VarianceMode mode : {VarianceMode::kGlobal, VarianceMode::kLocal}) {
      const auto fits =
          oracles::FitOutDistributions(rows, mode == VarianceMode::kGlobal);
      for (LrtTail tail : {LrtTail::kLower, LrtTail::kUpper}) {
        const AttackScoreSet s =
            *LrtAttackScores(EnsembleFrom(rows), t0, truth, Options(mode, tail));
        for (double alpha : alphas) {
          for (int i = 0; i < n; ++i) {
            const bool exceeds = oracles::ExceedsOutQuantile(t0[i], fits[i], alpha);
            // Lower tail: exceeding the cutoff means non-member.
            const bool expected = tail == LrtTail::kLower ? !exceeds : exceeds;
            EXPECT_EQ(*LrtIsMember(s.scores[i], alpha, tail), expected)
                << "instance " << inst << " point " << i << " alpha " << alpha;
            ++decisions;
          }
        }
      }
    }
  }
  EXPECT_GT(decisions, 10000);
}

TEST(LrtTailTest, NamesRoundTrip) {
  for (LrtTail t : {LrtTail::kUpper, LrtTail::kLower}) {
    EXPECT_EQ(*ParseLrtTail(LrtTailName(t)), t);
  }
  EXPECT_FALSE(ParseLrtTail("both").ok());
  for (AttackKind a :
       {AttackKind::kCfd, AttackKind::kLrtGlobal, AttackKind::kLrtLocal}) {
    EXPECT_EQ(*ParseAttack(AttackName(a)), a);
  }
  EXPECT_FALSE(ParseAttack("loss").ok());
}

struct SyntheticSplit {
  FeatureMatrix owner_train;
  FeatureMatrix owner_test;
  FeatureMatrix adversary;
};

SyntheticSplit MakeSplit(int d, int n_owner, int n_test, int n_adv,
                         uint64_t seed) {
  const int n = n_owner + n_test + n_adv;
  const FeatureMatrix raw = *GenerateSynthetic(d, n + n % 2, seed);
  const FeatureMatrix data = *Preprocess(raw, 0.95);
  const SplitSpec s = *Split(data.num_rows(), {n_owner, n_test, n_adv}, seed + 1);
  return {data.Select(s.owner_train), data.Select(s.owner_test),
          data.Select(s.adversary_pool)};
}

TEST(ShadowEnsembleTest, ShapeDeterminismAndErrors) {
  const SyntheticSplit s = MakeSplit(10, 100, 50, 200, 4);
  PipelineConfig pipe;
  Rng a(9), b(9);
  absl::StatusOr<ShadowEnsemble> e1 =
      TrainShadowEnsemble(s.adversary, s.owner_test.rows, pipe, 1, 50, a);
  ASSERT_OK(e1);
  EXPECT_EQ(e1->per_point_cfds.cols(), 1);
  EXPECT_EQ(e1->per_point_cfds.rows(), 50);
  absl::StatusOr<ShadowEnsemble> e2 =
      TrainShadowEnsemble(s.adversary, s.owner_test.rows, pipe, 1, 50, b);
  ASSERT_OK(e2);
  EXPECT_EQ(e1->per_point_cfds, e2->per_point_cfds);
  EXPECT_FALSE(
      TrainShadowEnsemble(s.adversary, s.owner_test.rows, pipe, 2, 201, a).ok());
  EXPECT_FALSE(
      TrainShadowEnsemble(s.adversary, s.owner_test.rows, pipe, 0, 50, a).ok());
}

TEST(ShadowEnsembleTest, FiveShadowsApproximateFiftyShadowReference) {
  const SyntheticSplit s = MakeSplit(20, 100, 200, 2000, 12);
  PipelineConfig pipe;
  Rng rng(31);
  const ShadowEnsemble reference = *TrainShadowEnsemble(
      s.adversary, s.owner_test.rows, pipe, 50, 100, rng);
  Rng other(32);
  const ShadowEnsemble small = *TrainShadowEnsemble(
      s.adversary, s.owner_test.rows, pipe, 5, 100, other);
  const Eigen::MatrixXd ref_logs = reference.per_point_cfds.array().log();
  const Eigen::MatrixXd small_logs = small.per_point_cfds.array().log();
  const Eigen::VectorXd mu_ref = ref_logs.rowwise().mean();
  const Eigen::VectorXd mu_small = small_logs.rowwise().mean();
  const double sigma_ref =
      std::sqrt((ref_logs.colwise() - mu_ref).array().square().mean());
  EXPECT_LE(std::abs(mu_small.mean() - mu_ref.mean()), 0.2 * sigma_ref);
  const double rms = std::sqrt((mu_small - mu_ref).array().square().mean());
  // Five draws put the mean's standard error near sigma / sqrt(5).
  EXPECT_LE(rms, 0.75 * sigma_ref);
}

ExperimentSettings SmallSettings(int k, int shadows) {
  ExperimentSettings cfg;
  cfg.n_ensemble = k;
  cfg.n_shadow = shadows;
  return cfg;
}

TEST(ExperimentTest, SingleTargetModel) {
  const SyntheticSplit s = MakeSplit(50, 40, 40, 200, 5);
  absl::StatusOr<ExperimentResult> r = RunAttackExperiment(
      s.owner_train, s.owner_test, s.adversary, SmallSettings(1, 3), 77);
  ASSERT_OK(r);
  EXPECT_EQ(r->per_model_train_size, 40);
  ASSERT_EQ(r->scores.size(), 3u);
  for (const auto& [kind, set] : r->scores) {
    EXPECT_EQ(set.kind, kind);
    EXPECT_EQ(set.num_members(), 40);
    EXPECT_EQ(set.num_nonmembers(), 40);
  }
  EXPECT_EQ(r->target_cfds.scores, r->scores.at(AttackKind::kCfd).scores);
}

TEST(ExperimentTest, MembersSitFartherFromBoundaryInInterpolationRegime) {
  const SyntheticSplit s = MakeSplit(200, 500, 500, 1000, 6);
  absl::StatusOr<ExperimentResult> r = RunAttackExperiment(
      s.owner_train, s.owner_test, s.adversary, SmallSettings(5, 3), 3);
  ASSERT_OK(r);
  EXPECT_EQ(r->train_accuracy, 1.0);
  double member_sum = 0, nonmember_sum = 0;
  const AttackScoreSet& cfd = r->target_cfds;
  for (int i = 0; i < cfd.size(); ++i) {
    (cfd.is_member[i] ? member_sum : nonmember_sum) += cfd.scores[i];
  }
  EXPECT_GT(member_sum / cfd.num_members(),
            nonmember_sum / cfd.num_nonmembers());
}

TEST(ExperimentTest, BitReproducible) {
  const SyntheticSplit s = MakeSplit(30, 60, 60, 200, 8);
  ExperimentSettings cfg = SmallSettings(3, 3);
  cfg.pipeline.budget = PrivacyBudget{1.0, Mechanism::kLaplaceRecourse};
  const ExperimentResult a =
      *RunAttackExperiment(s.owner_train, s.owner_test, s.adversary, cfg, 21);
  const ExperimentResult b =
      *RunAttackExperiment(s.owner_train, s.owner_test, s.adversary, cfg, 21);
  for (const auto& [kind, set] : a.scores) {
    EXPECT_EQ(set.scores, b.scores.at(kind).scores);
    EXPECT_EQ(set.is_member, b.scores.at(kind).is_member);
  }
  const ExperimentResult c =
      *RunAttackExperiment(s.owner_train, s.owner_test, s.adversary, cfg, 22);
  EXPECT_NE(a.scores.at(AttackKind::kCfd).scores,
            c.scores.at(AttackKind::kCfd).scores);
}

TEST(ExperimentTest, InsufficientDataErrors) {
  const SyntheticSplit s = MakeSplit(5, 10, 4, 50, 1);
  EXPECT_FALSE(RunAttackExperiment(s.owner_train, s.owner_test, s.adversary,
                                   SmallSettings(6, 2), 1)
                   .ok());
  EXPECT_FALSE(RunAttackExperiment(s.owner_train, s.owner_test, s.adversary,
                                   SmallSettings(2, 2), 1)
                   .ok());
  EXPECT_FALSE(RunAttackExperiment(s.owner_train, s.owner_test, s.adversary,
                                   SmallSettings(0, 2), 1)
                   .ok());
}

}  // namespace
}  // namespace dprecourse
