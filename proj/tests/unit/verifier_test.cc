/*
 * Copyright 2026 The fairverify Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fairverify/verifier.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fairverify/error.h"
#include "fairverify/report.h"

namespace fairverify {
namespace {

FairnessProblem Single(const std::string& spec, const std::string& model) {
  const PopulationModel m = ParseModel(model);
  return FairnessProblem{
      ParseSpec(spec),
      {{"z", SampledVariable{m, Predicate(), std::nullopt,
                             std::make_shared<FeatureClassifier>("z", true)}}},
      0.0};
}

FairnessProblem JobParity(double c) {
  const PopulationModel m = ParseModel(R"(
    is_male ~ bernoulli(0.5)
    col_rank ~ normal(25, 10)
    if is_male { years_exp ~ normal(15, 5) } else { years_exp ~ normal(10, 5) }
    return is_male, col_rank, years_exp
  )");
  const ClassifierPtr tree = ParseClassifierJson(R"({"type":"tree","root":{
      "feature":"col_rank","threshold":5,"le":{"leaf":1},
      "gt":{"feature":"years_exp","threshold":5,"le":{"leaf":0},"gt":{"leaf":1}}}})");
  return BuildDemographicParity(c, m.CompilePredicate("is_male == 1"),
                                m.CompilePredicate("is_male == 0"), m, tree);
}

std::string WithoutWallTime(Verdict v) {
  v.wall_seconds = 0;
  return VerdictToJson(v);
}

TEST(LeafMass, SumsToDelta) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20000; ++i) {
    const double delta =
        std::pow(10.0, -std::uniform_real_distribution<double>(0.5, 12)(rng));
    const std::size_t m = 1 + rng() % 64;
    const FailureMass z = LeafMass(delta, m);
    FailureMass gamma;
    for (std::size_t k = 0; k < m; ++k) gamma = gamma + z;
    ASSERT_EQ(gamma.value(), delta) << delta << " " << m;
    // The double used for the bound never exceeds the leaf mass.
    const double d = LeafDelta(delta, m);
    EXPECT_TRUE(d < z.hi() || (d == z.hi() && z.lo() >= 0.0));
    EXPECT_LE(std::fma(static_cast<double>(m), d, -delta), 0.0);
  }
}

TEST(Verify, ClearlyFair) {
  VerifierConfig config;
  config.delta = 0.01;
  const Verdict v = Verify(Single("mu(z) >= 0.5", "z ~ bernoulli(0.9); return z"),
                           config);
  EXPECT_EQ(v.answer, Answer::kFair);
  EXPECT_EQ(v.reason, UndecidedReason::kNone);
  ASSERT_TRUE(v.gamma.has_value());
  EXPECT_LE(*v.gamma, 0.01);
  EXPECT_EQ(v.delta_weight, 1u);
  EXPECT_EQ(v.variables.size(), 1u);
  EXPECT_EQ(v.variables[0].n, v.iterations);
  EXPECT_EQ(v.variables[0].accepted, v.variables[0].n);
}

TEST(Verify, RepeatedRunsRarelyWrong) {
  const FairnessProblem p = Single("mu(z) >= 0.5", "z ~ bernoulli(0.9); return z");
  int wrong = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    VerifierConfig config;
    config.delta = 0.01;
    config.seed = seed;
    if (Verify(p, config).answer != Answer::kFair) ++wrong;
  }
  EXPECT_LE(wrong, 5 + 3 * std::sqrt(500 * 0.01 * 0.99));
}

TEST(Verify, ClearlyUnfair) {
  VerifierConfig config;
  const Verdict v = Verify(Single("mu(z) >= 0.5", "z ~ bernoulli(0.2); return z"),
                           config);
  EXPECT_EQ(v.answer, Answer::kUnfair);
}

TEST(Verify, JobExampleIsFair) {
  VerifierConfig config;
  config.delta = 1e-5;
  const Verdict v = Verify(JobParity(0.2), config);
  EXPECT_EQ(v.answer, Answer::kFair);
  EXPECT_EQ(v.delta_weight, 2u);
  EXPECT_EQ(*v.gamma, 1e-5);
}

TEST(Verify, IllDefinedHitsSampleCap) {
  VerifierConfig config;
  config.max_samples = 50'000;
  config.batch_size = 1000;
  const Verdict v =
      Verify(Single("mu(z) - 0.5 >= 0", "z ~ bernoulli(0.5); return z"), config);
  EXPECT_EQ(v.answer, Answer::kUndecided);
  EXPECT_EQ(v.reason, UndecidedReason::kSampleCap);
  EXPECT_FALSE(v.gamma.has_value());
  EXPECT_EQ(v.variables[0].n, 50'000u);
}

TEST(Verify, ZeroDenominatorHitsSampleCap) {
  const PopulationModel m = ParseModel(R"(
    g ~ bernoulli(0.5)
    y = g == 0
    return g, y
  )");
  const FairnessProblem p = BuildDemographicParity(
      0.2, m.CompilePredicate("g == 1"), m.CompilePredicate("g == 0"), m,
      std::make_shared<FeatureClassifier>("y", true));
  VerifierConfig config;
  config.max_samples = 20'000;
  config.batch_size = 500;
  const Verdict v = Verify(p, config);
  EXPECT_EQ(v.answer, Answer::kUndecided);
  EXPECT_EQ(v.reason, UndecidedReason::kSampleCap);
}

TEST(Verify, Timeout) {
  VerifierConfig config;
  config.max_samples = 0;
  config.timeout_seconds = 0.2;
  config.batch_size = 100;
  const Verdict v =
      Verify(Single("mu(z) - 0.5 >= 0", "z ~ bernoulli(0.5); return z"), config);
  EXPECT_EQ(v.answer, Answer::kUndecided);
  EXPECT_EQ(v.reason, UndecidedReason::kTimeout);
  EXPECT_LT(v.wall_seconds, 5.0);
}

TEST(Verify, RejectionExhausted) {
  const PopulationModel m = ParseModel("z ~ bernoulli(0.5); return z");
  FairnessProblem p{
      ParseSpec("mu(z) >= 0.5"),
      {{"z", SampledVariable{m, m.CompilePredicate("z == 2"), std::nullopt,
                             std::make_shared<FeatureClassifier>("z")}}},
      0};
  VerifierConfig config;
  config.rejection_max_attempts = 100;
  const Verdict v = Verify(p, config);
  EXPECT_EQ(v.answer, Answer::kUndecided);
  EXPECT_EQ(v.reason, UndecidedReason::kRejectionExhausted);
  EXPECT_EQ(v.variables[0].attempts, 100u);
}

TEST(Verify, ConstantSpecDecidesImmediately) {
  const Verdict v = Verify(FairnessProblem{ParseSpec("1 >= 0.5"), {}, 0}, {});
  EXPECT_EQ(v.answer, Answer::kFair);
  EXPECT_EQ(*v.gamma, 0.0);
  EXPECT_EQ(v.total_samples(), 0u);
  const Verdict w = Verify(FairnessProblem{ParseSpec("0.2 >= 0.5"), {}, 0}, {});
  EXPECT_EQ(w.answer, Answer::kUnfair);
}

TEST(Verify, Deterministic) {
  const FairnessProblem p = JobParity(0.2);
  VerifierConfig config;
  config.seed = 42;
  EXPECT_EQ(WithoutWallTime(Verify(p, config)),
            WithoutWallTime(Verify(p, config)));
  config.seed = 43;
  const Verdict other = Verify(p, config);
  EXPECT_EQ(other.answer, Answer::kFair);
}

TEST(Verify, WorkerCountDoesNotChangeVerdict) {
  const FairnessProblem p = JobParity(0.12);
  VerifierConfig config;
  config.batch_size = 4096;
  config.delta = 1e-8;
  config.seed = 5;
  const std::string one = WithoutWallTime(Verify(p, config));
  for (unsigned workers : {2u, 3u, 8u}) {
    config.workers = workers;
    EXPECT_EQ(WithoutWallTime(Verify(p, config)), one) << workers;
  }
}

TEST(Verify, BatchedRunsSeeTheSameStream) {
  // With any batch size, the estimate after n samples uses the same draws;
  // so capped runs of equal length agree exactly.
  const FairnessProblem p = Single("mu(z) - 0.5 >= 0", "z ~ bernoulli(0.5); return z");
  VerifierConfig config;
  config.max_samples = 3000;
  config.batch_size = 1;
  const Verdict a = Verify(p, config);
  config.batch_size = 7;
  const Verdict b = Verify(p, config);
  EXPECT_EQ(a.variables[0].mean, b.variables[0].mean);
  EXPECT_EQ(b.variables[0].n, 3000u);
}

TEST(Verify, ConfigErrors) {
  const FairnessProblem p = Single("mu(z) >= 0.5", "z ~ bernoulli(0.9); return z");
  VerifierConfig config;
  config.delta = 0;
  EXPECT_THROW(Verify(p, config), ConfigError);
  config.delta = 1;
  EXPECT_THROW(Verify(p, config), ConfigError);
  config = {};
  config.batch_size = 0;
  EXPECT_THROW(Verify(p, config), ConfigError);
  config = {};
  config.workers = 0;
  EXPECT_THROW(Verify(p, config), ConfigError);
  config = {};
  config.timeout_seconds = -1;
  EXPECT_THROW(Verify(p, config), ConfigError);
}

TEST(Verify, ClassifierOutputOutOfRange) {
  const PopulationModel m = ParseModel("z ~ gaussian(5, 1); return z");
  FairnessProblem p{ParseSpec("mu(z) >= 0.5"),
                    {{"z", SampledVariable{m, Predicate(), std::nullopt,
                                           std::make_shared<FeatureClassifier>("z")}}},
                    0};
  EXPECT_THROW(Verify(p, {}), OutOfRangeSample);
}

TEST(Verify, MarginSweepIsMonotone) {
  // ratio 0.9 against thresholds approaching it from below.
  std::uint64_t previous = 0;
  for (double gap : {0.2, 0.1, 0.05}) {
    const PopulationModel m = ParseModel(R"(
      g ~ bernoulli(0.5)
      y ~ bernoulli(g ? 0.5 : 0.45)
      return g, y
    )");
    const FairnessProblem p = BuildDemographicParity(
        0.1 + gap, m.CompilePredicate("g == 1"), m.CompilePredicate("g == 0"),
        m, std::make_shared<FeatureClassifier>("y", true));
    VerifierConfig config;
    config.batch_size = 100;
    const Verdict v = Verify(p, config);
    ASSERT_EQ(v.answer, Answer::kFair) << gap;
    EXPECT_GT(v.variables[0].n, previous);
    previous = v.variables[0].n;
  }
}

}  // namespace
}  // namespace fairverify
