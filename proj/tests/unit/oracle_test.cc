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

#include "fairverify/oracle.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fairverify/error.h"
#include "fairverify/rng.h"

namespace fairverify {
namespace {

FairnessProblem One(const PopulationModel& m, Predicate cond, ClassifierPtr clf) {
  return FairnessProblem{
      ParseSpec("mu(z) >= 0.5"),
      {{"z", SampledVariable{m, std::move(cond), std::nullopt, std::move(clf)}}},
      0};
}

// Monte-Carlo estimate with the model's own sampler.
double MonteCarlo(const FairnessProblem& p, const std::string& var, int n) {
  const SampledVariable& v = p.bindings.at(var);
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    RngStream rng(77, 0, static_cast<std::uint64_t>(i));
    const Draw d = v.mediator_override
                       ? SampleWithMediatorOverride(v.model, v.condition,
                                                    *v.mediator_override, rng, 1000)
                       : RejectionSample(v.model, v.condition, rng, 1000);
    sum += v.classifier->Evaluate(d.record);
  }
  return sum / n;
}

const char* kJobTree = R"({"type":"tree","root":{
    "feature":"col_rank","threshold":5,"le":{"leaf":1},
    "gt":{"feature":"years_exp","threshold":5,"le":{"leaf":0},"gt":{"leaf":1}}}})";

PopulationModel JobModel() {
  return ParseModel(R"(
    is_male ~ bernoulli(0.5)
    col_rank ~ normal(25, 10)
    if is_male { years_exp ~ normal(15, 5) } else { years_exp ~ normal(10, 5) }
    return is_male, col_rank, years_exp
  )");
}

TEST(ExactMeansDiscrete, Bernoulli) {
  const PopulationModel m = ParseModel("z ~ bernoulli(0.3); return z");
  const ExactMeans e =
      ExactMeansDiscrete(One(m, Predicate(), std::make_shared<FeatureClassifier>("z")));
  EXPECT_DOUBLE_EQ(e.means.at("z"), 0.3);
  EXPECT_FALSE(e.truth);
}

TEST(ExactMeansDiscrete, ConditionalTwoBits) {
  const PopulationModel m = ParseModel(R"(
    a ~ bernoulli(0.3)
    b ~ bernoulli(a ? 0.9 : 0.2)
    return a, b
  )");
  const ClassifierPtr fa = std::make_shared<FeatureClassifier>("a");
  // Pr[a | b] = 0.27 / (0.27 + 0.14)
  EXPECT_NEAR(ExactMeansDiscrete(One(m, m.CompilePredicate("b == 1"), fa)).means.at("z"),
              0.27 / 0.41, 1e-15);
  EXPECT_NEAR(ExactMeansDiscrete(One(m, m.CompilePredicate("b == 0"), fa)).means.at("z"),
              0.03 / 0.59, 1e-15);
}

TEST(ExactMeansDiscrete, CategoricalAndBranches) {
  const PopulationModel m = ParseModel(R"(
    k ~ categorical(1, 2, 7)
    if k == 2 { y ~ bernoulli(0.5) } else if k == 1 { y = 1 } else { y = 0 }
    return k, y
  )");
  EXPECT_NEAR(ExactMeansDiscrete(
                  One(m, Predicate(), std::make_shared<FeatureClassifier>("y")))
                  .means.at("z"),
              0.2 + 0.35, 1e-15);
}

TEST(ExactMeansDiscrete, MediatorOverride) {
  const PopulationModel m = ParseModel(R"(
    is_male ~ bernoulli(0.5)
    mediator { college ~ bernoulli(is_male ? 0.8 : 0.4) }
    return is_male, college
  )");
  FairnessProblem p = One(m, m.CompilePredicate("is_male == 0"),
                          std::make_shared<FeatureClassifier>("college"));
  EXPECT_NEAR(ExactMeansDiscrete(p).means.at("z"), 0.4, 1e-15);
  p.bindings.at("z").mediator_override = MediatorOverride{"is_male", 1};
  EXPECT_NEAR(ExactMeansDiscrete(p).means.at("z"), 0.8, 1e-15);
}

TEST(ExactMeansDiscrete, Pairwise) {
  // f = x, lambda = 0.5: pairs with different x have gap 1 > 0.5 * 1.
  const PopulationModel m = ParseModel("x ~ bernoulli(0.3); return x");
  FairnessProblem p = One(m, Predicate(), std::make_shared<FeatureClassifier>("x"));
  p.bindings.at("z").pairwise = true;
  p.bindings.at("z").lambda = 0.5;
  EXPECT_NEAR(ExactMeansDiscrete(p).means.at("z"), 0.09 + 0.49, 1e-15);
  p.bindings.at("z").lambda = 1.0;
  EXPECT_NEAR(ExactMeansDiscrete(p).means.at("z"), 1.0, 1e-15);
}

TEST(ExactMeansDiscrete, Errors) {
  const PopulationModel g = ParseModel("x ~ gaussian(0, 1); return x");
  EXPECT_THROW(ExactMeansDiscrete(One(g, Predicate(),
                                      std::make_shared<ConstantClassifier>(1))),
               UnsupportedContinuousPrimitive);
  const PopulationModel b = ParseModel("x ~ bernoulli(0.5); return x");
  EXPECT_THROW(ExactMeansDiscrete(One(b, b.CompilePredicate("x == 3"),
                                      std::make_shared<ConstantClassifier>(1))),
               ZeroConditionProbability);
}

TEST(ExactMeansGaussianTree, JobClosedForm) {
  const PopulationModel m = JobModel();
  const FairnessProblem p = BuildDemographicParity(
      0.2, m.CompilePredicate("is_male == 1"), m.CompilePredicate("is_male == 0"),
      m, ParseClassifierJson(kJobTree));
  const ExactMeans e = ExactMeansGaussianTree(p);
  // Phi(-2) + (1 - Phi(-2)) Phi(2) and Phi(-2) + (1 - Phi(-2)) Phi(1).
  EXPECT_NEAR(e.means.at("maj"), 0.97776743655548035705, 1e-15);
  EXPECT_NEAR(e.means.at("min"), 0.84495417402975547442, 1e-15);
  EXPECT_TRUE(e.truth);
  EXPECT_FALSE(ExactMeansGaussianTree(BuildDemographicParity(
                                          0.1, m.CompilePredicate("is_male == 1"),
                                          m.CompilePredicate("is_male == 0"), m,
                                          ParseClassifierJson(kJobTree)))
                   .truth);
}

TEST(ExactMeansGaussianTree, AgreesWithMonteCarlo) {
  const PopulationModel m = JobModel();
  const FairnessProblem p = BuildDemographicParity(
      0.2, m.CompilePredicate("is_male == 1"), m.CompilePredicate("is_male == 0"),
      m, ParseClassifierJson(kJobTree));
  const ExactMeans e = ExactMeansGaussianTree(p);
  const int n = 200'000;
  for (const char* var : {"maj", "min"}) {
    const double mu = e.means.at(var);
    EXPECT_NEAR(MonteCarlo(p, var, n), mu, 4 * std::sqrt(mu * (1 - mu) / n));
  }
}

TEST(ExactMeansGaussianTree, DegenerateTrees) {
  const PopulationModel m = JobModel();
  const Predicate male = m.CompilePredicate("is_male == 1");
  EXPECT_EQ(ExactMeansGaussianTree(
                One(m, male, std::make_shared<ConstantClassifier>(1.0)))
                .means.at("z"),
            1.0);
  const double inf = std::numeric_limits<double>::infinity();
  using Node = DecisionTree::Node;
  const ClassifierPtr never_le = std::make_shared<DecisionTree>(
      std::vector<std::string>{"col_rank"},
      std::vector<Node>{{0, -inf, 1, 2, 0}, {-1, 0, -1, -1, 1}, {-1, 0, -1, -1, 0.25}});
  EXPECT_EQ(ExactMeansGaussianTree(One(m, male, never_le)).means.at("z"), 0.25);
}

TEST(ExactMeansGaussianTree, DiscreteAgreement) {
  // Both oracles apply to discrete-only models with trees.
  const PopulationModel m = ParseModel(R"(
    a ~ bernoulli(0.3)
    b ~ categorical(0.5, 0.25, 0.25)
    return a, b
  )");
  using Node = DecisionTree::Node;
  const ClassifierPtr tree = std::make_shared<DecisionTree>(
      std::vector<std::string>{"a", "b"},
      std::vector<Node>{{1, 0.5, 1, 2, 0}, {-1, 0, -1, -1, 0.1},
                        {0, 0.5, 3, 4, 0}, {-1, 0, -1, -1, 0.6},
                        {-1, 0, -1, -1, 1}});
  const FairnessProblem p = One(m, Predicate(), tree);
  EXPECT_NEAR(ExactMeansGaussianTree(p).means.at("z"),
              ExactMeansDiscrete(p).means.at("z"), 1e-15);
}

TEST(ExactMeansGaussianTree, UnsupportedShapes) {
  const PopulationModel m = JobModel();
  // The predicate reads a continuous variable.
  EXPECT_THROW(ExactMeansGaussianTree(One(m, m.CompilePredicate("col_rank > 3"),
                                          ParseClassifierJson(kJobTree))),
               UnsupportedShape);
  // The model reads a continuous draw.
  const PopulationModel reads = ParseModel(R"(
    x ~ gaussian(0, 1)
    y = x > 0
    return x, y
  )");
  EXPECT_THROW(ExactMeansGaussianTree(One(reads, Predicate(),
                                          std::make_shared<ConstantClassifier>(1))),
               UnsupportedShape);
  // Non-tree classifier.
  EXPECT_THROW(ExactMeansGaussianTree(One(m, Predicate(),
                                          std::make_shared<FeatureClassifier>("col_rank"))),
               UnsupportedShape);
}

}  // namespace
}  // namespace fairverify
