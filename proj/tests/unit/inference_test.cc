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

#include "fairverify/inference.h"

#include <gtest/gtest.h>

#include <cmath>

#include "fairverify/error.h"
#include "random_spec.h"

namespace fairverify {
namespace {

using E = SpecExpr;

EstimateLemma AsEstimate(const InferResult& r) {
  EXPECT_TRUE(std::holds_alternative<EstimateLemma>(r));
  return std::get<EstimateLemma>(r);
}

TEST(Infer, SumRule) {
  const LemmaEnv env{{"a", {0.5, 0.1, 0.01}}, {"b", {0.3, 0.05, 0.02}}};
  const EstimateLemma l =
      AsEstimate(Infer(E::Sum(E::Mu("a"), E::Mu("b")), env));
  EXPECT_DOUBLE_EQ(l.estimate, 0.8);
  EXPECT_DOUBLE_EQ(l.radius, 0.15);
  EXPECT_DOUBLE_EQ(l.delta.value(), 0.03);
}

TEST(Infer, NegAndConstRules) {
  const LemmaEnv env{{"a", {0.5, 0.1, 0.01}}};
  const EstimateLemma n = AsEstimate(Infer(E::Neg(E::Mu("a")), env));
  EXPECT_EQ(n.estimate, -0.5);
  EXPECT_EQ(n.radius, 0.1);
  const EstimateLemma c = AsEstimate(Infer(E::Const(3.0), env));
  EXPECT_EQ(c.estimate, 3.0);
  EXPECT_EQ(c.radius, 0.0);
  EXPECT_EQ(c.delta.value(), 0.0);
}

TEST(Infer, ProductRule) {
  const LemmaEnv env{{"a", {0.5, 0.1, 0.01}}, {"b", {-0.4, 0.05, 0.02}}};
  const EstimateLemma l =
      AsEstimate(Infer(E::Prod(E::Mu("a"), E::Mu("b")), env));
  EXPECT_DOUBLE_EQ(l.estimate, -0.2);
  EXPECT_DOUBLE_EQ(l.radius, 0.5 * 0.05 + 0.4 * 0.1 + 0.1 * 0.05);
  EXPECT_DOUBLE_EQ(l.delta.value(), 0.03);
}

TEST(Infer, InverseRule) {
  const LemmaEnv env{{"a", {0.5, 0.1, 0.01}}, {"s", {0.05, 0.1, 0.01}}};
  const EstimateLemma l = AsEstimate(Infer(E::Inv(E::Mu("a")), env));
  EXPECT_DOUBLE_EQ(l.estimate, 2.0);
  EXPECT_DOUBLE_EQ(l.radius, 0.5);
  EXPECT_DOUBLE_EQ(l.delta.value(), 0.01);

  const InferResult u = Infer(E::Inv(E::Mu("s")), env);
  ASSERT_TRUE(std::holds_alternative<Undetermined>(u));
  EXPECT_EQ(std::get<Undetermined>(u).reason,
            UndeterminedReason::kInverseNotSeparated);
  EXPECT_EQ(std::get<Undetermined>(u).path, "/");
}

TEST(Infer, InequalityRules) {
  const LemmaEnv env{{"t", {0.3, 0.1, 0.02}},
                     {"f", {-0.3, 0.1, 0.02}},
                     {"u", {0.05, 0.1, 0.02}}};
  const InferResult t = Infer(E::GeqZero(E::Mu("t")), env);
  ASSERT_TRUE(std::holds_alternative<BoolLemma>(t));
  EXPECT_TRUE(std::get<BoolLemma>(t).value);
  EXPECT_EQ(std::get<BoolLemma>(t).gamma.value(), 0.02);

  const InferResult f = Infer(E::GeqZero(E::Mu("f")), env);
  ASSERT_TRUE(std::holds_alternative<BoolLemma>(f));
  EXPECT_FALSE(std::get<BoolLemma>(f).value);

  const InferResult u = Infer(E::GeqZero(E::Mu("u")), env);
  ASSERT_TRUE(std::holds_alternative<Undetermined>(u));
  EXPECT_EQ(std::get<Undetermined>(u).reason,
            UndeterminedReason::kInequalityStraddles);
  EXPECT_EQ(std::get<Undetermined>(u).path, "/");
}

TEST(Infer, InequalityEdgeCases) {
  // E - eps == 0 decides true; E + eps == 0 does not decide false.
  const LemmaEnv env{{"z", {0.25, 0.25, 0.1}}, {"w", {-0.25, 0.25, 0.1}}};
  const InferResult z = Infer(E::GeqZero(E::Mu("z")), env);
  ASSERT_TRUE(std::holds_alternative<BoolLemma>(z));
  EXPECT_TRUE(std::get<BoolLemma>(z).value);
  EXPECT_TRUE(
      std::holds_alternative<Undetermined>(Infer(E::GeqZero(E::Mu("w")), env)));
}

TEST(Infer, BooleanConnectives) {
  const LemmaEnv env{{"t", {0.3, 0.1, 0.02}}, {"f", {-0.3, 0.1, 0.03}}};
  const E t = E::GeqZero(E::Mu("t"));
  const E f = E::GeqZero(E::Mu("f"));
  auto decide = [&](const E& s) {
    const InferResult r = Infer(s, env);
    EXPECT_TRUE(std::holds_alternative<BoolLemma>(r));
    return std::get<BoolLemma>(r);
  };
  EXPECT_FALSE(decide(E::And(t, f)).value);
  EXPECT_TRUE(decide(E::Or(t, f)).value);
  EXPECT_TRUE(decide(E::Not(f)).value);
  EXPECT_DOUBLE_EQ(decide(E::And(t, f)).gamma.value(), 0.05);
  EXPECT_DOUBLE_EQ(decide(E::Not(t)).gamma.value(), 0.02);
}

TEST(Infer, UndeterminedPathPointsAtPremise) {
  const LemmaEnv env{{"t", {0.3, 0.1, 0.02}}, {"u", {0.05, 0.1, 0.02}}};
  const InferResult r = Infer(
      E::And(E::GeqZero(E::Mu("t")), E::Not(E::GeqZero(E::Inv(E::Mu("u"))))),
      env);
  ASSERT_TRUE(std::holds_alternative<Undetermined>(r));
  EXPECT_EQ(std::get<Undetermined>(r).path, "/1/0/0");
}

TEST(Infer, UnboundLeaf) {
  EXPECT_THROW(Infer(E::GeqZero(E::Mu("missing")), {}), UnboundVariable);
}

TEST(FailureMass, SumsExactly) {
  FailureMass m;
  const double d = 0.1 / 7.0;
  for (int i = 0; i < 7; ++i) m = m + d;
  // The double-double sum is exact, so it equals 7 * d correctly rounded.
  EXPECT_EQ(m.value(), std::fma(7.0, d, 0.0));
}

TEST(FailureMass, GammaIsLeafCountTimesDelta) {
  testing::SpecGenerator gen(21, {"a", "b", "c"});
  for (int i = 0; i < 2000; ++i) {
    const E spec = gen.BoolWithLeaf(3);
    const double dz = gen.Real(1e-12, 0.1);
    LemmaEnv env;
    // Far-from-zero estimates and tiny radii so everything decides.
    for (const char* v : {"a", "b", "c"}) {
      env[v] = {gen.Real(0.5, 1.0), 1e-9, dz};
    }
    const InferResult r = Infer(spec, env);
    if (!std::holds_alternative<BoolLemma>(r)) continue;
    const double m = static_cast<double>(DeltaWeight(spec));
    EXPECT_EQ(std::get<BoolLemma>(r).gamma.value(), m * dz) << PrintSpec(spec);
  }
}

// Leaves satisfy |E - mu| <= eps by construction; every arithmetic result
// must contain the exact value and every decision must be right.
TEST(InferProperties, Containment) {
  testing::SpecGenerator gen(22, {"a", "b", "c"});
  int decided = 0;
  for (int i = 0; i < 5000; ++i) {
    const bool boolean = i % 2 == 0;
    const E spec = boolean ? gen.Bool(3) : gen.Arith(3);
    Means means;
    LemmaEnv env;
    for (const char* v : {"a", "b", "c"}) {
      const double mu = gen.Real(0.0, 1.0);
      const double eps = gen.Real(1e-3, 0.2);
      means[v] = mu;
      env[v] = {mu + gen.Real(-0.99, 0.99) * eps, eps, 0.01};
    }
    SpecValue exact;
    try {
      exact = EvalExact(spec, means);
    } catch (const DivisionByZero&) {
      continue;
    }
    const InferResult r = Infer(spec, env);
    if (const auto* l = std::get_if<EstimateLemma>(&r)) {
      const double x = std::get<double>(exact);
      if (std::isfinite(x)) {
        EXPECT_LE(std::abs(l->estimate - x), l->radius * (1 + 1e-12) + 1e-12)
            << PrintSpec(spec);
      }
      ++decided;
    } else if (const auto* b = std::get_if<BoolLemma>(&r)) {
      EXPECT_EQ(b->value, std::get<bool>(exact)) << PrintSpec(spec);
      ++decided;
    }
  }
  EXPECT_GT(decided, 1000);
}

TEST(InferProperties, PositiveScalingPreservesDecisions) {
  testing::SpecGenerator gen(23, {"a", "b"});
  for (int i = 0; i < 3000; ++i) {
    const E x = gen.Arith(3);
    LemmaEnv env{{"a", {gen.Real(0, 1), gen.Real(0.001, 0.1), 0.01}},
                 {"b", {gen.Real(0, 1), gen.Real(0.001, 0.1), 0.01}}};
    const InferResult before = Infer(E::GeqZero(x), env);
    if (!std::holds_alternative<BoolLemma>(before)) continue;
    // Powers of two keep the scaled premises exact.
    for (double k : {0.25, 2.0, 1024.0}) {
      const InferResult after =
          Infer(E::GeqZero(E::Prod(E::Const(k), x)), env);
      ASSERT_TRUE(std::holds_alternative<BoolLemma>(after)) << PrintSpec(x);
      EXPECT_EQ(std::get<BoolLemma>(after).value,
                std::get<BoolLemma>(before).value);
    }
  }
}

TEST(InferProperties, WiderRadiiNeverDecide) {
  testing::SpecGenerator gen(24, {"a", "b"});
  for (int i = 0; i < 3000; ++i) {
    const E spec = gen.Bool(3);
    LemmaEnv env{{"a", {gen.Real(0, 1), gen.Real(0.001, 0.3), 0.01}},
                 {"b", {gen.Real(0, 1), gen.Real(0.001, 0.3), 0.01}}};
    if (!std::holds_alternative<Undetermined>(Infer(spec, env))) continue;
    for (auto& [name, lemma] : env) lemma.radius *= gen.Real(1.0, 3.0);
    EXPECT_TRUE(std::holds_alternative<Undetermined>(Infer(spec, env)))
        << PrintSpec(spec);
  }
}

TEST(InferProperties, WorkedParityRadiusVersusCompositional) {
  // Compare the closed-form ratio radius with the compositional one. Neither
  // ordering is assumed; record that both contain the exact ratio.
  testing::SpecGenerator gen(25, {"x"});
  for (int i = 0; i < 2000; ++i) {
    const double emin = gen.Real(0.1, 1.0), emaj = gen.Real(0.2, 1.0);
    const double emn = gen.Real(0.001, 0.05), emj = gen.Real(0.001, 0.1);
    const LemmaEnv env{{"min", {emin, emn, 0.01}}, {"maj", {emaj, emj, 0.01}}};
    const EstimateLemma l = AsEstimate(
        Infer(E::Prod(E::Mu("min"), E::Inv(E::Mu("maj"))), env));
    const double worked =
        emn / emaj + emj * (emin + emn) / (emaj * (emaj - emj));
    const double mu_min = emin + gen.Real(-1, 1) * emn;
    const double mu_maj = emaj + gen.Real(-1, 1) * emj;
    const double truth = mu_min / mu_maj;
    EXPECT_LE(std::abs(truth - emin / emaj), worked * (1 + 1e-12));
    EXPECT_LE(std::abs(truth - l.estimate), l.radius * (1 + 1e-12));
  }
}

}  // namespace
}  // namespace fairverify
