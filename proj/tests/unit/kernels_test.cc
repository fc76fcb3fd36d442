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

#include "fairverify/kernels.h"

#include <gtest/gtest.h>

#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include "fairverify/error.h"

namespace fairverify {
namespace {

std::vector<SimdLevel> VectorLevels() {
  std::vector<SimdLevel> out;
  for (SimdLevel l : {SimdLevel::kAvx2, SimdLevel::kNeon}) {
    if (SimdLevelSupported(l)) out.push_back(l);
  }
  return out;
}

std::vector<double> Data(std::mt19937_64& rng, std::size_t n) {
  static const double kSpecial[] = {
      0.0, -0.0, 1.0, -1.0, std::numeric_limits<double>::quiet_NaN(),
      std::numeric_limits<double>::infinity(),
      -std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::denorm_min(), 1e-300, 0.5};
  std::vector<double> v(n);
  for (double& x : v) {
    if (rng() % 4 == 0) {
      x = kSpecial[rng() % std::size(kSpecial)];
    } else {
      x = std::uniform_real_distribution<double>(-3, 3)(rng);
    }
  }
  return v;
}

bool SameBits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

TEST(Kernels, LevelNames) {
  EXPECT_EQ(ParseSimdLevel("scalar"), SimdLevel::kScalar);
  EXPECT_EQ(ParseSimdLevel("avx2"), SimdLevel::kAvx2);
  EXPECT_EQ(ParseSimdLevel("neon"), SimdLevel::kNeon);
  EXPECT_FALSE(ParseSimdLevel("sse9").has_value());
  EXPECT_EQ(SimdLevelName(SimdLevel::kAvx2), "avx2");
  EXPECT_TRUE(SimdLevelSupported(SimdLevel::kScalar));
  EXPECT_TRUE(SimdLevelSupported(BestSimdLevel()));
}

TEST(Kernels, UnsupportedLevelRejected) {
  for (SimdLevel l : {SimdLevel::kAvx2, SimdLevel::kNeon}) {
    if (!SimdLevelSupported(l)) {
      EXPECT_THROW(SetSimdLevel(l), ConfigError);
      EXPECT_THROW(KernelsFor(l), ConfigError);
    }
  }
  const SimdLevel before = ActiveSimdLevel();
  SetSimdLevel(SimdLevel::kScalar);
  EXPECT_EQ(ActiveSimdLevel(), SimdLevel::kScalar);
  SetSimdLevel(before);
}

TEST(Kernels, ScalarSemantics) {
  const KernelTable& k = KernelsFor(SimdLevel::kScalar);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> x = {-2, -0.0, 0.0, 0.5, 3, nan};
  std::vector<double> r = x;
  k.relu(r.data(), r.size());
  EXPECT_EQ(r[0], 0.0);
  EXPECT_EQ(r[3], 0.5);
  EXPECT_EQ(r[5], 0.0);
  std::vector<double> t = x;
  k.threshold_ge_zero(t.data(), t.size());
  EXPECT_EQ(t, (std::vector<double>{0, 1, 1, 1, 1, 0}));
  std::vector<double> c = x;
  k.clamp01(c.data(), c.size());
  EXPECT_EQ(c, (std::vector<double>{0, 0, 0, 0.5, 1, 0}));
  std::vector<double> acc = {1, 1, 1};
  const std::vector<double> a = {1, 2, 3}, b = {3, 2, -1};
  k.abs_diff_accumulate(acc.data(), a.data(), b.data(), 3);
  EXPECT_EQ(acc, (std::vector<double>{3, 1, 5}));
  k.affine_accumulate(acc.data(), a.data(), 2.0, 3);
  EXPECT_EQ(acc, (std::vector<double>{5, 5, 11}));
}

TEST(Kernels, VectorMatchesScalarBitForBit) {
  const std::vector<SimdLevel> levels = VectorLevels();
  if (levels.empty()) GTEST_SKIP() << "no vector kernels on this machine";
  const KernelTable& s = KernelsFor(SimdLevel::kScalar);
  std::mt19937_64 rng(99);
  for (SimdLevel level : levels) {
    const KernelTable& v = KernelsFor(level);
    for (std::size_t n = 0; n <= 67; ++n) {
      for (int rep = 0; rep < 20; ++rep) {
        const std::vector<double> x = Data(rng, n), y = Data(rng, n),
                                  acc = Data(rng, n);
        const double w = std::uniform_real_distribution<double>(-2, 2)(rng);
        for (auto unary : {&KernelTable::relu, &KernelTable::threshold_ge_zero,
                           &KernelTable::clamp01}) {
          std::vector<double> a = x, b = x;
          (s.*unary)(a.data(), n);
          (v.*unary)(b.data(), n);
          ASSERT_TRUE(SameBits(a, b)) << SimdLevelName(level) << " n=" << n;
        }
        std::vector<double> a = acc, b = acc;
        s.affine_accumulate(a.data(), x.data(), w, n);
        v.affine_accumulate(b.data(), x.data(), w, n);
        ASSERT_TRUE(SameBits(a, b)) << "affine n=" << n;
        a = acc;
        b = acc;
        s.abs_diff_accumulate(a.data(), x.data(), y.data(), n);
        v.abs_diff_accumulate(b.data(), x.data(), y.data(), n);
        ASSERT_TRUE(SameBits(a, b)) << "abs_diff n=" << n;
      }
    }
  }
}

}  // namespace
}  // namespace fairverify
