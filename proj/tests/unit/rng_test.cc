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

#include "fairverify/rng.h"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace fairverify {
namespace {

// Relative error within a few ulps.
void ExpectClose(double got, double want) {
  EXPECT_NEAR(got, want, 2e-15 * std::abs(want)) << want;
}

TEST(InverseNormalCdf, GoldenValues) {
  // 40-digit reference values at the exact double inputs.
  EXPECT_EQ(InverseNormalCdf(0.5), 0.0);
  ExpectClose(InverseNormalCdf(0.975), 1.959963984540053855604431);
  ExpectClose(InverseNormalCdf(1e-10), -6.361340902404056199100397);
  ExpectClose(InverseNormalCdf(0.02425), -1.972961051311884837602748);
  ExpectClose(InverseNormalCdf(0.3), -0.5244005127080408159694544);
  ExpectClose(InverseNormalCdf(0.999999), 4.753424308817087765688097);
}

TEST(NormalCdf, GoldenValues) {
  ExpectClose(NormalCdf(-2), 0.02275013194817920720028264);
  ExpectClose(NormalCdf(1), 0.8413447460685429485852325);
  ExpectClose(NormalCdf(2), 0.9772498680518207927997174);
  EXPECT_EQ(NormalCdf(0), 0.5);
  // Rounding of x / sqrt(2) is amplified by about x^2 in the far tail.
  EXPECT_NEAR(NormalCdf(-8), 6.220960574271784123515995e-16, 1e-29);
}

TEST(InverseNormalCdf, InvertsCdf) {
  for (double p = 0.001; p < 1.0; p += 0.0137) {
    EXPECT_NEAR(NormalCdf(InverseNormalCdf(p)), p, 1e-14);
  }
}

TEST(RngStream, Deterministic) {
  RngStream a(1, 2, 3), b(StreamKey{1, 2, 3});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.NextU64(), b.NextU64());
  EXPECT_EQ(a.draws(), 100u);
}

TEST(RngStream, KeysAreIndependent) {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    for (std::uint64_t stream = 0; stream < 8; ++stream) {
      for (std::uint64_t index = 0; index < 8; ++index) {
        firsts.insert(RngStream(seed, stream, index).NextU64());
      }
    }
  }
  EXPECT_EQ(firsts.size(), 512u);
}

TEST(RngStream, UniformMoments) {
  RngStream r(7, 0, 0);
  const int n = 1'000'000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    const double u = r.NextUniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sq / n - (sum / n) * (sum / n), 1.0 / 12, 1e-3);
}

TEST(RngStream, GaussianMoments) {
  RngStream r(8, 0, 0);
  const int n = 1'000'000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    const double g = r.NextGaussian();
    sum += g;
    sq += g * g;
  }
  EXPECT_NEAR(sum / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(sq / n, 1.0, 0.01);
}

}  // namespace
}  // namespace fairverify
