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

#ifndef FAIRVERIFY_RNG_H_
#define FAIRVERIFY_RNG_H_

#include <cstdint>

namespace fairverify {

// Identifies one independent random stream: the run seed, a stream id (one
// per sampled variable and role) and the sample index within that stream.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t index = 0;
};

// Counter-based generator: draw k of a stream is SplitMix64 applied to a
// hash of the key plus k. Only integer arithmetic is involved, so a key
// yields the same 64-bit words on every platform, in any thread, no matter
// how samples are batched.
class RngStream {
 public:
  explicit RngStream(StreamKey key);
  RngStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
      : RngStream(StreamKey{seed, stream, index}) {}

  std::uint64_t NextU64();
  // Uniform on the open interval (0, 1) with 53 random bits.
  double NextUniform();
  // Standard normal by inverse-CDF transform of one uniform.
  double NextGaussian();

  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

// Inverse of the standard normal CDF for 0 < p < 1 (Wichura's AS241,
// relative accuracy about 1e-16). Uses only rational functions, log and sqrt.
double InverseNormalCdf(double p);

// Standard normal CDF.
double NormalCdf(double x);

}  // namespace fairverify

#endif  // FAIRVERIFY_RNG_H_
