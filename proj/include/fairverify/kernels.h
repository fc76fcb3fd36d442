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

// Elementwise kernels used by batched classifier evaluation. Each kernel
// has a scalar reference and vector variants that are bit-identical to it:
// the vector forms only process several records at once and perform the
// same IEEE operations in the same order per element (no FMA contraction).
//
// The active level is picked once from the CPU, and can be forced with the
// FAIRVERIFY_SIMD environment variable (scalar, avx2, neon) or SetSimdLevel.

#ifndef FAIRVERIFY_KERNELS_H_
#define FAIRVERIFY_KERNELS_H_

#include <cstddef>
#include <optional>
#include <string_view>

namespace fairverify {

enum class SimdLevel { kScalar, kAvx2, kNeon };

std::string_view SimdLevelName(SimdLevel level);
std::optional<SimdLevel> ParseSimdLevel(std::string_view name);

// Whether this binary and CPU can run `level`.
bool SimdLevelSupported(SimdLevel level);
SimdLevel BestSimdLevel();

SimdLevel ActiveSimdLevel();
// Throws ConfigError when `level` is unsupported.
void SetSimdLevel(SimdLevel level);

struct KernelTable {
  // acc[i] += w * x[i]
  void (*affine_accumulate)(double* acc, const double* x, double w,
                            std::size_t n);
  // x[i] = x[i] > 0 ? x[i] : 0
  void (*relu)(double* x, std::size_t n);
  // x[i] = x[i] >= 0 ? 1 : 0
  void (*threshold_ge_zero)(double* x, std::size_t n);
  // x[i] = min(max(x[i], 0), 1) with NaN mapped to 0
  void (*clamp01)(double* x, std::size_t n);
  // acc[i] += |a[i] - b[i]|
  void (*abs_diff_accumulate)(double* acc, const double* a, const double* b,
                              std::size_t n);
};

// Throws ConfigError when `level` is unsupported.
const KernelTable& KernelsFor(SimdLevel level);
const KernelTable& ActiveKernels();

}  // namespace fairverify

#endif  // FAIRVERIFY_KERNELS_H_
