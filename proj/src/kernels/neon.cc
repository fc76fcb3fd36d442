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

// AArch64 Advanced SIMD, two doubles per register. vmulq/vaddq are kept
// apart (no vfmaq) to stay bit-identical with the scalar kernels.

#include <arm_neon.h>

#include <cmath>

#include "kernel_impls.h"

namespace fairverify::kernels {

namespace {

void AffineAccumulate(double* acc, const double* x, double w, std::size_t n) {
  const float64x2_t vw = vdupq_n_f64(w);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t p = vmulq_f64(vw, vld1q_f64(x + i));
    vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), p));
  }
  for (; i < n; ++i) {
    const double p = w * x[i];
    acc[i] = acc[i] + p;
  }
}

void Relu(double* x, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v = vld1q_f64(x + i);
    const uint64x2_t keep = vcgtq_f64(v, zero);
    vst1q_f64(x + i, vreinterpretq_f64_u64(
                         vandq_u64(keep, vreinterpretq_u64_f64(v))));
  }
  for (; i < n; ++i) x[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void ThresholdGeZero(double* x, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t ge = vcgeq_f64(vld1q_f64(x + i), zero);
    vst1q_f64(x + i, vreinterpretq_f64_u64(
                         vandq_u64(ge, vreinterpretq_u64_f64(one))));
  }
  for (; i < n; ++i) x[i] = x[i] >= 0.0 ? 1.0 : 0.0;
}

void Clamp01(double* x, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v0 = vld1q_f64(x + i);
    const float64x2_t v = vreinterpretq_f64_u64(
        vandq_u64(vcgtq_f64(v0, zero), vreinterpretq_u64_f64(v0)));
    vst1q_f64(x + i, vbslq_f64(vcltq_f64(v, one), v, one));
  }
  for (; i < n; ++i) {
    const double v = x[i] > 0.0 ? x[i] : 0.0;
    x[i] = v < 1.0 ? v : 1.0;
  }
}

void AbsDiffAccumulate(double* acc, const double* a, const double* b,
                       std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vabsq_f64(vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), d));
  }
  for (; i < n; ++i) acc[i] = acc[i] + std::fabs(a[i] - b[i]);
}

}  // namespace

const KernelTable kNeonKernels = {AffineAccumulate, Relu, ThresholdGeZero,
                                  Clamp01, AbsDiffAccumulate};

}  // namespace fairverify::kernels
