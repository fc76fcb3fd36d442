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

// Built with -mavx2 only. Multiply and add stay separate instructions so
// results match the scalar kernels exactly.

#include <immintrin.h>

#include <cmath>

#include "kernel_impls.h"

namespace fairverify::kernels {

namespace {

void AffineAccumulate(double* acc, const double* x, double w, std::size_t n) {
  const __m256d vw = _mm256_set1_pd(w);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_mul_pd(vw, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), p));
  }
  for (; i < n; ++i) {
    const double p = w * x[i];
    acc[i] = acc[i] + p;
  }
}

// x > 0 ? x : 0. The ordered compare is false for NaN and -0, as in scalar.
void Relu(double* x, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d keep = _mm256_cmp_pd(v, zero, _CMP_GT_OQ);
    _mm256_storeu_pd(x + i, _mm256_and_pd(keep, v));
  }
  for (; i < n; ++i) x[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void ThresholdGeZero(double* x, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ge = _mm256_cmp_pd(_mm256_loadu_pd(x + i), zero, _CMP_GE_OQ);
    _mm256_storeu_pd(x + i, _mm256_and_pd(ge, one));
  }
  for (; i < n; ++i) x[i] = x[i] >= 0.0 ? 1.0 : 0.0;
}

void Clamp01(double* x, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(x + i);
    const __m256d v = _mm256_and_pd(_mm256_cmp_pd(v0, zero, _CMP_GT_OQ), v0);
    const __m256d lt = _mm256_cmp_pd(v, one, _CMP_LT_OQ);
    _mm256_storeu_pd(x + i, _mm256_blendv_pd(one, v, lt));
  }
  for (; i < n; ++i) {
    const double v = x[i] > 0.0 ? x[i] : 0.0;
    x[i] = v < 1.0 ? v : 1.0;
  }
}

void AbsDiffAccumulate(double* acc, const double* a, const double* b,
                       std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    const __m256d abs = _mm256_andnot_pd(sign, d);
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), abs));
  }
  for (; i < n; ++i) acc[i] = acc[i] + std::fabs(a[i] - b[i]);
}

}  // namespace

const KernelTable kAvx2Kernels = {AffineAccumulate, Relu, ThresholdGeZero,
                                  Clamp01, AbsDiffAccumulate};

}  // namespace fairverify::kernels
