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

#include <cmath>

#include "kernel_impls.h"

namespace fairverify::kernels {

namespace {

void AffineAccumulate(double* acc, const double* x, double w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double p = w * x[i];
    acc[i] = acc[i] + p;
  }
}

void Relu(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void ThresholdGeZero(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = x[i] >= 0.0 ? 1.0 : 0.0;
}

void Clamp01(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double v = x[i] > 0.0 ? x[i] : 0.0;
    x[i] = v < 1.0 ? v : 1.0;
  }
}

void AbsDiffAccumulate(double* acc, const double* a, const double* b,
                       std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] = acc[i] + std::fabs(a[i] - b[i]);
}

}  // namespace

const KernelTable kScalarKernels = {AffineAccumulate, Relu, ThresholdGeZero,
                                    Clamp01, AbsDiffAccumulate};

}  // namespace fairverify::kernels
