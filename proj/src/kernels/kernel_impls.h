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

#ifndef FAIRVERIFY_SRC_KERNELS_KERNEL_IMPLS_H_
#define FAIRVERIFY_SRC_KERNELS_KERNEL_IMPLS_H_

#include "fairverify/kernels.h"

namespace fairverify::kernels {

extern const KernelTable kScalarKernels;
#if defined(FAIRVERIFY_HAVE_AVX2)
extern const KernelTable kAvx2Kernels;
#endif
#if defined(FAIRVERIFY_HAVE_NEON)
extern const KernelTable kNeonKernels;
#endif

}  // namespace fairverify::kernels

#endif  // FAIRVERIFY_SRC_KERNELS_KERNEL_IMPLS_H_
