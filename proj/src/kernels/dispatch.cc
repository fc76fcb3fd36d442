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

#include <atomic>
#include <cstdlib>
#include <string>

#include "fairverify/error.h"
#include "kernel_impls.h"

namespace fairverify {

namespace {

SimdLevel InitialLevel() {
  if (const char* env = std::getenv("FAIRVERIFY_SIMD")) {
    auto level = ParseSimdLevel(env);
    if (level && SimdLevelSupported(*level)) return *level;
  }
  return BestSimdLevel();
}

std::atomic<SimdLevel>& ActiveLevelStorage() {
  static std::atomic<SimdLevel> level{InitialLevel()};
  return level;
}

}  // namespace

std::string_view SimdLevelName(SimdLevel level) {
  switch (level) {
    case SimdLevel::kScalar: return "scalar";
    case SimdLevel::kAvx2: return "avx2";
    case SimdLevel::kNeon: return "neon";
  }
  return "unknown";
}

std::optional<SimdLevel> ParseSimdLevel(std::string_view name) {
  for (SimdLevel level :
       {SimdLevel::kScalar, SimdLevel::kAvx2, SimdLevel::kNeon}) {
    if (name == SimdLevelName(level)) return level;
  }
  return std::nullopt;
}

bool SimdLevelSupported(SimdLevel level) {
  switch (level) {
    case SimdLevel::kScalar:
      return true;
    case SimdLevel::kAvx2:
#if defined(FAIRVERIFY_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case SimdLevel::kNeon:
#if defined(FAIRVERIFY_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

SimdLevel BestSimdLevel() {
  if (SimdLevelSupported(SimdLevel::kAvx2)) return SimdLevel::kAvx2;
  if (SimdLevelSupported(SimdLevel::kNeon)) return SimdLevel::kNeon;
  return SimdLevel::kScalar;
}

SimdLevel ActiveSimdLevel() { return ActiveLevelStorage().load(); }

void SetSimdLevel(SimdLevel level) {
  if (!SimdLevelSupported(level)) {
    throw ConfigError("SIMD level '" + std::string(SimdLevelName(level)) +
                      "' is not supported on this machine");
  }
  ActiveLevelStorage().store(level);
}

const KernelTable& KernelsFor(SimdLevel level) {
  if (!SimdLevelSupported(level)) {
    throw ConfigError("SIMD level '" + std::string(SimdLevelName(level)) +
                      "' is not supported on this machine");
  }
  switch (level) {
#if defined(FAIRVERIFY_HAVE_AVX2)
    case SimdLevel::kAvx2: return kernels::kAvx2Kernels;
#endif
#if defined(FAIRVERIFY_HAVE_NEON)
    case SimdLevel::kNeon: return kernels::kNeonKernels;
#endif
    default: return kernels::kScalarKernels;
  }
}

const KernelTable& ActiveKernels() { return KernelsFor(ActiveSimdLevel()); }

}  // namespace fairverify
