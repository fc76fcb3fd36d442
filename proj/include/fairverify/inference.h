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

// Lemma inference over specification trees.
//
// An estimate lemma X:(E, eps, delta) states Pr[|E - [[X]]| <= eps] >= 1 -
// delta; a boolean lemma Y:(I, gamma) states Pr[I = [[Y]]] >= 1 - gamma.
// Infer derives lemmas bottom-up from per-variable leaf lemmas:
//
//   mu_Z    lookup in the environment
//   c       (c, 0, 0)
//   X + X'  (E + E', eps + eps', delta + delta')
//   -X      (-E, eps, delta)
//   X * X'  (E E', |E| eps' + |E'| eps + eps eps', delta + delta')
//   inv(X)  (1/E, eps / (|E| (|E| - eps)), delta)     needs |E| > eps
//   X >= 0  (true, delta) if E - eps >= 0; (false, delta) if E + eps < 0
//   Y && Y', Y || Y'   (I op I', gamma + gamma')
//   !Y      (!I, gamma)
//
// When a premise fails the result is Undetermined, which propagates to the
// root. Premises are compared at working precision with no slack.

#ifndef FAIRVERIFY_INFERENCE_H_
#define FAIRVERIFY_INFERENCE_H_

#include <functional>
#include <map>
#include <string>
#include <variant>

#include "fairverify/speclang.h"

namespace fairverify {

// Nonnegative failure probability accumulated exactly as an unevaluated
// sum hi + lo of two doubles. Sums of a few thousand leaf masses stay
// exact, so gamma = m * delta_Z holds bit-for-bit after rounding.
class FailureMass {
 public:
  FailureMass() = default;
  // Implicit so plain doubles can be used wherever a mass is expected.
  FailureMass(double value) : hi_(value) {}  // NOLINT
  // hi + lo, renormalized.
  static FailureMass FromParts(double hi, double lo);

  // Correctly rounded value of the exact sum.
  double value() const { return hi_ + lo_; }
  double hi() const { return hi_; }
  double lo() const { return lo_; }

  friend FailureMass operator+(const FailureMass& a, const FailureMass& b);
  friend bool operator==(const FailureMass& a, const FailureMass& b) {
    return a.hi_ == b.hi_ && a.lo_ == b.lo_;
  }

 private:
  double hi_ = 0.0;
  double lo_ = 0.0;
};

struct EstimateLemma {
  double estimate = 0.0;
  double radius = 0.0;
  FailureMass delta;
};

struct BoolLemma {
  bool value = false;
  FailureMass gamma;
};

enum class UndeterminedReason {
  // inv(X) with |E| <= eps.
  kInverseNotSeparated,
  // X >= 0 with E - eps < 0 <= E + eps.
  kInequalityStraddles,
};

// Diagnostics for a failed premise. `path` lists child indices from the
// root to the failing node, e.g. "/0/1"; the root itself is "/".
struct Undetermined {
  UndeterminedReason reason = UndeterminedReason::kInequalityStraddles;
  std::string path;
};

using LemmaEnv = std::map<std::string, EstimateLemma, std::less<>>;
using InferResult = std::variant<EstimateLemma, BoolLemma, Undetermined>;

// Throws UnboundVariable when a mu leaf is missing from `env`.
InferResult Infer(const SpecExpr& spec, const LemmaEnv& env);

}  // namespace fairverify

#endif  // FAIRVERIFY_INFERENCE_H_
