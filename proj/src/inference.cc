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

#include "fairverify/inference.h"

#include <cmath>
#include <string>
#include <vector>

#include "fairverify/error.h"

namespace fairverify {

FailureMass FailureMass::FromParts(double hi, double lo) {
  FailureMass out;
  out.hi_ = hi + lo;
  out.lo_ = lo - (out.hi_ - hi);
  return out;
}

FailureMass operator+(const FailureMass& a, const FailureMass& b) {
  // Knuth two-sum on the high parts, low parts folded into the error term,
  // then renormalized so hi is the rounded value of the total.
  const double s = a.hi_ + b.hi_;
  const double bb = s - a.hi_;
  const double err = (a.hi_ - (s - bb)) + (b.hi_ - bb);
  const double lo = err + a.lo_ + b.lo_;
  FailureMass out;
  out.hi_ = s + lo;
  out.lo_ = lo - (out.hi_ - s);
  return out;
}

namespace {

std::string FormatPath(const std::vector<int>& path) {
  if (path.empty()) return "/";
  std::string out;
  for (int index : path) out += "/" + std::to_string(index);
  return out;
}

// `path` holds the child indices leading to `e`; it is restored on return.
InferResult InferAt(const SpecExpr& e, const LemmaEnv& env,
                    std::vector<int>& path) {
  switch (e.kind()) {
    case SpecKind::kMu: {
      auto it = env.find(e.variable());
      if (it == env.end()) throw UnboundVariable(e.variable());
      return it->second;
    }
    case SpecKind::kConst:
      return EstimateLemma{e.constant(), 0.0, FailureMass(0.0)};
    default:
      break;
  }

  path.push_back(0);
  InferResult first = InferAt(e.child(0), env, path);
  path.pop_back();
  if (std::holds_alternative<Undetermined>(first)) return first;

  switch (e.kind()) {
    case SpecKind::kNeg: {
      auto x = std::get<EstimateLemma>(first);
      return EstimateLemma{-x.estimate, x.radius, x.delta};
    }
    case SpecKind::kInv: {
      auto x = std::get<EstimateLemma>(first);
      const double magnitude = std::fabs(x.estimate);
      if (!(magnitude > x.radius)) {
        return Undetermined{UndeterminedReason::kInverseNotSeparated,
                            FormatPath(path)};
      }
      return EstimateLemma{1.0 / x.estimate,
                           x.radius / (magnitude * (magnitude - x.radius)),
                           x.delta};
    }
    case SpecKind::kGeqZero: {
      auto x = std::get<EstimateLemma>(first);
      if (x.estimate - x.radius >= 0.0) return BoolLemma{true, x.delta};
      if (x.estimate + x.radius < 0.0) return BoolLemma{false, x.delta};
      return Undetermined{UndeterminedReason::kInequalityStraddles,
                          FormatPath(path)};
    }
    case SpecKind::kNot: {
      auto y = std::get<BoolLemma>(first);
      return BoolLemma{!y.value, y.gamma};
    }
    default:
      break;
  }

  path.push_back(1);
  InferResult second = InferAt(e.child(1), env, path);
  path.pop_back();
  if (std::holds_alternative<Undetermined>(second)) return second;

  switch (e.kind()) {
    case SpecKind::kSum: {
      auto a = std::get<EstimateLemma>(first);
      auto b = std::get<EstimateLemma>(second);
      return EstimateLemma{a.estimate + b.estimate, a.radius + b.radius,
                           a.delta + b.delta};
    }
    case SpecKind::kProd: {
      auto a = std::get<EstimateLemma>(first);
      auto b = std::get<EstimateLemma>(second);
      const double radius = std::fabs(a.estimate) * b.radius +
                            std::fabs(b.estimate) * a.radius +
                            a.radius * b.radius;
      return EstimateLemma{a.estimate * b.estimate, radius,
                           a.delta + b.delta};
    }
    case SpecKind::kAnd: {
      auto a = std::get<BoolLemma>(first);
      auto b = std::get<BoolLemma>(second);
      return BoolLemma{a.value && b.value, a.gamma + b.gamma};
    }
    case SpecKind::kOr: {
      auto a = std::get<BoolLemma>(first);
      auto b = std::get<BoolLemma>(second);
      return BoolLemma{a.value || b.value, a.gamma + b.gamma};
    }
    default:
      break;
  }
  throw InvalidExpression("unknown node kind in inference");
}

}  // namespace

InferResult Infer(const SpecExpr& spec, const LemmaEnv& env) {
  std::vector<int> path;
  return InferAt(spec, env, path);
}

}  // namespace fairverify
