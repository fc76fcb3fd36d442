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

#include "fairverify/concentration.h"

#include <cmath>
#include <string>

#include "fairverify/error.h"

namespace fairverify {

namespace {

void CheckArguments(double delta, std::uint64_t n) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidDelta("delta must lie in (0, 1), got " +
                       std::to_string(delta));
  }
  if (n == 0) throw InvalidCount("sample count must be at least 1");
}

}  // namespace

void EstimatorState::Update(double sample) {
  if (!(sample >= 0.0 && sample <= 1.0)) {
    throw OutOfRangeSample("sample " + std::to_string(sample) + " for '" +
                           name_ + "' is outside [0, 1]");
  }
  // Neumaier's variant of Kahan summation.
  const double t = sum_ + sample;
  if (std::fabs(sum_) >= sample) {
    compensation_ += (sum_ - t) + sample;
  } else {
    compensation_ += (sample - t) + sum_;
  }
  sum_ = t;
  ++count_;
}

double EstimatorState::mean() const {
  if (count_ == 0) throw InvalidCount("mean of an empty estimator");
  return sum() / static_cast<double>(count_);
}

EstimatorState Updated(EstimatorState state, double sample) {
  state.Update(sample);
  return state;
}

double AdaptiveEpsilon(double delta, std::uint64_t n) {
  CheckArguments(delta, n);
  const double nd = static_cast<double>(n);
  const double log_base = std::log(nd) / std::log(1.1);
  const double numerator = (3.0 / 5.0) * std::log(log_base + 1.0) +
                           (5.0 / 9.0) * std::log(24.0 / delta);
  return std::sqrt(numerator / nd);
}

double HoeffdingEpsilon(double delta, std::uint64_t n) {
  CheckArguments(delta, n);
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

}  // namespace fairverify
