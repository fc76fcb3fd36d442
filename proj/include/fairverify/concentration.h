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

#ifndef FAIRVERIFY_CONCENTRATION_H_
#define FAIRVERIFY_CONCENTRATION_H_

#include <cstdint>
#include <string>

namespace fairverify {

// Running count and sum of [0,1]-valued samples for one random variable.
// The sum is kept with Neumaier compensation, so the mean stays exact to
// working precision across very long streams.
class EstimatorState {
 public:
  EstimatorState() = default;
  explicit EstimatorState(std::string name) : name_(std::move(name)) {}

  // Throws OutOfRangeSample unless 0 <= sample <= 1.
  void Update(double sample);

  const std::string& name() const { return name_; }
  std::uint64_t count() const { return count_; }
  double sum() const { return sum_ + compensation_; }
  // Requires count() >= 1; throws InvalidCount otherwise.
  double mean() const;

 private:
  std::string name_;
  std::uint64_t count_ = 0;
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Value-semantics form of EstimatorState::Update.
EstimatorState Updated(EstimatorState state, double sample);

// Radius of the anytime-valid confidence interval for the mean of n
// samples of a [0,1] variable:
//
//   sqrt( (3/5 * ln(ln(n)/ln(1.1) + 1) + 5/9 * ln(24/delta)) / n )
//
// The bound holds at any data-dependent stopping time that is finite with
// probability one. Natural logarithms throughout; the result is not clamped.
// Throws InvalidDelta unless 0 < delta < 1 and InvalidCount when n == 0.
double AdaptiveEpsilon(double delta, std::uint64_t n);

// Fixed-n Hoeffding radius sqrt(ln(2/delta) / (2n)). Not valid under
// adaptive stopping; kept as a baseline for comparison.
double HoeffdingEpsilon(double delta, std::uint64_t n);

}  // namespace fairverify

#endif  // FAIRVERIFY_CONCENTRATION_H_
