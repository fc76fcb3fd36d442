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

// Adaptive-sampling verifier.
//
// Each iteration draws one batch for every variable, then builds the leaf
// lemmas mu_Z : (mean, eps(delta_Z, n_Z), delta_Z) with delta_Z = Delta / m,
// m the number of mu leaves, and runs inference. The run stops with the
// inferred answer as soon as a boolean lemma with gamma <= Delta appears.
//
// delta_Z is Delta / m rounded down far enough that m * delta_Z <= Delta
// holds exactly; failure masses are summed without rounding error, so a
// decided run reports gamma = m * delta_Z, within one ulp of Delta.
//
// Sample i of variable k uses the random stream (seed, 2k + role, i), role
// 1 being the second member of a pairwise draw. Verdicts therefore do not
// depend on batch boundaries or on the number of workers, only on the seed
// and on where the run stops.

#ifndef FAIRVERIFY_VERIFIER_H_
#define FAIRVERIFY_VERIFIER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairverify/fairness.h"
#include "fairverify/inference.h"

namespace fairverify {

struct VerifierConfig {
  double delta = 1e-5;
  std::uint64_t batch_size = 1;
  // Per variable; 0 means no cap.
  std::uint64_t max_samples = 100'000'000;
  // Wall-clock limit in seconds.
  std::optional<double> timeout_seconds;
  std::uint64_t seed = 0;
  std::uint64_t rejection_max_attempts = 1'000'000;
  // Threads used to draw and classify large batches.
  unsigned workers = 1;
};

// Throws ConfigError for out-of-range fields.
void ValidateConfig(const VerifierConfig& config);

enum class Answer { kFair, kUnfair, kUndecided };
enum class UndecidedReason { kNone, kSampleCap, kTimeout, kRejectionExhausted };

std::string_view AnswerName(Answer answer);
std::string_view UndecidedReasonName(UndecidedReason reason);

struct VariableReport {
  std::string name;
  std::uint64_t n = 0;
  double mean = 0.0;
  // Radius at the last check; 0 before the first sample.
  double epsilon = 0.0;
  // Accepted population draws (two per sample for pairwise variables) and
  // all draws including rejected ones.
  std::uint64_t accepted = 0;
  std::uint64_t attempts = 0;
};

struct Verdict {
  Answer answer = Answer::kUndecided;
  UndecidedReason reason = UndecidedReason::kNone;
  // Set on decided runs.
  std::optional<double> gamma;
  double delta = 0.0;
  double delta_z = 0.0;
  std::size_t delta_weight = 0;
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
  std::vector<VariableReport> variables;
  double wall_seconds = 0.0;
  std::string detail;

  std::uint64_t total_samples() const;
};

// Per-leaf confidence budget delta_Z = Delta / m as a double-double, with
// m * delta_Z <= Delta in exact arithmetic. Kept in two parts so that the
// reported gamma = m * delta_Z rounds to Delta itself.
FailureMass LeafMass(double delta, std::size_t weight);
// Largest double not above LeafMass(delta, weight); the confidence level
// passed to the concentration bound.
double LeafDelta(double delta, std::size_t weight);

// Throws ConfigError (or a subclass) for malformed problems or configs;
// everything else ends in a verdict.
Verdict Verify(const FairnessProblem& problem, const VerifierConfig& config);

}  // namespace fairverify

#endif  // FAIRVERIFY_VERIFIER_H_
