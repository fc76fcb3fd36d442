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

// Problem bundles: a small TOML document naming the model, the classifier
// and either a built-in property or an explicit specification.
//
//   model = "job.model"             # paths are relative to the bundle
//   classifier = "job_tree.json"
//   property = "parity"             # parity | equal-opportunity | causal
//                                   # | group | regression | individual
//   majority = "is_male == 1"       # predicates in the model language
//   minority = "is_male == 0"
//   c = 0.2
//   delta = 1e-5
//
// Property-specific keys: `qualified` (equal-opportunity), `minorities`
// (group, a list), `mediator_attribute` and `mediator_value` (causal),
// `lambda` (individual), `form = "ratio" | "difference"` (parity and
// equal-opportunity).
//
// An explicit specification replaces `property` with `spec` (a file) or
// `spec_text`, plus one table per variable:
//
//   spec_text = "mu(a) - mu(b) >= 0.1"
//   [variables.a]
//   condition = "x == 1"            # optional; also model, classifier,
//                                   # mediator_attribute, mediator_value,
//                                   # pairwise, lambda
//
// Verifier options may appear at top level or in an [options] table:
// batch, seed, max_samples, timeout_secs, rejection_max_attempts, workers.
//
// Supported TOML: comments, bare keys, [table] and [a.b] headers, strings,
// numbers, booleans and arrays of these.

#ifndef FAIRVERIFY_BUNDLE_H_
#define FAIRVERIFY_BUNDLE_H_

#include <optional>
#include <string>
#include <string_view>

#include "fairverify/fairness.h"
#include "fairverify/verifier.h"

namespace fairverify {

struct Bundle {
  FairnessProblem problem;
  VerifierConfig config;
  std::string property;
};

// Replaces the bundle's `c` before the problem is built.
struct BundleOverrides {
  std::optional<double> c;
};

// Throws ConfigError (naming the file for unreadable paths), ParseError or
// the builders' errors.
Bundle LoadBundle(const std::string& path,
                  const BundleOverrides& overrides = {});
// `base_dir` resolves relative paths.
Bundle ParseBundle(std::string_view text, const std::string& base_dir,
                   const BundleOverrides& overrides = {});

}  // namespace fairverify

#endif  // FAIRVERIFY_BUNDLE_H_
