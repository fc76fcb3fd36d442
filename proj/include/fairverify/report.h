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

// JSON run reports.
//
//   {
//     "schema_version": 1,
//     "answer": "fair" | "unfair" | "undecided",
//     "reason": null | "sample_cap" | "timeout" | "rejection_exhausted",
//     "gamma": number | null,      "delta": number,
//     "delta_z": number,           "delta_weight": integer,
//     "iterations": integer,       "seed": integer,
//     "wall_seconds": number,      "detail": string,
//     "variables": [{"name", "n", "mean", "epsilon",
//                    "accepted", "total", "accept_rate"}, ...]
//   }
//
// `accepted` and `total` count population draws; accept_rate is their ratio.

#ifndef FAIRVERIFY_REPORT_H_
#define FAIRVERIFY_REPORT_H_

#include <string>
#include <string_view>

#include "fairverify/oracle.h"
#include "fairverify/verifier.h"

namespace fairverify {

inline constexpr int kReportSchemaVersion = 1;

std::string VerdictToJson(const Verdict& verdict);
// Throws ConfigError for documents that do not match the schema.
Verdict VerdictFromJson(std::string_view json_text);

std::string OracleToJson(const ExactMeans& exact, std::string_view method);

}  // namespace fairverify

#endif  // FAIRVERIFY_REPORT_H_
