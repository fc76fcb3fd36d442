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

#include "fairverify/report.h"

#include "fairverify/error.h"
#include "json.hpp"

namespace fairverify {

namespace {

using nlohmann::json;

template <class Enum>
Enum FromName(const std::string& name, std::initializer_list<Enum> values,
              std::string_view (*namer)(Enum)) {
  for (Enum e : values) {
    if (namer(e) == name) return e;
  }
  throw ConfigError("report: unknown value '" + name + "'");
}

}  // namespace

std::string VerdictToJson(const Verdict& v) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["answer"] = AnswerName(v.answer);
  j["reason"] = v.answer == Answer::kUndecided
                    ? json(UndecidedReasonName(v.reason))
                    : json(nullptr);
  j["gamma"] = v.gamma ? json(*v.gamma) : json(nullptr);
  j["delta"] = v.delta;
  j["delta_z"] = v.delta_z;
  j["delta_weight"] = v.delta_weight;
  j["iterations"] = v.iterations;
  j["seed"] = v.seed;
  j["wall_seconds"] = v.wall_seconds;
  j["detail"] = v.detail;
  json vars = json::array();
  for (const VariableReport& r : v.variables) {
    vars.push_back({{"name", r.name},
                    {"n", r.n},
                    {"mean", r.mean},
                    {"epsilon", r.epsilon},
                    {"accepted", r.accepted},
                    {"total", r.attempts},
                    {"accept_rate", r.attempts > 0
                                        ? static_cast<double>(r.accepted) /
                                              static_cast<double>(r.attempts)
                                        : 0.0}});
  }
  j["variables"] = std::move(vars);
  return j.dump(2);
}

Verdict VerdictFromJson(std::string_view text) {
  try {
    const json j = json::parse(text.begin(), text.end());
    if (j.at("schema_version").get<int>() != kReportSchemaVersion) {
      throw ConfigError("report: unsupported schema version");
    }
    Verdict v;
    v.answer = FromName<Answer>(
        j.at("answer").get<std::string>(),
        {Answer::kFair, Answer::kUnfair, Answer::kUndecided}, AnswerName);
    v.reason = j.at("reason").is_null()
                   ? UndecidedReason::kNone
                   : FromName<UndecidedReason>(
                         j.at("reason").get<std::string>(),
                         {UndecidedReason::kSampleCap, UndecidedReason::kTimeout,
                          UndecidedReason::kRejectionExhausted},
                         UndecidedReasonName);
    if (!j.at("gamma").is_null()) v.gamma = j.at("gamma").get<double>();
    v.delta = j.at("delta").get<double>();
    v.delta_z = j.at("delta_z").get<double>();
    v.delta_weight = j.at("delta_weight").get<std::size_t>();
    v.iterations = j.at("iterations").get<std::uint64_t>();
    v.seed = j.at("seed").get<std::uint64_t>();
    v.wall_seconds = j.at("wall_seconds").get<double>();
    v.detail = j.at("detail").get<std::string>();
    for (const json& r : j.at("variables")) {
      VariableReport out;
      out.name = r.at("name").get<std::string>();
      out.n = r.at("n").get<std::uint64_t>();
      out.mean = r.at("mean").get<double>();
      out.epsilon = r.at("epsilon").get<double>();
      out.accepted = r.at("accepted").get<std::uint64_t>();
      out.attempts = r.at("total").get<std::uint64_t>();
      v.variables.push_back(std::move(out));
    }
    return v;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report: ") + e.what());
  }
}

std::string OracleToJson(const ExactMeans& exact, std::string_view method) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["mode"] = "oracle";
  j["method"] = method;
  j["answer"] = exact.truth ? "fair" : "unfair";
  json means = json::object();
  for (const auto& [name, mean] : exact.means) means[name] = mean;
  j["means"] = std::move(means);
  return j.dump(2);
}

}  // namespace fairverify
