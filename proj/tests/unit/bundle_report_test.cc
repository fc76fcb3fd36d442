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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "fairverify/bundle.h"
#include "fairverify/error.h"
#include "fairverify/report.h"

namespace fairverify {
namespace {

const std::string kData = FAIRVERIFY_SOURCE_DIR "/data";

TEST(Bundle, JobBundle) {
  const Bundle b = LoadBundle(kData + "/job/job.toml");
  EXPECT_EQ(b.property, "parity");
  EXPECT_EQ(b.problem.c, 0.2);
  EXPECT_EQ(b.problem.spec, ParseSpec("mu(min) / mu(maj) >= 0.8"));
  EXPECT_EQ(b.config.delta, 1e-10);
  EXPECT_EQ(b.config.seed, 1u);
  EXPECT_EQ(b.config.batch_size, 1u);
}

TEST(Bundle, Overrides) {
  BundleOverrides o;
  o.c = 0.05;
  const Bundle b = LoadBundle(kData + "/job/job.toml", o);
  EXPECT_EQ(b.problem.spec, ParseSpec("mu(min) / mu(maj) >= 0.95"));
}

TEST(Bundle, TomlSyntax) {
  const std::string dir = kData + "/job";
  const Bundle b = ParseBundle(R"(
    # comment
    model = 'job.model'       # literal string
    classifier = "job_tree.json"
    spec_text = "mu(a) - mu(b) >= -1e-1 && mu(a) >= 0"
    c = 1_0e-2
    [options]
    batch = 16
    workers = 2
    timeout_secs = 2.5
    max_samples = 1_000
    [variables.a]
    condition = "is_male == 1"
    [variables.b]
    condition = "is_male == 0"
    lambda = inf
  )", dir);
  EXPECT_EQ(b.property, "spec");
  EXPECT_EQ(b.config.batch_size, 16u);
  EXPECT_EQ(b.config.workers, 2u);
  EXPECT_EQ(b.config.timeout_seconds, 2.5);
  EXPECT_EQ(b.config.max_samples, 1000u);
  EXPECT_EQ(b.problem.c, 0.1);
  EXPECT_EQ(b.problem.bindings.size(), 2u);
  EXPECT_TRUE(std::isinf(b.problem.bindings.at("b").lambda));
  EXPECT_EQ(b.problem.bindings.at("a").condition.text(), "is_male == 1");
}

TEST(Bundle, AllProperties) {
  const std::string dir = kData + "/college";
  const std::string common =
      "model = \"college.model\"\nclassifier = \"college_linear.json\"\n"
      "majority = \"is_male == 1\"\nminority = \"is_male == 0\"\nc = 0.1\n";
  EXPECT_EQ(ParseBundle(common + "property = \"equal-opportunity\"\n"
                                 "qualified = \"score >= 1\"\n", dir)
                .problem.bindings.size(), 2u);
  EXPECT_EQ(ParseBundle(common + "property = \"group\"\nminorities = [\n"
                                 "  \"is_male == 0\",\n  \"score == 2\",\n]\n", dir)
                .problem.bindings.size(), 3u);
  EXPECT_EQ(DeltaWeight(ParseBundle(common + "property = \"regression\"\n", dir)
                            .problem.spec), 4u);
  EXPECT_TRUE(ParseBundle(common + "property = \"individual\"\nlambda = 2\n", dir)
                  .problem.bindings.at("r").pairwise);
  EXPECT_TRUE(ParseBundle(common + "property = \"causal\"\n"
                                   "mediator_attribute = \"is_male\"\n"
                                   "mediator_value = 1\n", dir)
                  .problem.bindings.at("min").mediator_override.has_value());
}

TEST(Bundle, Errors) {
  const std::string dir = kData + "/job";
  const std::string base =
      "model = \"job.model\"\nclassifier = \"job_tree.json\"\n";
  auto bad = [&](const std::string& text) { return ParseBundle(base + text, dir); };
  EXPECT_THROW(bad("c = 0.2\n"), ConfigError);  // neither property nor spec
  EXPECT_THROW(bad("property = \"parity\"\nspec_text = \"mu(a) >= 0\"\n"),
               ConfigError);
  EXPECT_THROW(bad("property = \"nope\"\nc = 0.1\n"), ConfigError);
  EXPECT_THROW(bad("property = \"parity\"\nc = 0.1\nmajority = \"is_male\"\n"),
               ConfigError);  // no minority
  EXPECT_THROW(bad("property = \"parity\"\nc = 0.1\ncolour = 1\n"), ConfigError);
  EXPECT_THROW(bad("property = \"parity\"\nc = 0.1\nc = 0.2\n"), ParseError);
  EXPECT_THROW(bad("property = \"parity\nc = 0.1\n"), ParseError);
  EXPECT_THROW(bad("property = \"parity\"\nc = 0.1\nbatch = -1\n"
                   "majority = \"is_male\"\nminority = \"!is_male\"\n"),
               ConfigError);
  EXPECT_THROW(bad("spec_text = \"mu(a) >= 0\"\n[variables.b]\n"), ConfigError);
  try {
    ParseBundle("model = \"gone.model\"\nclassifier = \"job_tree.json\"\n"
                "property = \"parity\"\nc = 0.1\nmajority = \"x\"\nminority = \"y\"\n",
                dir);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("gone.model"), std::string::npos);
  }
}

TEST(Report, RoundTrip) {
  Verdict v;
  v.answer = Answer::kFair;
  v.gamma = 1e-10;
  v.delta = 1e-10;
  v.delta_z = 5e-11;
  v.delta_weight = 2;
  v.iterations = 12345;
  v.seed = 7;
  v.wall_seconds = 1.25;
  v.detail = "decided";
  v.variables.push_back({"maj", 12345, 0.9781234567890123, 0.0123, 12345, 24690});
  v.variables.push_back({"min", 12345, 0.8465, 0.0125, 12345, 24701});
  const Verdict back = VerdictFromJson(VerdictToJson(v));
  EXPECT_EQ(VerdictToJson(back), VerdictToJson(v));
  EXPECT_EQ(back.variables[0].mean, v.variables[0].mean);
  EXPECT_EQ(back.gamma, v.gamma);

  Verdict u;
  u.answer = Answer::kUndecided;
  u.reason = UndecidedReason::kSampleCap;
  const Verdict u2 = VerdictFromJson(VerdictToJson(u));
  EXPECT_EQ(u2.reason, UndecidedReason::kSampleCap);
  EXPECT_FALSE(u2.gamma.has_value());
}

TEST(Report, Schema) {
  Verdict v;
  v.answer = Answer::kUnfair;
  v.gamma = 0.01;
  v.variables.push_back({"z", 10, 0.5, 0.1, 5, 20});
  const std::string text = VerdictToJson(v);
  for (const char* key : {"\"schema_version\": 1", "\"answer\": \"unfair\"",
                          "\"reason\": null", "\"accept_rate\": 0.25",
                          "\"total\": 20", "\"epsilon\": 0.1"}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
  EXPECT_THROW(VerdictFromJson("{}"), ConfigError);
  EXPECT_THROW(VerdictFromJson("not json"), ConfigError);
}

}  // namespace
}  // namespace fairverify
