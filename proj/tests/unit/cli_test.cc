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
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fairverify/report.h"
#include "json.hpp"

namespace fairverify {
namespace {

const std::string kData = FAIRVERIFY_SOURCE_DIR "/data";

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun Cli(const std::string& args) {
  const std::string cmd = std::string(FAIRVERIFY_CLI) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() /
          ("fairverify_cli_" + std::to_string(::getpid()) + "_" + name))
      .string();
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Cli, JobIsFair) {
  const std::string report = TempPath("job.json");
  const CliRun r = Cli("verify --bundle " + kData +
                    "/job/job.toml --delta 1e-10 --seed 7 --quiet --report " +
                    report);
  EXPECT_EQ(r.status, 0) << r.out;
  const Verdict v = VerdictFromJson(Slurp(report));
  EXPECT_EQ(v.answer, Answer::kFair);
  EXPECT_EQ(v.seed, 7u);
  EXPECT_EQ(v.delta, 1e-10);
  ASSERT_EQ(v.variables.size(), 2u);
  std::filesystem::remove(report);
}

TEST(Cli, SeedReproducible) {
  const std::string args =
      "verify --bundle " + kData + "/college/college_parity.toml --seed 3";
  auto strip = [](const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    j.erase("wall_seconds");
    return j.dump();
  };
  const CliRun a = Cli(args), b = Cli(args);
  EXPECT_EQ(a.status, 1);
  EXPECT_EQ(strip(a.out), strip(b.out));
}

TEST(Cli, Oracle) {
  const CliRun r = Cli("verify --bundle " + kData + "/job/job.toml --oracle");
  EXPECT_EQ(r.status, 0) << r.out;
  const nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("method"), "gaussian-tree");
  EXPECT_NEAR(j.at("means").at("maj").get<double>(), 0.97776743655548035705,
              1e-15);
  const CliRun d = Cli("verify --bundle " + kData + "/college/college.toml --oracle");
  EXPECT_EQ(nlohmann::json::parse(d.out).at("method"), "discrete");
}

TEST(Cli, FlagOverrides) {
  // c = 0.05 makes the job instance unfair (ratio is about 0.864).
  const CliRun r = Cli("verify --bundle " + kData +
                    "/job/job.toml --c 0.05 --delta 1e-3 --batch 64 --workers 2");
  EXPECT_EQ(r.status, 1) << r.out;
  const CliRun capped = Cli("verify --bundle " + kData +
                         "/job/job.toml --c 0.136 --max-samples 500");
  EXPECT_EQ(capped.status, 2) << capped.out;
  EXPECT_NE(capped.out.find("sample_cap"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(Cli("").status, 64);
  EXPECT_EQ(Cli("verify").status, 64);
  EXPECT_EQ(Cli("verify --bundle " + kData + "/job/job.toml --delta 2").status, 64);
  EXPECT_EQ(Cli("verify --bundle " + kData + "/job/job.toml --simd mmx").status, 64);
  EXPECT_EQ(Cli("--help").status, 0);
}

TEST(Cli, MissingModelIsNamed) {
  const std::string dir = TempPath("bundle");
  std::filesystem::create_directories(dir);
  std::ofstream(dir + "/b.toml")
      << "model = \"absent.model\"\nclassifier = \"c.json\"\n"
         "property = \"parity\"\nc = 0.2\nmajority = \"a\"\nminority = \"b\"\n";
  const CliRun r = Cli("verify --bundle " + dir + "/b.toml");
  EXPECT_EQ(r.status, 64);
  EXPECT_NE(r.out.find("absent.model"), std::string::npos) << r.out;
  EXPECT_EQ(Cli("verify --bundle " + dir + "/none.toml").status, 64);
  std::filesystem::remove_all(dir);
}

TEST(Cli, RuntimeErrorsAreReported) {
  const std::string dir = TempPath("runtime");
  std::filesystem::create_directories(dir);
  std::ofstream(dir + "/m.model") << "x ~ gaussian(3, 1)\nreturn x\n";
  std::ofstream(dir + "/c.json") << R"({"type":"feature","feature":"x"})";
  std::ofstream(dir + "/b.toml")
      << "model = \"m.model\"\nclassifier = \"c.json\"\n"
         "spec_text = \"mu(z) >= 0.5\"\n";
  const std::string report = dir + "/r.json";
  const CliRun r = Cli("verify --bundle " + dir + "/b.toml --quiet --report " + report);
  EXPECT_EQ(r.status, 70) << r.out;
  EXPECT_EQ(nlohmann::json::parse(Slurp(report)).at("answer"), "error");
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace fairverify
