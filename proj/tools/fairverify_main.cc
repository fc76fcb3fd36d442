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

// fairverify verify --bundle job.toml [--delta D] [--oracle] ...
//
// Exit status: 0 fair, 1 unfair, 2 undecided, 64 usage or configuration
// error, 70 error while sampling.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fairverify/bundle.h"
#include "fairverify/error.h"
#include "fairverify/kernels.h"
#include "fairverify/oracle.h"
#include "fairverify/report.h"
#include "fairverify/verifier.h"
#include "json.hpp"

namespace {

constexpr int kExitFair = 0;
constexpr int kExitUnfair = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitUsage = 64;
constexpr int kExitRuntime = 70;

struct Options {
  std::string bundle;
  std::optional<double> delta;
  std::optional<double> c;
  std::optional<std::uint64_t> batch;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> max_samples;
  std::optional<double> timeout_secs;
  std::optional<unsigned> workers;
  std::optional<std::string> simd;
  std::optional<std::string> report;
  bool oracle = false;
  bool quiet = false;
};

void Emit(const std::string& json_text, const Options& opts) {
  if (opts.report) {
    std::ofstream out(*opts.report);
    if (!out) {
      std::cerr << "fairverify: cannot write report '" << *opts.report << "'\n";
      return;
    }
    out << json_text << "\n";
  }
  if (!opts.quiet) std::cout << json_text << "\n";
}

std::string ErrorJson(const std::string& message) {
  nlohmann::json j;
  j["schema_version"] = fairverify::kReportSchemaVersion;
  j["answer"] = "error";
  j["detail"] = message;
  return j.dump(2);
}

int RunOracle(const fairverify::Bundle& bundle, const Options& opts) {
  using namespace fairverify;
  std::optional<ExactMeans> exact;
  std::string method;
  std::string why;
  try {
    exact = ExactMeansDiscrete(bundle.problem);
    method = "discrete";
  } catch (const UnsupportedContinuousPrimitive& e) {
    why = e.what();
  }
  if (!exact) {
    try {
      exact = ExactMeansGaussianTree(bundle.problem);
      method = "gaussian-tree";
    } catch (const UnsupportedShape& e) {
      std::cerr << "fairverify: no oracle applies: " << why << "; " << e.what()
                << "\n";
      return kExitUsage;
    }
  }
  Emit(OracleToJson(*exact, method), opts);
  return exact->truth ? kExitFair : kExitUnfair;
}

int Run(const Options& opts) {
  using namespace fairverify;
  Bundle bundle = [&] {
    BundleOverrides overrides;
    overrides.c = opts.c;
    return LoadBundle(opts.bundle, overrides);
  }();
  VerifierConfig& config = bundle.config;
  if (opts.delta) config.delta = *opts.delta;
  if (opts.batch) config.batch_size = *opts.batch;
  if (opts.seed) config.seed = *opts.seed;
  if (opts.max_samples) config.max_samples = *opts.max_samples;
  if (opts.timeout_secs) config.timeout_seconds = *opts.timeout_secs;
  if (opts.workers) config.workers = *opts.workers;
  if (opts.simd) {
    const auto level = ParseSimdLevel(*opts.simd);
    if (!level) throw ConfigError("unknown SIMD level '" + *opts.simd + "'");
    SetSimdLevel(*level);
  }
  ValidateConfig(config);
  ValidateProblem(bundle.problem);

  if (opts.oracle) return RunOracle(bundle, opts);

  Verdict verdict;
  try {
    verdict = Verify(bundle.problem, config);
  } catch (const ConfigError&) {
    throw;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    Emit(ErrorJson(e.what()), opts);
    std::cerr << "fairverify: " << e.what() << "\n";
    return kExitRuntime;
  }
  Emit(VerdictToJson(verdict), opts);
  switch (verdict.answer) {
    case Answer::kFair: return kExitFair;
    case Answer::kUnfair: return kExitUnfair;
    case Answer::kUndecided: return kExitUndecided;
  }
  return kExitUndecided;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statistical fairness verification of classifiers"};
  app.require_subcommand(1);
  Options opts;

  CLI::App* verify = app.add_subcommand("verify", "Verify a problem bundle");
  verify->add_option("--bundle", opts.bundle, "TOML problem bundle")->required();
  verify->add_option("--delta", opts.delta, "Failure probability bound");
  verify->add_option("--c", opts.c, "Fairness threshold");
  verify->add_option("--batch", opts.batch, "Samples per variable per step");
  verify->add_option("--seed", opts.seed, "Random seed");
  verify->add_option("--max-samples", opts.max_samples,
                     "Per-variable sample cap (0 for none)");
  verify->add_option("--timeout-secs", opts.timeout_secs, "Wall-clock limit");
  verify->add_option("--workers", opts.workers, "Sampling threads");
  verify->add_option("--simd", opts.simd, "Kernel level: scalar, avx2, neon");
  verify->add_option("--report", opts.report, "Write the JSON report here");
  verify->add_flag("--oracle", opts.oracle,
                   "Compute the exact answer instead of sampling");
  verify->add_flag("--quiet", opts.quiet, "Do not print the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    return Run(opts);
  } catch (const fairverify::Error& e) {
    std::cerr << "fairverify: " << e.what() << "\n";
    return kExitUsage;
  }
}
