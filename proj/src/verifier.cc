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

#include "fairverify/verifier.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <thread>

#include "fairverify/concentration.h"
#include "fairverify/error.h"
#include "fairverify/inference.h"
#include "fairverify/kernels.h"

namespace fairverify {

namespace {

using Clock = std::chrono::steady_clock;

// Below this many samples per worker, threads cost more than they save.
constexpr std::uint64_t kMinSamplesPerWorker = 256;

struct Variable {
  std::string name;
  const SampledVariable* spec = nullptr;
  std::uint64_t ordinal = 0;
  std::unique_ptr<BoundClassifier> bound;
  std::size_t stride = 0;
  std::vector<std::size_t> distance_slots;
  EstimatorState estimator;
  std::uint64_t accepted = 0;
  std::uint64_t attempts = 0;
  double epsilon = 0.0;
};

// Scratch owned by one thread.
struct Workspace {
  std::vector<double> rows_a;
  std::vector<double> rows_b;
  std::vector<double> out_b;
  std::vector<double> col_a;
  std::vector<double> col_b;
};

// Draws one conditioned member into `row` and returns the attempt count.
std::uint64_t DrawMember(const Variable& v, std::uint64_t seed,
                         std::uint64_t role, std::uint64_t index,
                         std::uint64_t max_attempts, FeatureRecord& record,
                         double* row) {
  const SampledVariable& s = *v.spec;
  RngStream rng(seed, 2 * v.ordinal + role, index);
  const std::uint64_t attempts =
      RejectionSampleInto(s.model, s.condition, rng, max_attempts, record);
  if (s.mediator_override) {
    s.model.OverrideMediator(*s.mediator_override, rng, record);
  }
  std::copy(record.values().begin(), record.values().end(), row);
  return attempts;
}

// Values of samples [begin, begin + count) of `v`. Throws
// RejectionExhausted with the attempts spent so far folded into `attempts`.
void Produce(const Variable& v, std::uint64_t seed, std::uint64_t begin,
             std::size_t count, std::uint64_t max_attempts, double* out,
             std::uint64_t& attempts, Workspace& ws) {
  const SampledVariable& s = *v.spec;
  const std::size_t stride = v.stride;
  FeatureRecord record(s.model.schema(), {});
  ws.rows_a.resize(count * stride);
  if (s.pairwise) ws.rows_b.resize(count * stride);
  for (std::size_t i = 0; i < count; ++i) {
    try {
      attempts += DrawMember(v, seed, 0, begin + i, max_attempts, record,
                             ws.rows_a.data() + i * stride);
      if (s.pairwise) {
        attempts += DrawMember(v, seed, 1, begin + i, max_attempts, record,
                               ws.rows_b.data() + i * stride);
      }
    } catch (const RejectionExhausted& e) {
      attempts += e.attempts();
      throw;
    }
  }
  v.bound->EvaluateBatch(ws.rows_a.data(), count, stride, out);
  if (!s.pairwise) return;

  ws.out_b.resize(count);
  v.bound->EvaluateBatch(ws.rows_b.data(), count, stride, ws.out_b.data());
  // L1 distance over the returned variables, one column at a time.
  const KernelTable& k = ActiveKernels();
  std::vector<double> distance(count, 0.0);
  ws.col_a.resize(count);
  ws.col_b.resize(count);
  for (std::size_t slot : v.distance_slots) {
    for (std::size_t i = 0; i < count; ++i) {
      ws.col_a[i] = ws.rows_a[i * stride + slot];
      ws.col_b[i] = ws.rows_b[i * stride + slot];
    }
    k.abs_diff_accumulate(distance.data(), ws.col_a.data(), ws.col_b.data(),
                          count);
  }
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = PairwiseIndicator(std::fabs(out[i] - ws.out_b[i]), distance[i],
                               s.lambda);
  }
}

// Produce split over worker threads; chunks are contiguous index ranges,
// so the values are identical to a single-threaded call.
void ProduceParallel(const Variable& v, std::uint64_t seed, std::uint64_t begin,
                     std::size_t count, const VerifierConfig& config,
                     double* out, std::uint64_t& attempts,
                     std::vector<Workspace>& spaces) {
  std::size_t workers = std::min<std::size_t>(
      config.workers, std::max<std::size_t>(1, count / kMinSamplesPerWorker));
  if (!v.spec->classifier->is_shareable()) workers = 1;
  if (workers <= 1) {
    Produce(v, seed, begin, count, config.rejection_max_attempts, out, attempts,
            spaces[0]);
    return;
  }
  std::vector<std::uint64_t> chunk_attempts(workers, 0);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  const std::size_t per = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = std::min(count, w * per);
    const std::size_t hi = std::min(count, lo + per);
    threads.emplace_back([&, w, lo, hi] {
      try {
        Produce(v, seed, begin + lo, hi - lo, config.rejection_max_attempts,
                out + lo, chunk_attempts[w], spaces[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : threads) t.join();
  for (std::size_t w = 0; w < workers; ++w) attempts += chunk_attempts[w];
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::string_view AnswerName(Answer answer) {
  switch (answer) {
    case Answer::kFair: return "fair";
    case Answer::kUnfair: return "unfair";
    case Answer::kUndecided: return "undecided";
  }
  return "unknown";
}

std::string_view UndecidedReasonName(UndecidedReason reason) {
  switch (reason) {
    case UndecidedReason::kNone: return "none";
    case UndecidedReason::kSampleCap: return "sample_cap";
    case UndecidedReason::kTimeout: return "timeout";
    case UndecidedReason::kRejectionExhausted: return "rejection_exhausted";
  }
  return "unknown";
}

std::uint64_t Verdict::total_samples() const {
  std::uint64_t total = 0;
  for (const VariableReport& v : variables) total += v.n;
  return total;
}

void ValidateConfig(const VerifierConfig& config) {
  if (!(config.delta > 0.0 && config.delta < 1.0)) {
    throw ConfigError("delta must lie in (0, 1)");
  }
  if (config.batch_size < 1) throw ConfigError("batch size must be at least 1");
  if (config.rejection_max_attempts < 1) {
    throw ConfigError("rejection attempt limit must be at least 1");
  }
  if (config.timeout_seconds && !(*config.timeout_seconds >= 0.0)) {
    throw ConfigError("timeout must be nonnegative");
  }
  if (config.workers < 1) throw ConfigError("workers must be at least 1");
}

FailureMass LeafMass(double delta, std::size_t weight) {
  if (weight == 0) return 0.0;
  const double m = static_cast<double>(weight);
  const double hi = delta / m;
  // delta - m * hi is exact for a correctly rounded quotient.
  const double rest = std::fma(-m, hi, delta);
  double lo = rest / m;
  // fma gives the sign of m * lo - rest exactly.
  while (std::fma(m, lo, -rest) > 0.0) {
    lo = std::nextafter(lo, -std::numeric_limits<double>::infinity());
  }
  return FailureMass::FromParts(hi, lo);
}

double LeafDelta(double delta, std::size_t weight) {
  const FailureMass z = LeafMass(delta, weight);
  return z.lo() < 0.0 ? std::nextafter(z.hi(), 0.0) : z.hi();
}

Verdict Verify(const FairnessProblem& problem, const VerifierConfig& config) {
  const Clock::time_point start = Clock::now();
  ValidateConfig(config);
  ValidateProblem(problem);

  Verdict verdict;
  verdict.delta = config.delta;
  verdict.seed = config.seed;
  verdict.delta_weight = DeltaWeight(problem.spec);
  const FailureMass leaf_mass = LeafMass(config.delta, verdict.delta_weight);
  const double leaf_delta = LeafDelta(config.delta, verdict.delta_weight);
  verdict.delta_z = leaf_mass.value();

  auto finish = [&](Verdict& v) -> Verdict& {
    v.wall_seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    return v;
  };
  auto decide = [&](const BoolLemma& lemma) {
    verdict.answer = lemma.value ? Answer::kFair : Answer::kUnfair;
    verdict.gamma = lemma.gamma.value();
  };

  if (verdict.delta_weight == 0) {
    // Nothing to estimate: the formula is decided by its constants.
    decide(std::get<BoolLemma>(Infer(problem.spec, {})));
    return finish(verdict);
  }

  std::vector<Variable> vars;
  std::uint64_t ordinal = 0;
  for (const auto& [name, binding] : problem.bindings) {
    Variable v;
    v.name = name;
    v.spec = &binding;
    v.ordinal = ordinal++;
    v.bound = binding.classifier->Bind(binding.model.schema());
    v.stride = binding.model.schema()->size();
    v.distance_slots = binding.model.schema()->outputs();
    v.estimator = EstimatorState(name);
    vars.push_back(std::move(v));
  }

  LemmaEnv env;
  for (const Variable& v : vars) env.emplace(v.name, EstimateLemma{});

  std::vector<Workspace> spaces(std::max(1u, config.workers));
  std::vector<double> values;
  std::uint64_t n = 0;

  auto report = [&] {
    verdict.variables.clear();
    for (const Variable& v : vars) {
      VariableReport r;
      r.name = v.name;
      r.n = v.estimator.count();
      r.mean = r.n > 0 ? v.estimator.mean() : 0.0;
      r.epsilon = v.epsilon;
      r.accepted = v.accepted;
      r.attempts = v.attempts;
      verdict.variables.push_back(std::move(r));
    }
  };

  for (;;) {
    if (config.max_samples != 0 && n >= config.max_samples) {
      verdict.reason = UndecidedReason::kSampleCap;
      break;
    }
    if (config.timeout_seconds &&
        std::chrono::duration<double>(Clock::now() - start).count() >=
            *config.timeout_seconds) {
      verdict.reason = UndecidedReason::kTimeout;
      break;
    }
    std::uint64_t count = config.batch_size;
    if (config.max_samples != 0) count = std::min(count, config.max_samples - n);

    bool exhausted = false;
    for (Variable& v : vars) {
      values.resize(count);
      try {
        ProduceParallel(v, config.seed, n, count, config, values.data(),
                        v.attempts, spaces);
      } catch (const RejectionExhausted& e) {
        verdict.reason = UndecidedReason::kRejectionExhausted;
        verdict.detail = "variable '" + v.name + "': " + e.what();
        exhausted = true;
        break;
      }
      for (double x : values) v.estimator.Update(x);
      v.accepted += count * (v.spec->pairwise ? 2 : 1);
    }
    if (exhausted) break;
    n += count;
    ++verdict.iterations;

    for (Variable& v : vars) {
      v.epsilon = AdaptiveEpsilon(leaf_delta, v.estimator.count());
      EstimateLemma& lemma = env.find(v.name)->second;
      lemma.estimate = v.estimator.mean();
      lemma.radius = v.epsilon;
      lemma.delta = leaf_mass;
    }
    const InferResult result = Infer(problem.spec, env);
    if (const auto* lemma = std::get_if<BoolLemma>(&result)) {
      if (lemma->gamma.value() <= config.delta) {
        decide(*lemma);
        break;
      }
    }
  }
  report();
  return finish(verdict);
}

}  // namespace fairverify
