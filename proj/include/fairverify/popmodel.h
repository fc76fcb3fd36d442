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

// Population models: small loop-free probabilistic programs that return one
// random member of a population.
//
//   is_male ~ bernoulli(0.5)
//   col_rank ~ gaussian(25, 10)
//   if is_male {
//     years_exp ~ gaussian(15, 5)
//   } else {
//     years_exp ~ gaussian(10, 5)
//   }
//   return is_male, col_rank, years_exp
//
// Statements are separated by newlines or `;`:
//
//   x ~ bernoulli(p) | gaussian(mean, sd) | normal(mean, sd)
//     | uniform(lo, hi) | categorical(w0, w1, ...)
//   x = expr
//   if expr { ... } else if expr { ... } else { ... }
//   mediator { ... }
//   return x, y, ...
//
// Expressions use + - * /, comparisons, && || !, `c ? a : b`, numbers and
// true/false. Every value is a double; booleans are 0 and 1, and a condition
// holds when its value is nonzero and not NaN. categorical returns the index
// of the drawn weight.
//
// Static checks at parse time: every read is of a definitely assigned
// variable, every path ends in a return, all returns name the same
// variables, and no statement follows a return. Distribution parameters are
// checked by interval analysis over all possible executions; a parameter
// that might leave its domain is rejected with InvalidParameter.
//
// At most one `mediator` block may appear, at top level, immediately before
// the final return. It can be re-executed with the sensitive attribute
// overridden while every other variable keeps its drawn value.

#ifndef FAIRVERIFY_POPMODEL_H_
#define FAIRVERIFY_POPMODEL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairverify/rng.h"

namespace fairverify {

namespace internal {
struct Program;
}  // namespace internal

// Variable names of a record layout. `outputs` are the returned features.
class Schema {
 public:
  Schema(std::vector<std::string> names, std::vector<std::size_t> outputs);
  // All names are outputs.
  explicit Schema(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::size_t>& outputs() const { return outputs_; }
  std::optional<std::size_t> IndexOf(std::string_view name) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> outputs_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// One member of a population. Unassigned variables hold NaN.
class FeatureRecord {
 public:
  FeatureRecord(std::shared_ptr<const Schema> schema,
                std::vector<double> values);
  static FeatureRecord FromMap(const std::map<std::string, double>& values);

  // Throws MissingFeature if `name` is unknown or unassigned.
  double Get(std::string_view name) const;
  bool Has(std::string_view name) const;

  const Schema& schema() const { return *schema_; }
  const std::shared_ptr<const Schema>& schema_ptr() const { return schema_; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }

  // Returned features only.
  std::map<std::string, double> Outputs() const;

 private:
  std::shared_ptr<const Schema> schema_;
  std::vector<double> values_;
};

// Boolean condition over a record, either compiled from model-language text
// or wrapping an arbitrary function.
class Predicate {
 public:
  // Always true.
  Predicate();
  static Predicate FromFunction(std::function<bool(const FeatureRecord&)> fn,
                                std::string description = "<function>");

  // Both must hold.
  static Predicate And(const Predicate& a, const Predicate& b);

  bool Holds(const FeatureRecord& record) const;
  bool is_trivial() const;
  const std::string& text() const;
  // Variables the predicate may read; nullopt for function predicates.
  std::optional<std::vector<std::string>> Reads() const;

 private:
  friend class PopulationModel;
  struct Impl;
  explicit Predicate(std::shared_ptr<const Impl> impl)
      : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

struct MediatorOverride {
  std::string attribute;
  double value = 0.0;
};

class PopulationModel {
 public:
  const std::shared_ptr<const Schema>& schema() const { return schema_; }
  std::vector<std::string> OutputNames() const;
  bool has_mediator() const;
  // True when the model uses only bernoulli and categorical.
  bool is_discrete() const;
  const std::string& source() const { return *source_; }

  FeatureRecord Sample(RngStream& rng) const;
  // Overwrites `out`, which must use this model's schema.
  void SampleInto(RngStream& rng, FeatureRecord& out) const;
  // Re-runs the mediator block on `record` with `attribute` overridden.
  // Throws NoMediatorBlock, or MissingFeature for an unknown attribute.
  void OverrideMediator(const MediatorOverride& override_spec, RngStream& rng,
                        FeatureRecord& record) const;

  // Compiles an expression in the model language. It may read only
  // variables assigned on every path to the return. Throws ParseError.
  Predicate CompilePredicate(std::string_view text) const;

  const internal::Program& program() const { return *program_; }

 private:
  friend PopulationModel ParseModel(std::string_view text);
  PopulationModel() = default;

  std::shared_ptr<const internal::Program> program_;
  std::shared_ptr<const Schema> schema_;
  std::shared_ptr<const std::string> source_;
};

// Throws ParseError or InvalidParameter.
PopulationModel ParseModel(std::string_view text);

struct Draw {
  FeatureRecord record;
  std::uint64_t attempts = 0;
};

// Samples until `predicate` holds. Throws RejectionExhausted after
// `max_attempts` failures.
Draw RejectionSample(const PopulationModel& model, const Predicate& predicate,
                     RngStream& rng, std::uint64_t max_attempts);
// In-place form; returns the attempt count.
std::uint64_t RejectionSampleInto(const PopulationModel& model,
                                  const Predicate& predicate, RngStream& rng,
                                  std::uint64_t max_attempts,
                                  FeatureRecord& out);

// Draws conditioned on `predicate`, then re-executes the mediator block with
// the attribute overridden. Throws NoMediatorBlock or RejectionExhausted.
Draw SampleWithMediatorOverride(const PopulationModel& model,
                                const Predicate& predicate,
                                const MediatorOverride& override_spec,
                                RngStream& rng, std::uint64_t max_attempts);

}  // namespace fairverify

#endif  // FAIRVERIFY_POPMODEL_H_
