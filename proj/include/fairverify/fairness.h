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

// Fairness properties as verification problems: a specification plus, for
// each mu leaf, the random variable whose expectation it denotes.

#ifndef FAIRVERIFY_FAIRNESS_H_
#define FAIRVERIFY_FAIRNESS_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairverify/classifier.h"
#include "fairverify/popmodel.h"
#include "fairverify/speclang.h"

namespace fairverify {

// The random variable f(V) with V ~ model | condition. With a mediator
// override the mediator block is re-run on each accepted V. A pairwise
// variable draws two independent members V, V' and takes the value
// 1[|f(V) - f(V')| <= lambda * |V - V'|_1], the distance summed over the
// model's returned variables.
struct SampledVariable {
  PopulationModel model;
  Predicate condition;
  std::optional<MediatorOverride> mediator_override;
  ClassifierPtr classifier;
  bool pairwise = false;
  double lambda = 1.0;
};

struct FairnessProblem {
  SpecExpr spec;
  std::map<std::string, SampledVariable> bindings;
  double c = 0.0;
};

// Throws ConfigError unless the bindings cover exactly the free variables
// of the specification and every binding is usable.
void ValidateProblem(const FairnessProblem& problem);

// Lipschitz indicator used by pairwise variables. An infinite lambda at
// distance zero counts the right-hand side as zero.
double PairwiseIndicator(double output_gap, double distance, double lambda);

enum class ParityForm {
  // mu(min) * inv(mu(maj)) - (1 - c) >= 0
  kRatio,
  // mu(min) - (1 - c) * mu(maj) >= 0; decides even when mu(maj) = 0.
  kDifference,
};

// Variables "min" and "maj". Throws InvalidParameter unless 0 <= c <= 1.
FairnessProblem BuildDemographicParity(double c, const Predicate& majority,
                                       const Predicate& minority,
                                       const PopulationModel& model,
                                       ClassifierPtr classifier,
                                       ParityForm form = ParityForm::kRatio);

// Demographic parity over the qualified members of each group.
FairnessProblem BuildEqualOpportunity(double c, const Predicate& majority,
                                      const Predicate& minority,
                                      const Predicate& qualified,
                                      const PopulationModel& model,
                                      ClassifierPtr classifier,
                                      ParityForm form = ParityForm::kRatio);

// mu(min) - mu(maj) + c >= 0, where minority members have their mediator
// re-drawn with `majority_attribute` applied. Throws NoMediatorBlock.
FairnessProblem BuildPathSpecific(double c, const Predicate& majority,
                                  const Predicate& minority,
                                  const MediatorOverride& majority_attribute,
                                  const PopulationModel& model,
                                  ClassifierPtr classifier);

// Conjunction of ratio parity for each minority group. One group gives the
// variable "min"; several give "min0", "min1", ... Throws EmptyMinoritySet.
FairnessProblem BuildGroupParity(double c, const Predicate& majority,
                                 const std::vector<Predicate>& minorities,
                                 const PopulationModel& model,
                                 ClassifierPtr classifier);

// |mu(maj) - mu(min)| <= c for a [0,1]-valued classifier.
FairnessProblem BuildRegressionParity(double c, const Predicate& majority,
                                      const Predicate& minority,
                                      const PopulationModel& model,
                                      ClassifierPtr classifier);

// mu(r) - (1 - c) >= 0 for the pairwise variable "r". Throws InvalidLambda
// unless lambda > 0 (infinity allowed).
FairnessProblem BuildIndividualFairness(double c, double lambda,
                                        const PopulationModel& model,
                                        ClassifierPtr classifier);

}  // namespace fairverify

#endif  // FAIRVERIFY_FAIRNESS_H_
