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

#include "fairverify/fairness.h"

#include <cmath>

#include "fairverify/error.h"

namespace fairverify {

namespace {

void CheckC(double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw InvalidParameter("c must lie in [0, 1], got " + std::to_string(c));
  }
}

SampledVariable Plain(const PopulationModel& model, const Predicate& condition,
                      ClassifierPtr classifier) {
  return SampledVariable{model, condition, std::nullopt, std::move(classifier),
                         false, 1.0};
}

SpecExpr RatioAtLeast(const std::string& num, const std::string& den,
                      double c) {
  return SpecExpr::GeqZero(SpecExpr::Sum(
      SpecExpr::Prod(SpecExpr::Mu(num), SpecExpr::Inv(SpecExpr::Mu(den))),
      SpecExpr::Neg(SpecExpr::Const(1.0 - c))));
}

SpecExpr ParitySpec(double c, ParityForm form) {
  if (form == ParityForm::kRatio) return RatioAtLeast("min", "maj", c);
  return SpecExpr::GeqZero(SpecExpr::Sum(
      SpecExpr::Mu("min"),
      SpecExpr::Neg(SpecExpr::Prod(SpecExpr::Const(1.0 - c),
                                   SpecExpr::Mu("maj")))));
}

// a - b + c >= 0
SpecExpr DifferenceAtLeast(const std::string& a, const std::string& b,
                           double c) {
  return SpecExpr::GeqZero(SpecExpr::Sum(
      SpecExpr::Sum(SpecExpr::Mu(a), SpecExpr::Neg(SpecExpr::Mu(b))),
      SpecExpr::Const(c)));
}

}  // namespace

void ValidateProblem(const FairnessProblem& problem) {
  if (!problem.spec.is_boolean()) {
    throw ConfigError("specification must be a boolean formula");
  }
  const std::set<std::string> free = FreeVariables(problem.spec);
  for (const std::string& name : free) {
    if (!problem.bindings.count(name)) {
      throw ConfigError("specification variable '" + name + "' has no binding");
    }
  }
  for (const auto& [name, var] : problem.bindings) {
    if (!free.count(name)) {
      throw ConfigError("binding '" + name +
                        "' does not occur in the specification");
    }
    if (!var.classifier) {
      throw ConfigError("binding '" + name + "' has no classifier");
    }
    if (var.mediator_override && !var.model.has_mediator()) {
      throw NoMediatorBlock("binding '" + name +
                            "' overrides a mediator but the model has none");
    }
    if (var.pairwise && !(var.lambda > 0.0)) {
      throw InvalidLambda("binding '" + name + "': lambda must be positive");
    }
  }
}

double PairwiseIndicator(double output_gap, double distance, double lambda) {
  const double bound =
      (std::isinf(lambda) && distance == 0.0) ? 0.0 : lambda * distance;
  return output_gap <= bound ? 1.0 : 0.0;
}

FairnessProblem BuildDemographicParity(double c, const Predicate& majority,
                                       const Predicate& minority,
                                       const PopulationModel& model,
                                       ClassifierPtr classifier,
                                       ParityForm form) {
  CheckC(c);
  FairnessProblem p{ParitySpec(c, form), {}, c};
  p.bindings.emplace("maj", Plain(model, majority, classifier));
  p.bindings.emplace("min", Plain(model, minority, classifier));
  return p;
}

FairnessProblem BuildEqualOpportunity(double c, const Predicate& majority,
                                      const Predicate& minority,
                                      const Predicate& qualified,
                                      const PopulationModel& model,
                                      ClassifierPtr classifier,
                                      ParityForm form) {
  return BuildDemographicParity(c, Predicate::And(majority, qualified),
                                Predicate::And(minority, qualified), model,
                                std::move(classifier), form);
}

FairnessProblem BuildPathSpecific(double c, const Predicate& majority,
                                  const Predicate& minority,
                                  const MediatorOverride& majority_attribute,
                                  const PopulationModel& model,
                                  ClassifierPtr classifier) {
  CheckC(c);
  if (!model.has_mediator()) {
    throw NoMediatorBlock("path-specific fairness needs a mediator block");
  }
  if (!model.schema()->IndexOf(majority_attribute.attribute)) {
    throw MissingFeature("override attribute '" + majority_attribute.attribute +
                         "' is not a model variable");
  }
  FairnessProblem p{DifferenceAtLeast("min", "maj", c), {}, c};
  p.bindings.emplace("maj", Plain(model, majority, classifier));
  SampledVariable min = Plain(model, minority, classifier);
  min.mediator_override = majority_attribute;
  p.bindings.emplace("min", std::move(min));
  return p;
}

FairnessProblem BuildGroupParity(double c, const Predicate& majority,
                                 const std::vector<Predicate>& minorities,
                                 const PopulationModel& model,
                                 ClassifierPtr classifier) {
  CheckC(c);
  if (minorities.empty()) throw EmptyMinoritySet("no minority groups given");
  if (minorities.size() == 1) {
    return BuildDemographicParity(c, majority, minorities[0], model,
                                  std::move(classifier));
  }
  std::optional<SpecExpr> spec;
  FairnessProblem p{SpecExpr::Const(0.0), {}, c};
  p.bindings.emplace("maj", Plain(model, majority, classifier));
  for (std::size_t i = 0; i < minorities.size(); ++i) {
    const std::string name = "min" + std::to_string(i);
    SpecExpr conjunct = RatioAtLeast(name, "maj", c);
    spec = spec ? SpecExpr::And(*spec, conjunct) : conjunct;
    p.bindings.emplace(name, Plain(model, minorities[i], classifier));
  }
  p.spec = *spec;
  return p;
}

FairnessProblem BuildRegressionParity(double c, const Predicate& majority,
                                      const Predicate& minority,
                                      const PopulationModel& model,
                                      ClassifierPtr classifier) {
  CheckC(c);
  FairnessProblem p{SpecExpr::And(DifferenceAtLeast("maj", "min", c),
                                  DifferenceAtLeast("min", "maj", c)),
                    {},
                    c};
  p.bindings.emplace("maj", Plain(model, majority, classifier));
  p.bindings.emplace("min", Plain(model, minority, classifier));
  return p;
}

FairnessProblem BuildIndividualFairness(double c, double lambda,
                                        const PopulationModel& model,
                                        ClassifierPtr classifier) {
  CheckC(c);
  if (!(lambda > 0.0)) {
    throw InvalidLambda("lambda must be positive, got " + std::to_string(lambda));
  }
  FairnessProblem p{SpecExpr::GeqZero(SpecExpr::Sum(
                        SpecExpr::Mu("r"), SpecExpr::Neg(SpecExpr::Const(1.0 - c)))),
                    {},
                    c};
  SampledVariable r = Plain(model, Predicate(), std::move(classifier));
  r.pairwise = true;
  r.lambda = lambda;
  p.bindings.emplace("r", std::move(r));
  return p;
}

}  // namespace fairverify
