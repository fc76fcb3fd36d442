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

// Exact expectations for problems small enough to solve without sampling.

#ifndef FAIRVERIFY_ORACLE_H_
#define FAIRVERIFY_ORACLE_H_

#include <map>
#include <string>

#include "fairverify/fairness.h"
#include "fairverify/speclang.h"

namespace fairverify {

struct ExactMeans {
  Means means;
  // The specification evaluated at `means`.
  bool truth = false;
};

// Enumerates every execution of models built from bernoulli and categorical
// draws, weighting each by its probability, and conditions by
// renormalizing over the executions that satisfy the predicate. Mediator
// overrides and pairwise variables are enumerated as well.
// Throws UnsupportedContinuousPrimitive or ZeroConditionProbability.
ExactMeans ExactMeansDiscrete(const FairnessProblem& problem);

// Closed form for decision-tree (or constant) classifiers over models whose
// gaussian and uniform draws are independent leaves: no expression or
// predicate reads them, and only the classifier does. Discrete draws are
// enumerated; each tree path contributes the product of per-feature CDF
// differences. Throws UnsupportedShape otherwise.
ExactMeans ExactMeansGaussianTree(const FairnessProblem& problem);

}  // namespace fairverify

#endif  // FAIRVERIFY_ORACLE_H_
