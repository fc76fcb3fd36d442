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

#include "fairverify/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fairverify/error.h"
#include "fairverify/rng.h"
#include "model_program.h"

namespace fairverify {

using internal::Distribution;
using internal::Program;
using internal::Stmt;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMassTolerance = 1e-9;

// A gaussian or uniform draw kept symbolic.
struct ContinuousLeaf {
  Distribution dist = Distribution::kGaussian;
  double a = 0.0;  // mean or lo
  double b = 1.0;  // stddev or hi

  double Cdf(double x) const {
    if (dist == Distribution::kGaussian) return NormalCdf((x - a) / b);
    if (x <= a) return 0.0;
    if (x >= b) return 1.0;
    return (x - a) / (b - a);
  }
};

// Replays a prefix of branch choices, then takes the first branch of
// positive probability at every new choice point.
class TraceChooser {
 public:
  TraceChooser(const std::vector<int>& prefix, bool symbolic)
      : prefix_(prefix), symbolic_(symbolic) {}

  double Draw(const Stmt& s, std::span<const double> args) {
    if (s.dist == Distribution::kGaussian || s.dist == Distribution::kUniform) {
      if (!symbolic_) {
        throw UnsupportedContinuousPrimitive(
            "exact enumeration needs bernoulli/categorical only (line " +
            std::to_string(s.line) + ")");
      }
      leaves_[s.slot] = ContinuousLeaf{s.dist, args[0], args[1]};
      return std::nan("");
    }
    probs_.clear();
    if (s.dist == Distribution::kBernoulli) {
      probs_ = {1.0 - args[0], args[0]};
    } else {
      double total = 0.0;
      for (double w : args) total += w;
      for (double w : args) probs_.push_back(w / total);
    }
    const std::size_t pos = chosen_.size();
    int pick = pos < prefix_.size() ? prefix_[pos] : NextPositive(-1);
    chosen_.push_back(pick);
    next_.push_back(NextPositive(pick));
    probability_ *= probs_[static_cast<std::size_t>(pick)];
    // A continuous leaf overwritten by a discrete draw is no longer symbolic.
    leaves_.erase(s.slot);
    return static_cast<double>(pick);
  }

  double probability() const { return probability_; }
  const std::map<int, ContinuousLeaf>& leaves() const { return leaves_; }
  void set_leaves(std::map<int, ContinuousLeaf> leaves) {
    leaves_ = std::move(leaves);
  }

  // Prefix of the next trace in depth-first order, or false when done.
  bool Advance(std::vector<int>& prefix) const {
    for (std::size_t i = chosen_.size(); i-- > 0;) {
      if (next_[i] >= 0) {
        prefix.assign(chosen_.begin(), chosen_.begin() + static_cast<long>(i));
        prefix.push_back(next_[i]);
        return true;
      }
    }
    return false;
  }

 private:
  int NextPositive(int after) const {
    for (std::size_t k = static_cast<std::size_t>(after + 1); k < probs_.size();
         ++k) {
      if (probs_[k] > 0.0) return static_cast<int>(k);
    }
    return -1;
  }

  const std::vector<int>& prefix_;
  bool symbolic_;
  std::vector<double> probs_;
  std::vector<int> chosen_;
  std::vector<int> next_;
  double probability_ = 1.0;
  std::map<int, ContinuousLeaf> leaves_;
};

// Calls body(chooser) once per execution; returns the total probability.
template <class Body>
double EnumerateTraces(bool symbolic, Body body) {
  std::vector<int> prefix;
  double total = 0.0;
  for (;;) {
    TraceChooser chooser(prefix, symbolic);
    body(chooser);
    total += chooser.probability();
    if (!chooser.Advance(prefix)) break;
  }
  return total;
}

void CheckMass(double total) {
  if (std::fabs(total - 1.0) > kMassTolerance) {
    throw Error("enumerated probability mass " + std::to_string(total) +
                " differs from 1");
  }
}

struct Atom {
  double weight;
  std::vector<double> env;
  std::map<int, ContinuousLeaf> leaves;
};

// Conditional distribution of one variable's population member, as atoms
// whose weights sum to 1.
std::vector<Atom> Support(const SampledVariable& var, bool symbolic) {
  const Program& program = var.model.program();
  const auto& schema = var.model.schema();
  int override_slot = -1;
  if (var.mediator_override) {
    auto slot = schema->IndexOf(var.mediator_override->attribute);
    if (!slot) {
      throw MissingFeature("override attribute '" +
                           var.mediator_override->attribute +
                           "' is not a model variable");
    }
    override_slot = static_cast<int>(*slot);
  }

  std::vector<Atom> atoms;
  double accepted = 0.0;
  std::vector<double> env;
  const double total = EnumerateTraces(symbolic, [&](TraceChooser& ch) {
    internal::ExecuteProgram(program, env, ch);
    const double w = ch.probability();
    if (w == 0.0) return;
    if (!var.condition.Holds(FeatureRecord(schema, env))) return;
    accepted += w;
    if (override_slot < 0) {
      atoms.push_back(Atom{w, env, ch.leaves()});
      return;
    }
    const double inner = EnumerateTraces(symbolic, [&](TraceChooser& med) {
      med.set_leaves(ch.leaves());
      std::vector<double> copy = env;
      internal::ReexecuteMediator(program, copy, override_slot,
                                  var.mediator_override->value, med);
      if (med.probability() > 0.0) {
        atoms.push_back(Atom{w * med.probability(), std::move(copy),
                             med.leaves()});
      }
    });
    CheckMass(inner);
  });
  CheckMass(total);
  if (!(accepted > 0.0)) {
    throw ZeroConditionProbability("condition '" + var.condition.text() +
                                   "' has probability zero");
  }
  for (Atom& a : atoms) a.weight /= accepted;
  return atoms;
}

ExactMeans Finish(const FairnessProblem& problem, Means means) {
  ExactMeans out;
  out.truth = EvalExactBool(problem.spec, means);
  out.means = std::move(means);
  return out;
}

double DiscreteMean(const SampledVariable& var) {
  const std::vector<Atom> atoms = Support(var, false);
  const auto bound = var.classifier->Bind(var.model.schema());
  if (!var.pairwise) {
    double mean = 0.0;
    for (const Atom& a : atoms) mean += a.weight * bound->Evaluate(a.env);
    return mean;
  }
  std::vector<double> f;
  for (const Atom& a : atoms) f.push_back(bound->Evaluate(a.env));
  const auto& outputs = var.model.schema()->outputs();
  double mean = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      double distance = 0.0;
      for (std::size_t slot : outputs) {
        distance = distance + std::fabs(atoms[i].env[slot] - atoms[j].env[slot]);
      }
      mean += atoms[i].weight * atoms[j].weight *
              PairwiseIndicator(std::fabs(f[i] - f[j]), distance, var.lambda);
    }
  }
  return mean;
}

// --- gaussian / tree

void CollectBlock(const Program& p, const std::vector<Stmt>& block,
                  std::vector<bool>& reads, std::vector<bool>& continuous,
                  std::vector<bool>& other_writes) {
  for (const Stmt& s : block) {
    for (int arg : s.args) p.exprs.CollectReads(arg, reads);
    if (s.expr >= 0) p.exprs.CollectReads(s.expr, reads);
    if (s.kind == Stmt::Kind::kSample &&
        (s.dist == Distribution::kGaussian || s.dist == Distribution::kUniform)) {
      continuous[static_cast<std::size_t>(s.slot)] = true;
    } else if (s.slot >= 0) {
      other_writes[static_cast<std::size_t>(s.slot)] = true;
    }
    CollectBlock(p, s.body, reads, continuous, other_writes);
    CollectBlock(p, s.else_body, reads, continuous, other_writes);
  }
}

void CheckGaussianShape(const SampledVariable& var) {
  if (var.pairwise) throw UnsupportedShape("pairwise variables are not supported");
  const Program& p = var.model.program();
  const auto& schema = *var.model.schema();
  const std::size_t n = schema.size();
  std::vector<bool> reads(n, false), continuous(n, false), other(n, false);
  CollectBlock(p, p.statements, reads, continuous, other);
  auto reads_pred = var.condition.Reads();
  if (!reads_pred) {
    throw UnsupportedShape("condition predicate is opaque");
  }
  for (const std::string& name : *reads_pred) {
    reads[*schema.IndexOf(name)] = true;
  }
  if (var.mediator_override) {
    auto slot = schema.IndexOf(var.mediator_override->attribute);
    if (slot) reads[*slot] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!continuous[i]) continue;
    if (reads[i]) {
      throw UnsupportedShape("continuous variable '" + schema.name(i) +
                             "' is read by the model or a predicate");
    }
    if (other[i]) {
      throw UnsupportedShape("continuous variable '" + schema.name(i) +
                             "' is also assigned discretely");
    }
  }
}

struct Bounds {
  double lo = -kInf;
  double hi = kInf;
};

double TreeMass(const DecisionTree& tree, const std::vector<std::size_t>& slot,
                const Atom& atom, int node_id, std::map<int, Bounds>& bounds) {
  const DecisionTree::Node& node = tree.nodes()[static_cast<std::size_t>(node_id)];
  if (node.feature < 0) {
    if (node.value == 0.0) return 0.0;
    double p = 1.0;
    for (const auto& [s, b] : bounds) {
      if (!(b.lo < b.hi)) return 0.0;
      const ContinuousLeaf& leaf = atom.leaves.at(s);
      p *= leaf.Cdf(b.hi) - leaf.Cdf(b.lo);
    }
    return node.value * p;
  }
  const std::size_t f = static_cast<std::size_t>(node.feature);
  const int s = static_cast<int>(slot[f]);
  if (atom.leaves.count(s) == 0) {
    const double x = atom.env[slot[f]];
    if (std::isnan(x)) {
      throw MissingFeature("classifier input '" + tree.features()[f] +
                           "' has no value");
    }
    return TreeMass(tree, slot, atom, x <= node.threshold ? node.le : node.gt,
                    bounds);
  }
  const Bounds saved = bounds.count(s) ? bounds[s] : Bounds{};
  // x <= t  restricts to (lo, min(hi, t)];  x > t  to (max(lo, t), hi].
  bounds[s] = Bounds{saved.lo, std::min(saved.hi, node.threshold)};
  double mass = TreeMass(tree, slot, atom, node.le, bounds);
  bounds[s] = Bounds{std::max(saved.lo, node.threshold), saved.hi};
  mass += TreeMass(tree, slot, atom, node.gt, bounds);
  bounds[s] = saved;
  return mass;
}

double GaussianTreeMean(const SampledVariable& var) {
  CheckGaussianShape(var);
  const auto* tree = dynamic_cast<const DecisionTree*>(var.classifier.get());
  const auto* constant =
      dynamic_cast<const ConstantClassifier*>(var.classifier.get());
  if (!tree && !constant) {
    throw UnsupportedShape("classifier must be a decision tree or constant");
  }
  const std::vector<Atom> atoms = Support(var, true);
  if (constant) return constant->value();
  std::vector<std::size_t> slot;
  for (const std::string& name : tree->features()) {
    auto index = var.model.schema()->IndexOf(name);
    if (!index) {
      throw MissingFeature("classifier input '" + name +
                           "' is not a model variable");
    }
    slot.push_back(*index);
  }
  double mean = 0.0;
  for (const Atom& a : atoms) {
    std::map<int, Bounds> bounds;
    mean += a.weight * TreeMass(*tree, slot, a, 0, bounds);
  }
  return mean;
}

}  // namespace

ExactMeans ExactMeansDiscrete(const FairnessProblem& problem) {
  ValidateProblem(problem);
  Means means;
  for (const auto& [name, var] : problem.bindings) {
    means[name] = DiscreteMean(var);
  }
  return Finish(problem, std::move(means));
}

ExactMeans ExactMeansGaussianTree(const FairnessProblem& problem) {
  ValidateProblem(problem);
  Means means;
  for (const auto& [name, var] : problem.bindings) {
    means[name] = GaussianTreeMean(var);
  }
  return Finish(problem, std::move(means));
}

}  // namespace fairverify
