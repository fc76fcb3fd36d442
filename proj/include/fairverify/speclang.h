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

// Fairness specification language.
//
// A specification is a boolean formula over inequalities `X >= 0`, where X is
// an arithmetic term over the expectations `mu(name)` of bounded random
// variables and real constants:
//
//   T ::= mu(name) | c | T + T | -T | T * T | inv(T)
//   S ::= T >= 0 | S && S | S || S | !S
//
// The concrete syntax accepted by ParseSpec adds the usual sugar: binary
// `-` and `/`, and the comparisons `>=`, `>`, `<=`, `<` between arbitrary
// terms. All comparisons desugar into GeqZero / Not nodes:
//
//   a >= b  ->  GeqZero(a + -b)          a <= b  ->  GeqZero(b + -a)
//   a >  b  ->  Not(GeqZero(b + -a))     a <  b  ->  Not(GeqZero(a + -b))
//
// A literal `0` on the non-subtracted side is dropped, so `X >= 0` parses to
// GeqZero(X) exactly. `a - b` is Sum(a, Neg(b)) and `a / b` is Prod(a,
// Inv(b)). A minus sign directly in front of a numeric literal is folded
// into the constant. `#` starts a comment that runs to the end of the line.

#ifndef FAIRVERIFY_SPECLANG_H_
#define FAIRVERIFY_SPECLANG_H_

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>

namespace fairverify {

enum class SpecKind {
  kMu,
  kConst,
  kSum,
  kNeg,
  kProd,
  kInv,
  kGeqZero,
  kAnd,
  kOr,
  kNot,
};

std::string_view SpecKindName(SpecKind kind);

// Immutable expression tree. Copies share structure and are cheap; instances
// are safe to read from any number of threads.
class SpecExpr {
 public:
  static SpecExpr Mu(std::string name);
  static SpecExpr Const(double value);
  static SpecExpr Sum(SpecExpr lhs, SpecExpr rhs);
  static SpecExpr Neg(SpecExpr child);
  static SpecExpr Prod(SpecExpr lhs, SpecExpr rhs);
  static SpecExpr Inv(SpecExpr child);
  static SpecExpr GeqZero(SpecExpr child);
  static SpecExpr And(SpecExpr lhs, SpecExpr rhs);
  static SpecExpr Or(SpecExpr lhs, SpecExpr rhs);
  static SpecExpr Not(SpecExpr child);

  SpecKind kind() const;
  bool is_boolean() const;
  bool is_arithmetic() const { return !is_boolean(); }
  std::size_t arity() const;

  // kMu only.
  const std::string& variable() const;
  // kConst only.
  double constant() const;
  // Unary nodes: child(0). Binary nodes: child(0) is the left operand.
  const SpecExpr& child(std::size_t i) const;

  friend bool operator==(const SpecExpr& a, const SpecExpr& b);
  friend bool operator!=(const SpecExpr& a, const SpecExpr& b) {
    return !(a == b);
  }

 private:
  struct Node;
  explicit SpecExpr(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

SpecExpr ParseSpec(std::string_view text);

// Fully parenthesized rendering; ParseSpec(PrintSpec(e)) == e.
std::string PrintSpec(const SpecExpr& spec);

// Number of mu leaves, counted with multiplicity. The confidence budget is
// split evenly over this many leaf lemmas.
std::size_t DeltaWeight(const SpecExpr& spec);

std::set<std::string> FreeVariables(const SpecExpr& spec);

using Means = std::map<std::string, double, std::less<>>;
using SpecValue = std::variant<double, bool>;

// Denotational semantics with the true means substituted for every leaf.
// Throws UnboundVariable or DivisionByZero (inv of an exact zero).
SpecValue EvalExact(const SpecExpr& spec, const Means& means);
bool EvalExactBool(const SpecExpr& spec, const Means& means);
double EvalExactReal(const SpecExpr& spec, const Means& means);

}  // namespace fairverify

#endif  // FAIRVERIFY_SPECLANG_H_
