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

#include "fairverify/speclang.h"

#include <array>
#include <charconv>
#include <cmath>
#include <utility>
#include <vector>

#include "fairverify/error.h"
#include "text_scanner.h"

namespace fairverify {

struct SpecExpr::Node {
  SpecKind kind;
  double constant = 0.0;
  std::string variable;
  std::array<SpecExpr, 2> children{SpecExpr(nullptr), SpecExpr(nullptr)};
};

namespace {

bool IsBooleanKind(SpecKind kind) {
  switch (kind) {
    case SpecKind::kGeqZero:
    case SpecKind::kAnd:
    case SpecKind::kOr:
    case SpecKind::kNot:
      return true;
    default:
      return false;
  }
}

void RequireArithmetic(const SpecExpr& e, std::string_view op) {
  if (e.is_boolean()) {
    throw InvalidExpression(std::string(op) +
                            " expects an arithmetic operand");
  }
}

void RequireBoolean(const SpecExpr& e, std::string_view op) {
  if (!e.is_boolean()) {
    throw InvalidExpression(std::string(op) + " expects a boolean operand");
  }
}

}  // namespace

std::string_view SpecKindName(SpecKind kind) {
  switch (kind) {
    case SpecKind::kMu: return "Mu";
    case SpecKind::kConst: return "Const";
    case SpecKind::kSum: return "Sum";
    case SpecKind::kNeg: return "Neg";
    case SpecKind::kProd: return "Prod";
    case SpecKind::kInv: return "Inv";
    case SpecKind::kGeqZero: return "GeqZero";
    case SpecKind::kAnd: return "And";
    case SpecKind::kOr: return "Or";
    case SpecKind::kNot: return "Not";
  }
  return "?";
}

SpecExpr SpecExpr::Mu(std::string name) {
  if (name.empty()) throw InvalidExpression("mu leaf needs a variable name");
  auto node = std::make_shared<Node>();
  node->kind = SpecKind::kMu;
  node->variable = std::move(name);
  return SpecExpr(std::move(node));
}

SpecExpr SpecExpr::Const(double value) {
  if (!std::isfinite(value)) {
    throw InvalidExpression("constants must be finite");
  }
  auto node = std::make_shared<Node>();
  node->kind = SpecKind::kConst;
  node->constant = value;
  return SpecExpr(std::move(node));
}

#define FAIRVERIFY_BINARY_CTOR(Name, Kind, Check)            \
  SpecExpr SpecExpr::Name(SpecExpr lhs, SpecExpr rhs) {      \
    Check(lhs, #Name);                                       \
    Check(rhs, #Name);                                       \
    auto node = std::make_shared<Node>();                    \
    node->kind = SpecKind::Kind;                             \
    node->children = {std::move(lhs), std::move(rhs)};       \
    return SpecExpr(std::move(node));                        \
  }

#define FAIRVERIFY_UNARY_CTOR(Name, Kind, Check)             \
  SpecExpr SpecExpr::Name(SpecExpr child) {                  \
    Check(child, #Name);                                     \
    auto node = std::make_shared<Node>();                    \
    node->kind = SpecKind::Kind;                             \
    node->children[0] = std::move(child);                    \
    return SpecExpr(std::move(node));                        \
  }

FAIRVERIFY_BINARY_CTOR(Sum, kSum, RequireArithmetic)
FAIRVERIFY_BINARY_CTOR(Prod, kProd, RequireArithmetic)
FAIRVERIFY_BINARY_CTOR(And, kAnd, RequireBoolean)
FAIRVERIFY_BINARY_CTOR(Or, kOr, RequireBoolean)
FAIRVERIFY_UNARY_CTOR(Neg, kNeg, RequireArithmetic)
FAIRVERIFY_UNARY_CTOR(Inv, kInv, RequireArithmetic)
FAIRVERIFY_UNARY_CTOR(GeqZero, kGeqZero, RequireArithmetic)
FAIRVERIFY_UNARY_CTOR(Not, kNot, RequireBoolean)

#undef FAIRVERIFY_BINARY_CTOR
#undef FAIRVERIFY_UNARY_CTOR

SpecKind SpecExpr::kind() const { return node_->kind; }

bool SpecExpr::is_boolean() const { return IsBooleanKind(node_->kind); }

std::size_t SpecExpr::arity() const {
  switch (node_->kind) {
    case SpecKind::kMu:
    case SpecKind::kConst:
      return 0;
    case SpecKind::kNeg:
    case SpecKind::kInv:
    case SpecKind::kGeqZero:
    case SpecKind::kNot:
      return 1;
    default:
      return 2;
  }
}

const std::string& SpecExpr::variable() const {
  if (node_->kind != SpecKind::kMu) {
    throw InvalidExpression("variable() on a non-mu node");
  }
  return node_->variable;
}

double SpecExpr::constant() const {
  if (node_->kind != SpecKind::kConst) {
    throw InvalidExpression("constant() on a non-constant node");
  }
  return node_->constant;
}

const SpecExpr& SpecExpr::child(std::size_t i) const {
  if (i >= arity()) throw InvalidExpression("child index out of range");
  return node_->children[i];
}

bool operator==(const SpecExpr& a, const SpecExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case SpecKind::kMu:
      return a.node_->variable == b.node_->variable;
    case SpecKind::kConst:
      return a.node_->constant == b.node_->constant;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (a.child(i) != b.child(i)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

using internal::Token;
using internal::TokenKind;

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : tokens_(Tokenize(text)) {}

  SpecExpr Parse() {
    Typed result = ParseOr();
    if (Peek().kind != TokenKind::kEnd) {
      throw Error(Peek(), "unexpected '" + Peek().text + "'");
    }
    if (!result.expr.is_boolean()) {
      throw ParseError(
          "a specification must be a comparison or a boolean formula", 1, 1);
    }
    return result.expr;
  }

 private:
  struct Typed {
    SpecExpr expr;
  };

  static std::vector<Token> Tokenize(std::string_view text) {
    internal::Scanner scanner(text);
    std::vector<Token> out;
    for (;;) {
      Token t = scanner.Next(internal::Scanner::kSkipNewlines);
      switch (t.kind) {
        case TokenKind::kEq:
        case TokenKind::kNe:
        case TokenKind::kAssign:
        case TokenKind::kTilde:
        case TokenKind::kQuestion:
        case TokenKind::kColon:
        case TokenKind::kLBrace:
        case TokenKind::kRBrace:
        case TokenKind::kComma:
        case TokenKind::kSemicolon:
        case TokenKind::kUnknown:
          throw UnknownOperator("unknown operator '" + t.text + "'", t.line,
                                t.column);
        default:
          break;
      }
      out.push_back(t);
      if (t.kind == TokenKind::kEnd) break;
    }
    return out;
  }

  static ParseError Error(const Token& t, const std::string& message) {
    return ParseError(message, t.line, t.column);
  }

  const Token& Peek() const { return tokens_[pos_]; }
  const Token& Advance() { return tokens_[pos_++]; }
  bool Accept(TokenKind kind) {
    if (Peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  const Token& Expect(TokenKind kind, std::string_view what) {
    if (Peek().kind != kind) {
      throw Error(Peek(), "expected " + std::string(what) + " but found '" +
                              Peek().text + "'");
    }
    return Advance();
  }

  static void CheckArithmetic(const SpecExpr& e, const Token& at) {
    if (e.is_boolean()) {
      throw ParseError("operator '" + at.text +
                           "' needs an arithmetic operand, not a formula",
                       at.line, at.column);
    }
  }
  static void CheckBoolean(const SpecExpr& e, const Token& at) {
    if (!e.is_boolean()) {
      throw ParseError("operator '" + at.text +
                           "' needs a boolean operand, not a term",
                       at.line, at.column);
    }
  }

  static bool IsLiteralZero(const SpecExpr& e) {
    return e.kind() == SpecKind::kConst && e.constant() == 0.0 &&
           !std::signbit(e.constant());
  }

  // lhs - rhs, dropping a literal zero subtrahend.
  static SpecExpr Difference(SpecExpr lhs, SpecExpr rhs) {
    if (IsLiteralZero(rhs)) return lhs;
    return SpecExpr::Sum(std::move(lhs), SpecExpr::Neg(std::move(rhs)));
  }

  Typed ParseOr() {
    Typed lhs = ParseAnd();
    while (Peek().kind == TokenKind::kOrOr) {
      const Token& op = Advance();
      Typed rhs = ParseAnd();
      CheckBoolean(lhs.expr, op);
      CheckBoolean(rhs.expr, op);
      lhs.expr = SpecExpr::Or(lhs.expr, rhs.expr);
    }
    return lhs;
  }

  Typed ParseAnd() {
    Typed lhs = ParseNot();
    while (Peek().kind == TokenKind::kAndAnd) {
      const Token& op = Advance();
      Typed rhs = ParseNot();
      CheckBoolean(lhs.expr, op);
      CheckBoolean(rhs.expr, op);
      lhs.expr = SpecExpr::And(lhs.expr, rhs.expr);
    }
    return lhs;
  }

  Typed ParseNot() {
    if (Peek().kind == TokenKind::kBang) {
      const Token& op = Advance();
      Typed operand = ParseNot();
      CheckBoolean(operand.expr, op);
      return {SpecExpr::Not(operand.expr)};
    }
    return ParseComparison();
  }

  static bool IsComparison(TokenKind kind) {
    return kind == TokenKind::kGe || kind == TokenKind::kGt ||
           kind == TokenKind::kLe || kind == TokenKind::kLt;
  }

  Typed ParseComparison() {
    Typed lhs = ParseAdditive();
    if (!IsComparison(Peek().kind)) return lhs;
    const Token& op = Advance();
    Typed rhs = ParseAdditive();
    CheckArithmetic(lhs.expr, op);
    CheckArithmetic(rhs.expr, op);
    if (IsComparison(Peek().kind)) {
      throw Error(Peek(), "comparisons cannot be chained");
    }
    SpecExpr a = lhs.expr;
    SpecExpr b = rhs.expr;
    switch (op.kind) {
      case TokenKind::kGe:
        return {SpecExpr::GeqZero(Difference(a, b))};
      case TokenKind::kLe:
        return {SpecExpr::GeqZero(Difference(b, a))};
      case TokenKind::kGt:
        return {SpecExpr::Not(SpecExpr::GeqZero(Difference(b, a)))};
      default:
        return {SpecExpr::Not(SpecExpr::GeqZero(Difference(a, b)))};
    }
  }

  Typed ParseAdditive() {
    Typed lhs = ParseMultiplicative();
    while (Peek().kind == TokenKind::kPlus || Peek().kind == TokenKind::kMinus) {
      const Token& op = Advance();
      Typed rhs = ParseMultiplicative();
      CheckArithmetic(lhs.expr, op);
      CheckArithmetic(rhs.expr, op);
      if (op.kind == TokenKind::kPlus) {
        lhs.expr = SpecExpr::Sum(lhs.expr, rhs.expr);
      } else {
        lhs.expr = SpecExpr::Sum(lhs.expr, SpecExpr::Neg(rhs.expr));
      }
    }
    return lhs;
  }

  Typed ParseMultiplicative() {
    Typed lhs = ParseUnary();
    while (Peek().kind == TokenKind::kStar || Peek().kind == TokenKind::kSlash) {
      const Token& op = Advance();
      Typed rhs = ParseUnary();
      CheckArithmetic(lhs.expr, op);
      CheckArithmetic(rhs.expr, op);
      if (op.kind == TokenKind::kStar) {
        lhs.expr = SpecExpr::Prod(lhs.expr, rhs.expr);
      } else {
        lhs.expr = SpecExpr::Prod(lhs.expr, SpecExpr::Inv(rhs.expr));
      }
    }
    return lhs;
  }

  Typed ParseUnary() {
    if (Peek().kind == TokenKind::kMinus) {
      const Token& op = Advance();
      if (Peek().kind == TokenKind::kNumber) {
        return {SpecExpr::Const(-Advance().number)};
      }
      Typed operand = ParseUnary();
      CheckArithmetic(operand.expr, op);
      return {SpecExpr::Neg(operand.expr)};
    }
    return ParsePrimary();
  }

  Typed ParsePrimary() {
    const Token& t = Peek();
    switch (t.kind) {
      case TokenKind::kNumber:
        Advance();
        return {SpecExpr::Const(t.number)};
      case TokenKind::kLParen: {
        Advance();
        Typed inner = ParseOr();
        Expect(TokenKind::kRParen, "')'");
        return inner;
      }
      case TokenKind::kIdent: {
        if (t.text == "mu") {
          Advance();
          Expect(TokenKind::kLParen, "'(' after mu");
          const Token& name = Expect(TokenKind::kIdent, "a variable name");
          Expect(TokenKind::kRParen, "')'");
          return {SpecExpr::Mu(name.text)};
        }
        if (t.text == "inv") {
          const Token& op = Advance();
          Expect(TokenKind::kLParen, "'(' after inv");
          Typed inner = ParseOr();
          Expect(TokenKind::kRParen, "')'");
          CheckArithmetic(inner.expr, op);
          return {SpecExpr::Inv(inner.expr)};
        }
        throw Error(t, "unknown identifier '" + t.text +
                           "'; expectations are written mu(" + t.text + ")");
      }
      case TokenKind::kEnd:
        throw Error(t, "unexpected end of input");
      default:
        throw Error(t, "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string FormatConstant(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

void Print(const SpecExpr& e, std::string& out) {
  switch (e.kind()) {
    case SpecKind::kMu:
      out += "mu(" + e.variable() + ")";
      return;
    case SpecKind::kConst:
      out += FormatConstant(e.constant());
      return;
    case SpecKind::kNeg:
      out += "-(";
      Print(e.child(0), out);
      out += ")";
      return;
    case SpecKind::kInv:
      out += "inv(";
      Print(e.child(0), out);
      out += ")";
      return;
    case SpecKind::kGeqZero:
      out += "(";
      Print(e.child(0), out);
      out += " >= 0)";
      return;
    case SpecKind::kNot:
      out += "!";
      Print(e.child(0), out);
      return;
    default:
      break;
  }
  std::string_view op;
  switch (e.kind()) {
    case SpecKind::kSum: op = " + "; break;
    case SpecKind::kProd: op = " * "; break;
    case SpecKind::kAnd: op = " && "; break;
    default: op = " || "; break;
  }
  out += "(";
  Print(e.child(0), out);
  out += op;
  Print(e.child(1), out);
  out += ")";
}

void CollectFree(const SpecExpr& e, std::set<std::string>& out) {
  if (e.kind() == SpecKind::kMu) {
    out.insert(e.variable());
    return;
  }
  for (std::size_t i = 0; i < e.arity(); ++i) CollectFree(e.child(i), out);
}

}  // namespace

SpecExpr ParseSpec(std::string_view text) { return SpecParser(text).Parse(); }

std::string PrintSpec(const SpecExpr& spec) {
  std::string out;
  Print(spec, out);
  return out;
}

std::size_t DeltaWeight(const SpecExpr& spec) {
  switch (spec.kind()) {
    case SpecKind::kMu:
      return 1;
    case SpecKind::kConst:
      return 0;
    default:
      break;
  }
  std::size_t total = 0;
  for (std::size_t i = 0; i < spec.arity(); ++i) {
    total += DeltaWeight(spec.child(i));
  }
  return total;
}

std::set<std::string> FreeVariables(const SpecExpr& spec) {
  std::set<std::string> out;
  CollectFree(spec, out);
  return out;
}

SpecValue EvalExact(const SpecExpr& spec, const Means& means) {
  switch (spec.kind()) {
    case SpecKind::kMu: {
      auto it = means.find(spec.variable());
      if (it == means.end()) throw UnboundVariable(spec.variable());
      return it->second;
    }
    case SpecKind::kConst:
      return spec.constant();
    case SpecKind::kSum:
      return EvalExactReal(spec.child(0), means) +
             EvalExactReal(spec.child(1), means);
    case SpecKind::kNeg:
      return -EvalExactReal(spec.child(0), means);
    case SpecKind::kProd:
      return EvalExactReal(spec.child(0), means) *
             EvalExactReal(spec.child(1), means);
    case SpecKind::kInv: {
      double x = EvalExactReal(spec.child(0), means);
      if (x == 0.0) throw DivisionByZero("inverse of a term equal to zero");
      return 1.0 / x;
    }
    case SpecKind::kGeqZero:
      return EvalExactReal(spec.child(0), means) >= 0.0;
    case SpecKind::kAnd: {
      // Both sides are evaluated so unbound variables surface regardless of
      // short-circuiting.
      bool a = EvalExactBool(spec.child(0), means);
      bool b = EvalExactBool(spec.child(1), means);
      return a && b;
    }
    case SpecKind::kOr: {
      bool a = EvalExactBool(spec.child(0), means);
      bool b = EvalExactBool(spec.child(1), means);
      return a || b;
    }
    case SpecKind::kNot:
      return !EvalExactBool(spec.child(0), means);
  }
  throw InvalidExpression("unknown node kind");
}

bool EvalExactBool(const SpecExpr& spec, const Means& means) {
  return std::get<bool>(EvalExact(spec, means));
}

double EvalExactReal(const SpecExpr& spec, const Means& means) {
  return std::get<double>(EvalExact(spec, means));
}

}  // namespace fairverify
