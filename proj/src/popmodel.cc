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

#include "fairverify/popmodel.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "fairverify/error.h"
#include "model_program.h"
#include "text_scanner.h"

namespace fairverify {

using internal::Distribution;
using internal::ExprNode;
using internal::ExprOp;
using internal::ExprPool;
using internal::Program;
using internal::Stmt;
using internal::Token;
using internal::TokenKind;

// ---------------------------------------------------------------------------
// Schema and records

Schema::Schema(std::vector<std::string> names, std::vector<std::size_t> outputs)
    : names_(std::move(names)), outputs_(std::move(outputs)) {
  for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
}

Schema::Schema(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    index_.emplace(names_[i], i);
    outputs_.push_back(i);
  }
}

std::optional<std::size_t> Schema::IndexOf(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FeatureRecord::FeatureRecord(std::shared_ptr<const Schema> schema,
                             std::vector<double> values)
    : schema_(std::move(schema)), values_(std::move(values)) {
  values_.resize(schema_->size(), std::nan(""));
}

FeatureRecord FeatureRecord::FromMap(
    const std::map<std::string, double>& values) {
  std::vector<std::string> names;
  std::vector<double> data;
  for (const auto& [name, value] : values) {
    names.push_back(name);
    data.push_back(value);
  }
  return FeatureRecord(std::make_shared<const Schema>(std::move(names)),
                       std::move(data));
}

double FeatureRecord::Get(std::string_view name) const {
  auto index = schema_->IndexOf(name);
  if (!index) throw MissingFeature("feature '" + std::string(name) + "' is not defined");
  const double v = values_[*index];
  if (std::isnan(v)) {
    throw MissingFeature("feature '" + std::string(name) + "' has no value");
  }
  return v;
}

bool FeatureRecord::Has(std::string_view name) const {
  auto index = schema_->IndexOf(name);
  return index && !std::isnan(values_[*index]);
}

std::map<std::string, double> FeatureRecord::Outputs() const {
  std::map<std::string, double> out;
  for (std::size_t i : schema_->outputs()) out[schema_->name(i)] = values_[i];
  return out;
}

// ---------------------------------------------------------------------------
// Predicates

struct Predicate::Impl {
  std::string text;
  std::function<bool(const FeatureRecord&)> fn;
  std::shared_ptr<const ExprPool> pool;
  int root = -1;
  std::shared_ptr<const Schema> schema;
  std::vector<Predicate> all_of;
};

Predicate::Predicate() {
  static const auto kTrue = [] {
    auto impl = std::make_shared<Impl>();
    impl->text = "true";
    return std::shared_ptr<const Impl>(std::move(impl));
  }();
  impl_ = kTrue;
}

Predicate Predicate::FromFunction(std::function<bool(const FeatureRecord&)> fn,
                                  std::string description) {
  auto impl = std::make_shared<Impl>();
  impl->fn = std::move(fn);
  impl->text = std::move(description);
  return Predicate(std::move(impl));
}

Predicate Predicate::And(const Predicate& a, const Predicate& b) {
  if (a.is_trivial()) return b;
  if (b.is_trivial()) return a;
  auto impl = std::make_shared<Impl>();
  impl->text = "(" + a.text() + ") && (" + b.text() + ")";
  impl->all_of = {a, b};
  return Predicate(std::move(impl));
}

bool Predicate::is_trivial() const {
  return !impl_->fn && impl_->root < 0 && impl_->all_of.empty();
}

const std::string& Predicate::text() const { return impl_->text; }

std::optional<std::vector<std::string>> Predicate::Reads() const {
  const Impl& p = *impl_;
  if (p.fn) return std::nullopt;
  std::vector<std::string> out;
  if (p.root >= 0) {
    std::vector<bool> read(p.schema->size(), false);
    p.pool->CollectReads(p.root, read);
    for (std::size_t i = 0; i < read.size(); ++i) {
      if (read[i]) out.push_back(p.schema->name(i));
    }
  }
  for (const Predicate& child : p.all_of) {
    auto reads = child.Reads();
    if (!reads) return std::nullopt;
    out.insert(out.end(), reads->begin(), reads->end());
  }
  return out;
}

bool Predicate::Holds(const FeatureRecord& record) const {
  const Impl& p = *impl_;
  if (p.fn) return p.fn(record);
  if (!p.all_of.empty()) {
    for (const Predicate& child : p.all_of) {
      if (!child.Holds(record)) return false;
    }
    return true;
  }
  if (p.root < 0) return true;
  if (record.schema_ptr() == p.schema) {
    return internal::Truthy(p.pool->Eval(p.root, record.values()));
  }
  // Foreign layout: map by name.
  std::vector<double> env(p.schema->size(), std::nan(""));
  for (std::size_t i = 0; i < env.size(); ++i) {
    auto index = record.schema().IndexOf(p.schema->name(i));
    if (index) env[i] = record.values()[*index];
  }
  return internal::Truthy(p.pool->Eval(p.root, env));
}

// ---------------------------------------------------------------------------
// Parser

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = -kInf;
  double hi = kInf;
};

Interval Hull(Interval a, Interval b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

// 0 * inf stands for "zero times some finite value".
double BoundProduct(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

Interval Multiply(Interval a, Interval b) {
  const double p[4] = {BoundProduct(a.lo, b.lo), BoundProduct(a.lo, b.hi),
                       BoundProduct(a.hi, b.lo), BoundProduct(a.hi, b.hi)};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval Divide(Interval a, Interval b) {
  if (b.lo <= 0.0 && b.hi >= 0.0) return {};
  return Multiply(a, {1.0 / b.hi, 1.0 / b.lo});
}

std::string FormatInterval(Interval r) {
  std::ostringstream out;
  out << "[" << r.lo << ", " << r.hi << "]";
  return out.str();
}

// What is known about each slot at a program point.
struct FlowState {
  std::vector<bool> assigned;
  std::vector<Interval> range;

  void Grow(std::size_t n) {
    if (assigned.size() < n) {
      assigned.resize(n, false);
      range.resize(n);
    }
  }
};

FlowState Merge(FlowState a, FlowState b) {
  const std::size_t n = std::max(a.assigned.size(), b.assigned.size());
  a.Grow(n);
  b.Grow(n);
  FlowState out;
  out.Grow(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.assigned[i] = a.assigned[i] && b.assigned[i];
    if (a.assigned[i] && b.assigned[i]) {
      out.range[i] = Hull(a.range[i], b.range[i]);
    }
  }
  return out;
}

struct Typed {
  int node;
  Interval range;
};

bool IsKeyword(std::string_view s) {
  return s == "if" || s == "else" || s == "mediator" || s == "return" ||
         s == "true" || s == "false";
}

std::string Describe(const Token& t) {
  if (t.kind == TokenKind::kEnd) return "end of input";
  if (t.kind == TokenKind::kNewline) return "end of line";
  return "'" + t.text + "'";
}

class ModelParser {
 public:
  ModelParser(std::string_view text, ExprPool* pool)
      : scanner_(text), pool_(pool) {}

  void ParseProgram(Program& program) {
    program_ = &program;
    FlowState state;
    bool returns = false;
    program.statements =
        ParseStatements(state, Context{true, false}, returns, TokenKind::kEnd);
    const Token end = Take();
    if (!returns) {
      Fail(end, "model does not return on every path");
    }
    program.slot_names = slot_names_;
    program.assigned_at_return = assigned_at_return_;
    program.assigned_at_return.resize(slot_names_.size(), false);
    program.mediator_slots = mediator_slots_;
    program.mediator_slots.resize(slot_names_.size(), false);
    for (const std::string& name : *return_names_) {
      program.output_slots.push_back(slots_.at(name));
    }
  }

  // A standalone expression over `names`, readable where `readable` holds.
  int ParsePredicate(const std::vector<std::string>& names,
                     const std::vector<bool>& readable) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      slots_.emplace(names[i], static_cast<int>(i));
    }
    slot_names_ = names;
    FlowState state;
    state.Grow(names.size());
    state.assigned = readable;
    const Typed e = ParseExpr(state);
    SkipSeparators();
    const Token end = Take();
    if (end.kind != TokenKind::kEnd) Fail(end, "unexpected " + Describe(end));
    return e.node;
  }

 private:
  struct Context {
    bool top_level;
    bool in_mediator;
  };

  // Tokens are fetched lazily so newlines can be skipped inside parentheses.
  const Token& Peek() {
    if (!lookahead_) {
      lookahead_ = scanner_.Next(paren_depth_ > 0
                                     ? internal::Scanner::kSkipNewlines
                                     : internal::Scanner::kKeepNewlines);
    }
    return *lookahead_;
  }

  Token Take() {
    Peek();
    Token t = std::move(*lookahead_);
    lookahead_.reset();
    return t;
  }

  bool PeekIs(TokenKind kind) { return Peek().kind == kind; }
  bool PeekKeyword(std::string_view word) {
    return Peek().kind == TokenKind::kIdent && Peek().text == word;
  }

  Token Expect(TokenKind kind, const std::string& what) {
    if (!PeekIs(kind)) Fail(Peek(), "expected " + what + ", got " + Describe(Peek()));
    return Take();
  }

  [[noreturn]] void Fail(const Token& at, const std::string& message) {
    throw ParseError(message, at.line, at.column);
  }

  void SkipSeparators() {
    while (PeekIs(TokenKind::kNewline) || PeekIs(TokenKind::kSemicolon)) Take();
  }

  std::vector<Stmt> ParseStatements(FlowState& state, Context ctx,
                                    bool& returns, TokenKind closer) {
    std::vector<Stmt> out;
    returns = false;
    for (;;) {
      SkipSeparators();
      if (PeekIs(closer)) break;
      if (PeekIs(TokenKind::kEnd)) Fail(Peek(), "unexpected end of input");
      const Token& head = Peek();
      if (returns) Fail(head, "unreachable statement after return");
      if (expect_final_return_ && !(head.kind == TokenKind::kIdent &&
                                    head.text == "return")) {
        Fail(head, "mediator block must be followed directly by the return");
      }
      if (PeekKeyword("if")) {
        out.push_back(ParseIf(state, ctx, returns));
      } else if (PeekKeyword("mediator")) {
        out.push_back(ParseMediator(state, ctx, static_cast<int>(out.size())));
      } else if (PeekKeyword("return")) {
        out.push_back(ParseReturn(state, ctx));
        returns = true;
      } else if (PeekIs(TokenKind::kIdent)) {
        out.push_back(ParseAssignment(state, ctx));
      } else {
        Fail(head, "expected a statement, got " + Describe(head));
      }
    }
    return out;
  }

  Stmt ParseIf(FlowState& state, Context ctx, bool& returns) {
    const Token keyword = Take();
    Stmt s;
    s.kind = Stmt::Kind::kIf;
    s.line = keyword.line;
    s.expr = ParseExpr(state).node;
    const Context inner{false, ctx.in_mediator};

    FlowState then_state = state;
    bool then_returns = false;
    Expect(TokenKind::kLBrace, "'{'");
    s.body = ParseStatements(then_state, inner, then_returns, TokenKind::kRBrace);
    Take();

    FlowState else_state = state;
    bool else_returns = false;
    // `else` may start on a later line; separators consumed here would be
    // skipped by the caller anyway.
    SkipSeparators();
    if (PeekKeyword("else")) {
      Take();
      if (PeekKeyword("if")) {
        s.else_body.push_back(ParseIf(else_state, inner, else_returns));
      } else {
        Expect(TokenKind::kLBrace, "'{' or 'if' after 'else'");
        s.else_body = ParseStatements(else_state, inner, else_returns,
                                      TokenKind::kRBrace);
        Take();
      }
    }

    if (then_returns && else_returns) {
      returns = true;
    } else if (then_returns) {
      state = std::move(else_state);
    } else if (else_returns) {
      state = std::move(then_state);
    } else {
      state = Merge(std::move(then_state), std::move(else_state));
    }
    state.Grow(slot_names_.size());
    return s;
  }

  Stmt ParseMediator(FlowState& state, Context ctx, int index) {
    const Token keyword = Take();
    if (!ctx.top_level) Fail(keyword, "mediator block must be at top level");
    if (program_->mediator_index >= 0) Fail(keyword, "duplicate mediator block");
    Stmt s;
    s.kind = Stmt::Kind::kMediator;
    s.line = keyword.line;
    Expect(TokenKind::kLBrace, "'{'");
    bool returns = false;
    s.body = ParseStatements(state, Context{false, true}, returns,
                             TokenKind::kRBrace);
    Take();
    program_->mediator_index = index;
    expect_final_return_ = true;
    return s;
  }

  Stmt ParseReturn(FlowState& state, Context ctx) {
    const Token keyword = Take();
    if (ctx.in_mediator) Fail(keyword, "return inside mediator block");
    Stmt s;
    s.kind = Stmt::Kind::kReturn;
    s.line = keyword.line;
    std::vector<std::string> names;
    for (;;) {
      const Token name = Expect(TokenKind::kIdent, "a variable name");
      const int slot = ReadableSlot(name, state);
      if (std::find(names.begin(), names.end(), name.text) != names.end()) {
        Fail(name, "'" + name.text + "' returned twice");
      }
      names.push_back(name.text);
      s.return_slots.push_back(slot);
      if (!PeekIs(TokenKind::kComma)) break;
      Take();
    }
    if (!return_names_) {
      return_names_ = names;
      assigned_at_return_ = state.assigned;
    } else {
      if (*return_names_ != names) {
        Fail(keyword, "every return must list the same variables");
      }
      assigned_at_return_.resize(
          std::max(assigned_at_return_.size(), state.assigned.size()), false);
      for (std::size_t i = 0; i < assigned_at_return_.size(); ++i) {
        assigned_at_return_[i] = assigned_at_return_[i] &&
                                 i < state.assigned.size() && state.assigned[i];
      }
    }
    expect_final_return_ = false;
    return s;
  }

  Stmt ParseAssignment(FlowState& state, Context ctx) {
    const Token target = Take();
    if (IsKeyword(target.text)) Fail(target, "'" + target.text + "' is reserved");
    Stmt s;
    s.line = target.line;
    Interval result;
    if (PeekIs(TokenKind::kTilde)) {
      Take();
      s.kind = Stmt::Kind::kSample;
      result = ParseDistribution(state, s);
    } else if (PeekIs(TokenKind::kAssign)) {
      Take();
      s.kind = Stmt::Kind::kAssign;
      const Typed e = ParseExpr(state);
      s.expr = e.node;
      result = e.range;
    } else {
      Fail(Peek(), "expected '~' or '=' after '" + target.text + "', got " +
                       Describe(Peek()));
    }
    s.slot = SlotFor(target.text);
    state.Grow(slot_names_.size());
    state.assigned[static_cast<std::size_t>(s.slot)] = true;
    state.range[static_cast<std::size_t>(s.slot)] = result;
    if (ctx.in_mediator) {
      mediator_slots_.resize(slot_names_.size(), false);
      mediator_slots_[static_cast<std::size_t>(s.slot)] = true;
    }
    return s;
  }

  Interval ParseDistribution(FlowState& state, Stmt& s) {
    const Token name = Expect(TokenKind::kIdent, "a distribution name");
    Expect(TokenKind::kLParen, "'('");
    ++paren_depth_;
    std::vector<Typed> args;
    if (!PeekIs(TokenKind::kRParen)) {
      for (;;) {
        args.push_back(ParseExpr(state));
        if (!PeekIs(TokenKind::kComma)) break;
        Take();
      }
    }
    --paren_depth_;
    Expect(TokenKind::kRParen, "')'");
    for (const Typed& a : args) s.args.push_back(a.node);

    auto arity = [&](std::size_t n) {
      if (args.size() != n) {
        Fail(name, name.text + " takes " + std::to_string(n) +
                       " argument(s), got " + std::to_string(args.size()));
      }
    };
    auto bad = [&](const std::string& what, Interval r) {
      throw InvalidParameter("line " + std::to_string(name.line) + ": " +
                             what + " (possible values " + FormatInterval(r) +
                             ")");
    };

    if (name.text == "bernoulli") {
      arity(1);
      s.dist = Distribution::kBernoulli;
      const Interval p = args[0].range;
      if (!(p.lo >= 0.0 && p.hi <= 1.0)) {
        bad("bernoulli probability must lie in [0, 1]", p);
      }
      return {0.0, 1.0};
    }
    if (name.text == "gaussian" || name.text == "normal") {
      arity(2);
      s.dist = Distribution::kGaussian;
      const Interval sd = args[1].range;
      if (!(sd.lo > 0.0)) bad(name.text + " standard deviation must be positive", sd);
      return {};
    }
    if (name.text == "uniform") {
      arity(2);
      s.dist = Distribution::kUniform;
      const Interval lo = args[0].range;
      const Interval hi = args[1].range;
      if (!(lo.hi < hi.lo)) {
        bad("uniform requires lo < hi", {lo.lo, hi.hi});
      }
      return {lo.lo, hi.hi};
    }
    if (name.text == "categorical") {
      if (args.empty()) Fail(name, "categorical needs at least one weight");
      s.dist = Distribution::kCategorical;
      bool some_positive = false;
      for (const Typed& w : args) {
        if (!(w.range.lo >= 0.0)) bad("categorical weights must be nonnegative", w.range);
        if (w.range.lo > 0.0) some_positive = true;
      }
      if (!some_positive) {
        throw InvalidParameter("line " + std::to_string(name.line) +
                               ": categorical weights may all be zero");
      }
      return {0.0, static_cast<double>(args.size() - 1)};
    }
    Fail(name, "unknown distribution '" + name.text + "'");
  }

  int SlotFor(const std::string& name) {
    auto it = slots_.find(name);
    if (it != slots_.end()) return it->second;
    const int slot = static_cast<int>(slot_names_.size());
    slots_.emplace(name, slot);
    slot_names_.push_back(name);
    return slot;
  }

  int ReadableSlot(const Token& name, const FlowState& state) {
    auto it = slots_.find(name.text);
    if (it == slots_.end()) Fail(name, "unknown variable '" + name.text + "'");
    const auto slot = static_cast<std::size_t>(it->second);
    if (slot >= state.assigned.size() || !state.assigned[slot]) {
      Fail(name, "'" + name.text + "' may be used before it is assigned");
    }
    return it->second;
  }

  // Expressions, lowest precedence first.

  Typed ParseExpr(const FlowState& state) {
    Typed cond = ParseOr(state);
    if (!PeekIs(TokenKind::kQuestion)) return cond;
    Take();
    Typed yes = ParseExpr(state);
    Expect(TokenKind::kColon, "':'");
    Typed no = ParseExpr(state);
    ExprNode n;
    n.op = ExprOp::kCond;
    n.a = cond.node;
    n.b = yes.node;
    n.c = no.node;
    return {pool_->Add(n), Hull(yes.range, no.range)};
  }

  Typed Binary(ExprOp op, Typed a, Typed b, Interval range) {
    ExprNode n;
    n.op = op;
    n.a = a.node;
    n.b = b.node;
    return {pool_->Add(n), range};
  }

  Typed ParseOr(const FlowState& state) {
    Typed lhs = ParseAnd(state);
    while (PeekIs(TokenKind::kOrOr)) {
      Take();
      lhs = Binary(ExprOp::kOr, lhs, ParseAnd(state), {0.0, 1.0});
    }
    return lhs;
  }

  Typed ParseAnd(const FlowState& state) {
    Typed lhs = ParseEquality(state);
    while (PeekIs(TokenKind::kAndAnd)) {
      Take();
      lhs = Binary(ExprOp::kAnd, lhs, ParseEquality(state), {0.0, 1.0});
    }
    return lhs;
  }

  Typed ParseEquality(const FlowState& state) {
    Typed lhs = ParseRelational(state);
    for (;;) {
      ExprOp op;
      if (PeekIs(TokenKind::kEq)) {
        op = ExprOp::kEq;
      } else if (PeekIs(TokenKind::kNe)) {
        op = ExprOp::kNe;
      } else {
        return lhs;
      }
      Take();
      lhs = Binary(op, lhs, ParseRelational(state), {0.0, 1.0});
    }
  }

  Typed ParseRelational(const FlowState& state) {
    Typed lhs = ParseAdditive(state);
    for (;;) {
      ExprOp op;
      switch (Peek().kind) {
        case TokenKind::kLt: op = ExprOp::kLt; break;
        case TokenKind::kLe: op = ExprOp::kLe; break;
        case TokenKind::kGt: op = ExprOp::kGt; break;
        case TokenKind::kGe: op = ExprOp::kGe; break;
        default: return lhs;
      }
      Take();
      lhs = Binary(op, lhs, ParseAdditive(state), {0.0, 1.0});
    }
  }

  Typed ParseAdditive(const FlowState& state) {
    Typed lhs = ParseMultiplicative(state);
    for (;;) {
      if (PeekIs(TokenKind::kPlus)) {
        Take();
        Typed rhs = ParseMultiplicative(state);
        lhs = Binary(ExprOp::kAdd, lhs, rhs,
                     {lhs.range.lo + rhs.range.lo, lhs.range.hi + rhs.range.hi});
      } else if (PeekIs(TokenKind::kMinus)) {
        Take();
        Typed rhs = ParseMultiplicative(state);
        lhs = Binary(ExprOp::kSub, lhs, rhs,
                     {lhs.range.lo - rhs.range.hi, lhs.range.hi - rhs.range.lo});
      } else {
        return lhs;
      }
    }
  }

  Typed ParseMultiplicative(const FlowState& state) {
    Typed lhs = ParseUnary(state);
    for (;;) {
      if (PeekIs(TokenKind::kStar)) {
        Take();
        Typed rhs = ParseUnary(state);
        lhs = Binary(ExprOp::kMul, lhs, rhs, Multiply(lhs.range, rhs.range));
      } else if (PeekIs(TokenKind::kSlash)) {
        Take();
        Typed rhs = ParseUnary(state);
        lhs = Binary(ExprOp::kDiv, lhs, rhs, Divide(lhs.range, rhs.range));
      } else {
        return lhs;
      }
    }
  }

  Typed ParseUnary(const FlowState& state) {
    if (PeekIs(TokenKind::kMinus)) {
      Take();
      Typed x = ParseUnary(state);
      ExprNode n;
      n.op = ExprOp::kNeg;
      n.a = x.node;
      return {pool_->Add(n), {-x.range.hi, -x.range.lo}};
    }
    if (PeekIs(TokenKind::kBang)) {
      Take();
      Typed x = ParseUnary(state);
      ExprNode n;
      n.op = ExprOp::kNot;
      n.a = x.node;
      return {pool_->Add(n), {0.0, 1.0}};
    }
    return ParsePrimary(state);
  }

  Typed Number(double v) {
    ExprNode n;
    n.op = ExprOp::kNumber;
    n.number = v;
    return {pool_->Add(n), {v, v}};
  }

  Typed ParsePrimary(const FlowState& state) {
    const Token t = Take();
    switch (t.kind) {
      case TokenKind::kNumber:
        return Number(t.number);
      case TokenKind::kLParen: {
        ++paren_depth_;
        Typed inner = ParseExpr(state);
        --paren_depth_;
        Expect(TokenKind::kRParen, "')'");
        return inner;
      }
      case TokenKind::kIdent: {
        if (t.text == "true") return Number(1.0);
        if (t.text == "false") return Number(0.0);
        if (IsKeyword(t.text)) Fail(t, "unexpected '" + t.text + "'");
        const int slot = ReadableSlot(t, state);
        ExprNode n;
        n.op = ExprOp::kVar;
        n.slot = slot;
        return {pool_->Add(n), state.range[static_cast<std::size_t>(slot)]};
      }
      default:
        Fail(t, "expected an expression, got " + Describe(t));
    }
  }

  internal::Scanner scanner_;
  std::optional<Token> lookahead_;
  int paren_depth_ = 0;
  ExprPool* pool_;
  Program* program_ = nullptr;

  std::map<std::string, int, std::less<>> slots_;
  std::vector<std::string> slot_names_;
  std::optional<std::vector<std::string>> return_names_;
  std::vector<bool> assigned_at_return_;
  std::vector<bool> mediator_slots_;
  bool expect_final_return_ = false;
};

bool UsesContinuous(const std::vector<Stmt>& block) {
  for (const Stmt& s : block) {
    if (s.kind == Stmt::Kind::kSample &&
        (s.dist == Distribution::kGaussian || s.dist == Distribution::kUniform)) {
      return true;
    }
    if (UsesContinuous(s.body) || UsesContinuous(s.else_body)) return true;
  }
  return false;
}

// Forward sampler: one uniform per primitive.
class RngChooser {
 public:
  explicit RngChooser(RngStream& rng) : rng_(rng) {}

  double Draw(const Stmt& s, std::span<const double> args) {
    const double u = rng_.NextUniform();
    switch (s.dist) {
      case Distribution::kBernoulli:
        return u < args[0] ? 1.0 : 0.0;
      case Distribution::kGaussian:
        return args[0] + args[1] * InverseNormalCdf(u);
      case Distribution::kUniform:
        return args[0] + (args[1] - args[0]) * u;
      case Distribution::kCategorical: {
        double total = 0.0;
        for (double w : args) total += w;
        const double target = u * total;
        double cumulative = 0.0;
        std::size_t last_positive = 0;
        for (std::size_t i = 0; i < args.size(); ++i) {
          if (args[i] > 0.0) last_positive = i;
          cumulative += args[i];
          if (target < cumulative) return static_cast<double>(i);
        }
        return static_cast<double>(last_positive);
      }
    }
    return std::nan("");
  }

 private:
  RngStream& rng_;
};

}  // namespace

// ---------------------------------------------------------------------------
// PopulationModel

PopulationModel ParseModel(std::string_view text) {
  auto program = std::make_shared<Program>();
  ModelParser parser(text, &program->exprs);
  parser.ParseProgram(*program);

  std::vector<std::size_t> outputs;
  for (int slot : program->output_slots) {
    outputs.push_back(static_cast<std::size_t>(slot));
  }
  PopulationModel model;
  model.schema_ =
      std::make_shared<const Schema>(program->slot_names, std::move(outputs));
  model.program_ = std::move(program);
  model.source_ = std::make_shared<const std::string>(text);
  return model;
}

std::vector<std::string> PopulationModel::OutputNames() const {
  std::vector<std::string> out;
  for (std::size_t i : schema_->outputs()) out.push_back(schema_->name(i));
  return out;
}

bool PopulationModel::has_mediator() const {
  return program_->mediator_index >= 0;
}

bool PopulationModel::is_discrete() const {
  return !UsesContinuous(program_->statements);
}

FeatureRecord PopulationModel::Sample(RngStream& rng) const {
  FeatureRecord record(schema_, {});
  SampleInto(rng, record);
  return record;
}

void PopulationModel::SampleInto(RngStream& rng, FeatureRecord& out) const {
  RngChooser chooser(rng);
  internal::ExecuteProgram(*program_, out.mutable_values(), chooser);
}

void PopulationModel::OverrideMediator(const MediatorOverride& override_spec,
                                       RngStream& rng,
                                       FeatureRecord& record) const {
  if (!has_mediator()) throw NoMediatorBlock("model has no mediator block");
  auto slot = schema_->IndexOf(override_spec.attribute);
  if (!slot) {
    throw MissingFeature("override attribute '" + override_spec.attribute +
                         "' is not a model variable");
  }
  RngChooser chooser(rng);
  internal::ReexecuteMediator(*program_, record.mutable_values(),
                              static_cast<int>(*slot), override_spec.value,
                              chooser);
}

Predicate PopulationModel::CompilePredicate(std::string_view text) const {
  auto pool = std::make_shared<ExprPool>();
  ModelParser parser(text, pool.get());
  const int root =
      parser.ParsePredicate(program_->slot_names, program_->assigned_at_return);
  auto impl = std::make_shared<Predicate::Impl>();
  impl->text = std::string(text);
  impl->pool = std::move(pool);
  impl->root = root;
  impl->schema = schema_;
  return Predicate(std::move(impl));
}

// ---------------------------------------------------------------------------
// Conditioned sampling

std::uint64_t RejectionSampleInto(const PopulationModel& model,
                                  const Predicate& predicate, RngStream& rng,
                                  std::uint64_t max_attempts,
                                  FeatureRecord& out) {
  for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    model.SampleInto(rng, out);
    if (predicate.Holds(out)) return attempt;
  }
  throw RejectionExhausted(max_attempts);
}

Draw RejectionSample(const PopulationModel& model, const Predicate& predicate,
                     RngStream& rng, std::uint64_t max_attempts) {
  FeatureRecord record(model.schema(), {});
  const std::uint64_t attempts =
      RejectionSampleInto(model, predicate, rng, max_attempts, record);
  return Draw{std::move(record), attempts};
}

Draw SampleWithMediatorOverride(const PopulationModel& model,
                                const Predicate& predicate,
                                const MediatorOverride& override_spec,
                                RngStream& rng, std::uint64_t max_attempts) {
  if (!model.has_mediator()) throw NoMediatorBlock("model has no mediator block");
  Draw draw = RejectionSample(model, predicate, rng, max_attempts);
  model.OverrideMediator(override_spec, rng, draw.record);
  return draw;
}

}  // namespace fairverify
