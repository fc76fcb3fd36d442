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

// Compiled form of population-model programs and the generic interpreter
// used by both the sampler and the exact-enumeration oracle.

#ifndef FAIRVERIFY_SRC_MODEL_PROGRAM_H_
#define FAIRVERIFY_SRC_MODEL_PROGRAM_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fairverify::internal {

enum class ExprOp {
  kNumber,
  kVar,
  kNeg,
  kNot,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kLt,
  kLe,
  kGt,
  kGe,
  kEq,
  kNe,
  kAnd,
  kOr,
  kCond,
};

struct ExprNode {
  ExprOp op = ExprOp::kNumber;
  double number = 0.0;
  int slot = -1;
  int a = -1;
  int b = -1;
  int c = -1;
};

inline bool Truthy(double v) { return v != 0.0 && !std::isnan(v); }

// Expression nodes live in one flat array; children are indices into it.
class ExprPool {
 public:
  int Add(const ExprNode& node) {
    nodes_.push_back(node);
    return static_cast<int>(nodes_.size()) - 1;
  }
  const ExprNode& at(int i) const { return nodes_[static_cast<std::size_t>(i)]; }

  double Eval(int i, std::span<const double> env) const {
    const ExprNode& n = at(i);
    switch (n.op) {
      case ExprOp::kNumber: return n.number;
      case ExprOp::kVar: return env[static_cast<std::size_t>(n.slot)];
      case ExprOp::kNeg: return -Eval(n.a, env);
      case ExprOp::kNot: return Truthy(Eval(n.a, env)) ? 0.0 : 1.0;
      case ExprOp::kAdd: return Eval(n.a, env) + Eval(n.b, env);
      case ExprOp::kSub: return Eval(n.a, env) - Eval(n.b, env);
      case ExprOp::kMul: return Eval(n.a, env) * Eval(n.b, env);
      case ExprOp::kDiv: return Eval(n.a, env) / Eval(n.b, env);
      case ExprOp::kLt: return Eval(n.a, env) < Eval(n.b, env) ? 1.0 : 0.0;
      case ExprOp::kLe: return Eval(n.a, env) <= Eval(n.b, env) ? 1.0 : 0.0;
      case ExprOp::kGt: return Eval(n.a, env) > Eval(n.b, env) ? 1.0 : 0.0;
      case ExprOp::kGe: return Eval(n.a, env) >= Eval(n.b, env) ? 1.0 : 0.0;
      case ExprOp::kEq: return Eval(n.a, env) == Eval(n.b, env) ? 1.0 : 0.0;
      case ExprOp::kNe: return Eval(n.a, env) != Eval(n.b, env) ? 1.0 : 0.0;
      case ExprOp::kAnd:
        return Truthy(Eval(n.a, env)) && Truthy(Eval(n.b, env)) ? 1.0 : 0.0;
      case ExprOp::kOr:
        return Truthy(Eval(n.a, env)) || Truthy(Eval(n.b, env)) ? 1.0 : 0.0;
      case ExprOp::kCond:
        return Truthy(Eval(n.a, env)) ? Eval(n.b, env) : Eval(n.c, env);
    }
    return std::nan("");
  }

  // Slots read anywhere under node i.
  void CollectReads(int i, std::vector<bool>& out) const {
    const ExprNode& n = at(i);
    if (n.op == ExprOp::kVar) out[static_cast<std::size_t>(n.slot)] = true;
    for (int child : {n.a, n.b, n.c}) {
      if (child >= 0) CollectReads(child, out);
    }
  }

 private:
  std::vector<ExprNode> nodes_;
};

enum class Distribution { kBernoulli, kGaussian, kUniform, kCategorical };

struct Stmt {
  enum class Kind { kSample, kAssign, kIf, kReturn, kMediator };

  Kind kind = Kind::kAssign;
  int slot = -1;                    // kSample, kAssign
  Distribution dist = Distribution::kBernoulli;
  std::vector<int> args;            // kSample: parameter expressions
  int expr = -1;                    // kAssign value, kIf condition
  std::vector<Stmt> body;           // kIf then-branch, kMediator block
  std::vector<Stmt> else_body;      // kIf
  std::vector<int> return_slots;    // kReturn
  int line = 0;
};

struct Program {
  ExprPool exprs;
  std::vector<Stmt> statements;
  std::vector<std::string> slot_names;
  std::vector<int> output_slots;
  // Slots definitely assigned on every path that reaches a return.
  std::vector<bool> assigned_at_return;
  // Index into `statements` of the mediator block, or -1.
  int mediator_index = -1;
  // Slots assigned anywhere inside the mediator block.
  std::vector<bool> mediator_slots;
};

// Walks `block`, delegating every random primitive to
// `chooser.Draw(const Stmt&, std::span<const double> args)`. Returns true
// once a return statement executes.
template <class Chooser>
bool ExecuteBlock(const Program& program, const std::vector<Stmt>& block,
                  std::vector<double>& env, Chooser& chooser) {
  double args[16];
  std::vector<double> many_args;
  for (const Stmt& s : block) {
    switch (s.kind) {
      case Stmt::Kind::kSample: {
        std::span<double> values;
        if (s.args.size() <= std::size(args)) {
          values = std::span<double>(args, s.args.size());
        } else {
          many_args.resize(s.args.size());
          values = std::span<double>(many_args);
        }
        for (std::size_t i = 0; i < s.args.size(); ++i) {
          values[i] = program.exprs.Eval(s.args[i], env);
        }
        env[static_cast<std::size_t>(s.slot)] =
            chooser.Draw(s, std::span<const double>(values));
        break;
      }
      case Stmt::Kind::kAssign:
        env[static_cast<std::size_t>(s.slot)] = program.exprs.Eval(s.expr, env);
        break;
      case Stmt::Kind::kIf:
        if (Truthy(program.exprs.Eval(s.expr, env))) {
          if (ExecuteBlock(program, s.body, env, chooser)) return true;
        } else {
          if (ExecuteBlock(program, s.else_body, env, chooser)) return true;
        }
        break;
      case Stmt::Kind::kMediator:
        if (ExecuteBlock(program, s.body, env, chooser)) return true;
        break;
      case Stmt::Kind::kReturn:
        return true;
    }
  }
  return false;
}

template <class Chooser>
void ExecuteProgram(const Program& program, std::vector<double>& env,
                    Chooser& chooser) {
  env.assign(program.slot_names.size(), std::nan(""));
  ExecuteBlock(program, program.statements, env, chooser);
}

// Re-runs only the mediator block on a copy of `env` in which `attribute`
// is replaced by `value`, then writes the mediator's variables back.
template <class Chooser>
void ReexecuteMediator(const Program& program, std::vector<double>& env,
                       int attribute, double value, Chooser& chooser) {
  std::vector<double> scratch = env;
  scratch[static_cast<std::size_t>(attribute)] = value;
  const Stmt& block =
      program.statements[static_cast<std::size_t>(program.mediator_index)];
  ExecuteBlock(program, block.body, scratch, chooser);
  for (std::size_t i = 0; i < env.size(); ++i) {
    if (program.mediator_slots[i]) env[i] = scratch[i];
  }
}

}  // namespace fairverify::internal

#endif  // FAIRVERIFY_SRC_MODEL_PROGRAM_H_
