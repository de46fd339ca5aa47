// Copyright 2026 The Mimosa Compiler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mimosa/builtins.hpp"
#include "mimosa/parser.hpp"
#include "mimosa/sema.hpp"

namespace mimosa {

namespace {

using ClassMap = std::map<std::string, InitClass>;

bool is_builtin_call(const Expr& e) {
  return find_builtin(e.name) != nullptr || is_operator_symbol(e.name);
}

InitClass classify(const Expr& e, const ClassMap& env) {
  switch (e.kind) {
    case ExprKind::Var: {
      auto it = env.find(e.name);
      return it == env.end() ? InitClass::I : it->second;
    }
    case ExprKind::Const:
    case ExprKind::NoneLit: return InitClass::I;
    case ExprKind::Pre: return InitClass::U;
    case ExprKind::Arrow:
    case ExprKind::Fby: return classify(e.args[0], env);
    case ExprKind::Tuple:
    case ExprKind::App:
    case ExprKind::SomeLit:
    case ExprKind::If:
    case ExprKind::Either: {
      InitClass c = InitClass::I;
      for (const auto& a : e.args) c = join(c, classify(a, env));
      return c;
    }
  }
  return InitClass::I;
}

// Positions whose value is observed at the first cycle. The operand of pre
// and the right operands of -> and fby are not.
void check_positions(const Expr& e, const ClassMap& env) {
  switch (e.kind) {
    case ExprKind::Pre: return;
    case ExprKind::Arrow:
    case ExprKind::Fby: check_positions(e.args[0], env); return;
    case ExprKind::App:
      if (!is_builtin_call(e) && classify(e.args[0], env) == InitClass::U) {
        fail(Phase::Init, e.args[0].loc,
             "argument of '" + e.name + "' may be undefined at the first cycle");
      }
      break;
    case ExprKind::If:
      if (classify(e.args[0], env) == InitClass::U) {
        fail(Phase::Init, e.args[0].loc, "if condition may be undefined at the first cycle");
      }
      break;
    case ExprKind::Either:
      if (classify(e.args[0], env) == InitClass::U) {
        fail(Phase::Init, e.args[0].loc,
             "either scrutinee may be undefined at the first cycle");
      }
      break;
    default: break;
  }
  for (const auto& a : e.args) check_positions(a, env);
}

void check_output(const Pattern& p, const ClassMap& env) {
  if (p.kind == PatternKind::Tuple) {
    for (const auto& e : p.elems) check_output(e, env);
    return;
  }
  if (p.kind != PatternKind::Var) return;
  auto it = env.find(p.name);
  if (it != env.end() && it->second == InitClass::U) {
    fail(Phase::Init, p.loc, "output '" + p.name + "' may be undefined at the first cycle");
  }
}

}  // namespace

std::map<std::string, InitClass> init_classes(const StepDecl& step) {
  ClassMap env;
  std::vector<std::string> inputs;
  for (const auto& p : step.inputs) pattern_vars(p, inputs);
  for (const auto& v : inputs) env[v] = InitClass::I;
  if (!step.body) return env;

  std::vector<std::vector<std::string>> bound;
  for (const auto& eq : *step.body) {
    bound.emplace_back();
    pattern_vars(eq.lhs, bound.back());
    for (const auto& v : bound.back()) env.emplace(v, InitClass::I);
  }
  // Classes only move from I to U, so this terminates.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < step.body->size(); ++i) {
      InitClass c = classify((*step.body)[i].rhs, env);
      for (const auto& v : bound[i]) {
        if (env[v] != c && c == InitClass::U) {
          env[v] = c;
          changed = true;
        }
      }
    }
  }
  return env;
}

void check_init(const StepDecl& step) {
  if (!step.body) return;
  ClassMap env = init_classes(step);
  for (const auto& eq : *step.body) check_positions(eq.rhs, env);
  for (const auto& p : step.outputs) check_output(p, env);
}

}  // namespace mimosa
