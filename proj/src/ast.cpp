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

#include "mimosa/ast.hpp"

#include <algorithm>
#include <cstdio>

namespace mimosa {

Type literal_type(const Literal& lit) {
  switch (lit.index()) {
    case 0: return Type::unit();
    case 1: return Type::boolean();
    case 2: return Type::integer();
    default: return Type::floating();
  }
}

std::string literal_to_string(const Literal& lit) {
  if (std::holds_alternative<std::monostate>(lit)) return "()";
  if (const auto* b = std::get_if<bool>(&lit)) return *b ? "true" : "false";
  if (const auto* i = std::get_if<std::int64_t>(&lit)) return std::to_string(*i);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(lit));
  std::string out = buf;
  if (out.find_first_of(".eEn") == std::string::npos) out += ".0";
  return out;
}

Expr Expr::var(std::string name, SourceLoc loc) {
  Expr e;
  e.kind = ExprKind::Var;
  e.name = std::move(name);
  e.loc = loc;
  return e;
}

Expr Expr::constant(Literal lit, SourceLoc loc) {
  Expr e;
  e.kind = ExprKind::Const;
  e.literal = lit;
  e.loc = loc;
  return e;
}

Expr Expr::tuple(std::vector<Expr> elems, SourceLoc loc) {
  Expr e;
  e.kind = ExprKind::Tuple;
  e.args = std::move(elems);
  e.loc = loc;
  return e;
}

Expr Expr::unary(ExprKind kind, Expr operand, SourceLoc loc) {
  Expr e;
  e.kind = kind;
  e.args.push_back(std::move(operand));
  e.loc = loc;
  return e;
}

Expr Expr::binary(ExprKind kind, Expr lhs, Expr rhs, SourceLoc loc) {
  Expr e;
  e.kind = kind;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  e.loc = loc;
  return e;
}

Expr Expr::app(std::string callee, Expr arg, SourceLoc loc) {
  Expr e;
  e.kind = ExprKind::App;
  e.name = std::move(callee);
  e.args.push_back(std::move(arg));
  e.loc = loc;
  return e;
}

Expr Expr::ite(Expr cond, Expr then_branch, Expr else_branch, SourceLoc loc) {
  Expr e;
  e.kind = ExprKind::If;
  e.args.push_back(std::move(cond));
  e.args.push_back(std::move(then_branch));
  e.args.push_back(std::move(else_branch));
  e.loc = loc;
  return e;
}

Expr Expr::none(SourceLoc loc) {
  Expr e;
  e.kind = ExprKind::NoneLit;
  e.loc = loc;
  return e;
}

Pattern Pattern::var(std::string name, SourceLoc loc) {
  Pattern p;
  p.kind = PatternKind::Var;
  p.name = std::move(name);
  p.loc = loc;
  return p;
}

Pattern Pattern::wildcard(SourceLoc loc) {
  Pattern p;
  p.kind = PatternKind::Wildcard;
  p.loc = loc;
  return p;
}

Pattern Pattern::tuple(std::vector<Pattern> elems, SourceLoc loc) {
  Pattern p;
  p.kind = PatternKind::Tuple;
  p.elems = std::move(elems);
  p.loc = loc;
  return p;
}

void pattern_vars(const Pattern& pattern, std::vector<std::string>& out) {
  switch (pattern.kind) {
    case PatternKind::Var: out.push_back(pattern.name); break;
    case PatternKind::Wildcard: break;
    case PatternKind::Tuple:
      for (const auto& p : pattern.elems) pattern_vars(p, out);
      break;
  }
}

std::int64_t micros_per(TimeUnit unit) {
  switch (unit) {
    case TimeUnit::Micros: return 1;
    case TimeUnit::Millis: return 1000;
    case TimeUnit::Seconds: return 1000000;
  }
  return 1;
}

const char* unit_suffix(TimeUnit unit) {
  switch (unit) {
    case TimeUnit::Micros: return "us";
    case TimeUnit::Millis: return "ms";
    case TimeUnit::Seconds: return "s";
  }
  return "us";
}

const StepDecl* Program::find_step(const std::string& name) const {
  for (const auto& s : steps) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

StepDecl* Program::find_step(const std::string& name) {
  for (auto& s : steps) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const ChannelDecl* Program::find_channel(const std::string& name) const {
  for (const auto& c : channels) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const NodeDecl* Program::find_node(const std::string& name) const {
  for (const auto& n : nodes) {
    if (n.name == name) return &n;
  }
  return nullptr;
}

namespace {

template <typename T, typename Eq>
bool all_equal(const std::vector<T>& a, const std::vector<T>& b, Eq eq) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!eq(a[i], b[i])) return false;
  }
  return true;
}

bool same_literal(const Literal& a, const Literal& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<double>(&a)) {
    // compare bit patterns through the printed form so NaN equals NaN
    return literal_to_string(*x) == literal_to_string(b);
  }
  return a == b;
}

bool same_equation(const Equation& a, const Equation& b) {
  return structurally_equal(a.lhs, b.lhs) && structurally_equal(a.rhs, b.rhs);
}

bool same_step(const StepDecl& a, const StepDecl& b) {
  auto pat = [](const Pattern& x, const Pattern& y) { return structurally_equal(x, y); };
  if (a.name != b.name || a.body.has_value() != b.body.has_value()) return false;
  if (!all_equal(a.inputs, b.inputs, pat) || !all_equal(a.outputs, b.outputs, pat)) {
    return false;
  }
  return !a.body || all_equal(*a.body, *b.body, same_equation);
}

bool same_port(const Port& a, const Port& b) {
  return a.channel == b.channel && a.optional == b.optional;
}

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.name != b.name) return false;
  if (a.kind == ExprKind::Const && !same_literal(a.literal, b.literal)) return false;
  return all_equal(a.args, b.args,
                   [](const Expr& x, const Expr& y) { return structurally_equal(x, y); });
}

bool structurally_equal(const Pattern& a, const Pattern& b) {
  if (a.kind != b.kind || a.name != b.name || a.annotation != b.annotation) return false;
  return all_equal(a.elems, b.elems,
                   [](const Pattern& x, const Pattern& y) { return structurally_equal(x, y); });
}

bool structurally_equal(const Program& a, const Program& b) {
  return all_equal(a.steps, b.steps, same_step) &&
         all_equal(a.channels, b.channels,
                   [](const ChannelDecl& x, const ChannelDecl& y) {
                     return x.name == y.name && x.element == y.element;
                   }) &&
         all_equal(a.nodes, b.nodes, [](const NodeDecl& x, const NodeDecl& y) {
           return x.name == y.name && x.step == y.step && x.period_us == y.period_us &&
                  all_equal(x.inputs, y.inputs, same_port) &&
                  all_equal(x.outputs, y.outputs, same_port);
         });
}

}  // namespace mimosa
