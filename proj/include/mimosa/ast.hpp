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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mimosa/diagnostics.hpp"
#include "mimosa/types.hpp"

namespace mimosa {

/// unit is represented by std::monostate.
using Literal = std::variant<std::monostate, bool, std::int64_t, double>;

Type literal_type(const Literal& lit);
std::string literal_to_string(const Literal& lit);

enum class ExprKind {
  Var,
  Const,
  Tuple,
  Pre,
  Arrow,
  Fby,
  App,
  If,
  NoneLit,
  SomeLit,
  Either,
};

/// Surface expression. `name` holds the variable or callee name, `args` the
/// sub-expressions in source order (App has exactly one: its argument).
struct Expr {
  ExprKind kind = ExprKind::Const;
  SourceLoc loc;
  std::string name;
  Literal literal;
  std::vector<Expr> args;
  std::optional<Type> type;

  static Expr var(std::string name, SourceLoc loc = {});
  static Expr constant(Literal lit, SourceLoc loc = {});
  static Expr tuple(std::vector<Expr> elems, SourceLoc loc = {});
  static Expr unary(ExprKind kind, Expr operand, SourceLoc loc = {});
  static Expr binary(ExprKind kind, Expr lhs, Expr rhs, SourceLoc loc = {});
  static Expr app(std::string callee, Expr arg, SourceLoc loc = {});
  static Expr ite(Expr cond, Expr then_branch, Expr else_branch, SourceLoc loc = {});
  static Expr none(SourceLoc loc = {});
};

enum class PatternKind { Var, Wildcard, Tuple };

struct Pattern {
  PatternKind kind = PatternKind::Wildcard;
  SourceLoc loc;
  std::string name;
  std::vector<Pattern> elems;
  /// Type written in a step signature (`a : int`).
  std::optional<Type> annotation;
  std::optional<Type> type;

  static Pattern var(std::string name, SourceLoc loc = {});
  static Pattern wildcard(SourceLoc loc = {});
  static Pattern tuple(std::vector<Pattern> elems, SourceLoc loc = {});
};

/// Variables bound by a pattern, left to right.
void pattern_vars(const Pattern& pattern, std::vector<std::string>& out);

struct Equation {
  Pattern lhs;
  Expr rhs;
  SourceLoc loc;
};

struct StepDecl {
  std::string name;
  SourceLoc loc;
  std::vector<Pattern> inputs;
  std::vector<Pattern> outputs;
  /// Absent for prototypes.
  std::optional<std::vector<Equation>> body;

  bool is_prototype() const { return !body.has_value(); }
};

struct ChannelDecl {
  std::string name;
  SourceLoc loc;
  Type element;
};

struct Port {
  std::string channel;
  bool optional = false;
  SourceLoc loc;
};

enum class TimeUnit { Micros, Millis, Seconds };

std::int64_t micros_per(TimeUnit unit);
const char* unit_suffix(TimeUnit unit);

struct NodeDecl {
  std::string name;
  SourceLoc loc;
  std::string step;
  std::vector<Port> inputs;
  std::vector<Port> outputs;
  std::int64_t period_us = 0;
  /// Unit the period was written in; kept for printing only.
  TimeUnit period_unit = TimeUnit::Millis;
};

struct Program {
  std::vector<StepDecl> steps;
  std::vector<ChannelDecl> channels;
  std::vector<NodeDecl> nodes;

  const StepDecl* find_step(const std::string& name) const;
  StepDecl* find_step(const std::string& name);
  const ChannelDecl* find_channel(const std::string& name) const;
  const NodeDecl* find_node(const std::string& name) const;
};

/// Equality ignoring source locations and inferred types.
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Pattern& a, const Pattern& b);
bool structurally_equal(const Program& a, const Program& b);

}  // namespace mimosa
