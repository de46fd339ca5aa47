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

#include <map>

#include "mimosa/diagnostics.hpp"

namespace mimosa {

namespace {

struct OperatorInfo {
  const char* stem;
  std::vector<TypeKind> domain;
  bool predicate;
  bool unary;
};

const std::map<std::string, OperatorInfo, std::less<>>& operator_table() {
  static const std::map<std::string, OperatorInfo, std::less<>> table = {
      {"+", {"add", {TypeKind::Int, TypeKind::Float}, false, false}},
      {"-", {"sub", {TypeKind::Int, TypeKind::Float}, false, false}},
      {"*", {"mul", {TypeKind::Int, TypeKind::Float}, false, false}},
      {"/", {"div", {TypeKind::Int, TypeKind::Float}, false, false}},
      {"~-", {"neg", {TypeKind::Int, TypeKind::Float}, false, true}},
      {"<", {"lt", {TypeKind::Int, TypeKind::Float}, true, false}},
      {"<=", {"le", {TypeKind::Int, TypeKind::Float}, true, false}},
      {">", {"gt", {TypeKind::Int, TypeKind::Float}, true, false}},
      {">=", {"ge", {TypeKind::Int, TypeKind::Float}, true, false}},
      {"==", {"eq", {TypeKind::Int, TypeKind::Float, TypeKind::Bool}, true, false}},
      {"!=", {"ne", {TypeKind::Int, TypeKind::Float, TypeKind::Bool}, true, false}},
      {"&&", {"and", {TypeKind::Bool}, false, false}},
      {"||", {"or", {TypeKind::Bool}, false, false}},
      {"!", {"not", {TypeKind::Bool}, false, true}},
  };
  return table;
}

Type base_type(TypeKind kind) {
  Type t;
  t.kind = kind;
  return t;
}

const char* kind_suffix(TypeKind kind) {
  switch (kind) {
    case TypeKind::Int: return "int";
    case TypeKind::Float: return "float";
    case TypeKind::Bool: return "bool";
    default: return "?";
  }
}

std::vector<Builtin> make_builtins() {
  std::vector<Builtin> out;
  for (const auto& [sym, info] : operator_table()) {
    for (TypeKind k : info.domain) {
      Type operand = base_type(k);
      Builtin b;
      b.name = std::string(info.stem) + "_" + kind_suffix(k);
      b.input = info.unary ? operand : Type::tuple({operand, operand});
      b.output = info.predicate ? Type::boolean() : operand;
      out.push_back(std::move(b));
    }
  }
  out.push_back({"float_of_int", Type::integer(), Type::floating()});
  return out;
}

std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}

std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
}

std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b));
}

}  // namespace

const std::vector<Builtin>& builtins() {
  static const std::vector<Builtin> table = make_builtins();
  return table;
}

const Builtin* find_builtin(std::string_view name) {
  for (const auto& b : builtins()) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

std::vector<TypeKind> operator_domain(std::string_view symbol) {
  auto it = operator_table().find(symbol);
  return it == operator_table().end() ? std::vector<TypeKind>{} : it->second.domain;
}

bool operator_is_predicate(std::string_view symbol) {
  auto it = operator_table().find(symbol);
  return it != operator_table().end() && it->second.predicate;
}

bool operator_is_unary(std::string_view symbol) {
  auto it = operator_table().find(symbol);
  return it != operator_table().end() && it->second.unary;
}

std::optional<std::string> resolve_operator(std::string_view symbol, TypeKind operand) {
  auto it = operator_table().find(symbol);
  if (it == operator_table().end()) return std::nullopt;
  for (TypeKind k : it->second.domain) {
    if (k == operand) return std::string(it->second.stem) + "_" + kind_suffix(k);
  }
  return std::nullopt;
}

Value eval_builtin(std::string_view name, const Value& arg) {
  if (name == "float_of_int") return Value::floating(static_cast<double>(arg.i));
  if (name == "not_bool") return Value::boolean(!arg.b);
  if (name == "neg_int") return Value::integer(wrap_sub(0, arg.i));
  if (name == "neg_float") return Value::floating(-arg.f);

  if (arg.kind != TypeKind::Tuple || arg.elems.size() != 2) {
    throw EvalError("builtin " + std::string(name) + " expects a pair");
  }
  const Value& a = arg.elems[0];
  const Value& b = arg.elems[1];
  auto pos = name.find('_');
  std::string_view stem = name.substr(0, pos);
  std::string_view kind = name.substr(pos + 1);

  if (kind == "bool") {
    if (stem == "and") return Value::boolean(a.b && b.b);
    if (stem == "or") return Value::boolean(a.b || b.b);
    if (stem == "eq") return Value::boolean(a.b == b.b);
    if (stem == "ne") return Value::boolean(a.b != b.b);
  } else if (kind == "int") {
    if (stem == "add") return Value::integer(wrap_add(a.i, b.i));
    if (stem == "sub") return Value::integer(wrap_sub(a.i, b.i));
    if (stem == "mul") return Value::integer(wrap_mul(a.i, b.i));
    if (stem == "div") {
      if (b.i == 0) throw EvalError("integer division by zero");
      if (b.i == -1) return Value::integer(wrap_sub(0, a.i));
      return Value::integer(a.i / b.i);
    }
    if (stem == "lt") return Value::boolean(a.i < b.i);
    if (stem == "le") return Value::boolean(a.i <= b.i);
    if (stem == "gt") return Value::boolean(a.i > b.i);
    if (stem == "ge") return Value::boolean(a.i >= b.i);
    if (stem == "eq") return Value::boolean(a.i == b.i);
    if (stem == "ne") return Value::boolean(a.i != b.i);
  } else if (kind == "float") {
    if (stem == "add") return Value::floating(a.f + b.f);
    if (stem == "sub") return Value::floating(a.f - b.f);
    if (stem == "mul") return Value::floating(a.f * b.f);
    if (stem == "div") return Value::floating(a.f / b.f);
    if (stem == "lt") return Value::boolean(a.f < b.f);
    if (stem == "le") return Value::boolean(a.f <= b.f);
    if (stem == "gt") return Value::boolean(a.f > b.f);
    if (stem == "ge") return Value::boolean(a.f >= b.f);
    if (stem == "eq") return Value::boolean(a.f == b.f);
    if (stem == "ne") return Value::boolean(a.f != b.f);
  }
  throw EvalError("unknown builtin " + std::string(name));
}

}  // namespace mimosa
