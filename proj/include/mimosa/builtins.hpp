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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mimosa/types.hpp"
#include "mimosa/value.hpp"

namespace mimosa {

/// A stateless external step the language provides implicitly
/// (arithmetic, comparison, logic). Binary builtins take a 2-tuple.
struct Builtin {
  std::string name;
  Type input;
  Type output;
};

const Builtin* find_builtin(std::string_view name);
const std::vector<Builtin>& builtins();

/// Operand types an operator symbol is defined for. Empty for names that are
/// not operator symbols.
std::vector<TypeKind> operator_domain(std::string_view symbol);

/// True when the operator's result is bool regardless of the operand type.
bool operator_is_predicate(std::string_view symbol);

bool operator_is_unary(std::string_view symbol);

/// Resolves an operator symbol at a concrete operand type (`+`, int -> add_int).
std::optional<std::string> resolve_operator(std::string_view symbol, TypeKind operand);

/// Evaluates a builtin. Int arithmetic wraps (two's complement); integer
/// division by zero throws EvalError.
Value eval_builtin(std::string_view name, const Value& arg);

}  // namespace mimosa
