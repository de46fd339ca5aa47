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

#include <span>
#include <string_view>

#include "mimosa/ast.hpp"
#include "mimosa/lexer.hpp"

namespace mimosa {

/// Callee names the parser gives to operator applications. Sema resolves them
/// to typed builtins (`+` on int becomes `add_int`).
namespace op {
inline constexpr std::string_view kNeg = "~-";
}

/// Recursive-descent parser over a token sequence. Infix and prefix operators
/// become App nodes whose callee is the operator symbol; binary operators take
/// a 2-tuple argument.
Program parse(std::span<const Token> tokens);

/// tokenize + parse.
Program parse_source(std::string_view source);

/// Parses a standalone expression (used by tests and the stimulus tooling).
Expr parse_expression(std::string_view source);

/// Parses a standalone type expression such as `(int, bool?)`.
Type parse_type(std::string_view source);

bool is_operator_symbol(std::string_view callee);

}  // namespace mimosa
