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
#include <string>
#include <string_view>
#include <vector>

#include "mimosa/ast.hpp"
#include "mimosa/types.hpp"

namespace mimosa {

/// Runtime value. Options keep their payload in `elems` (empty for None),
/// tuples keep their components there.
struct Value {
  TypeKind kind = TypeKind::Unit;
  bool b = false;
  std::int64_t i = 0;
  double f = 0.0;
  std::vector<Value> elems;

  static Value unit() { return {}; }
  static Value boolean(bool v);
  static Value integer(std::int64_t v);
  static Value floating(double v);
  static Value none();
  static Value some(Value v);
  static Value tuple(std::vector<Value> elems);

  bool is_some() const { return kind == TypeKind::Option && !elems.empty(); }

  /// Bit-exact equality (floats compare by representation).
  friend bool operator==(const Value& a, const Value& b);
};

Value literal_value(const Literal& lit);

/// The arbitrary reset constant for a `pre` cell: 0, 0.0, false, (), None,
/// componentwise for tuples.
Value nil_value(const Type& type);

bool value_has_type(const Value& v, const Type& type);

/// `()`, `true`, `-3`, floats with 17 significant digits, `None`, `Some(v)`, `(v,w)`.
std::string format_value(const Value& v);

/// Type-directed parser for the value syntax above. Throws CompileError
/// (Phase::Stimulus) on malformed input.
Value parse_value(std::string_view text, const Type& type);

/// Comma-separated list of values at top level (`true, false, Some(1)`).
std::vector<Value> parse_value_list(std::string_view text, const Type& type);

}  // namespace mimosa
