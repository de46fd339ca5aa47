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

#include <map>
#include <string>
#include <vector>

namespace mimosa {

enum class TypeKind { Unit, Bool, Int, Float, Option, Tuple, Var };

/// Mimosa type expression. Option has one argument, Tuple at least two.
/// Type variables carry their name; user-written ones keep the leading tick.
struct Type {
  TypeKind kind = TypeKind::Unit;
  std::vector<Type> args;
  std::string var;

  static Type unit() { return {TypeKind::Unit, {}, {}}; }
  static Type boolean() { return {TypeKind::Bool, {}, {}}; }
  static Type integer() { return {TypeKind::Int, {}, {}}; }
  static Type floating() { return {TypeKind::Float, {}, {}}; }
  static Type option(Type inner) { return {TypeKind::Option, {std::move(inner)}, {}}; }
  static Type tuple(std::vector<Type> elems) { return {TypeKind::Tuple, std::move(elems), {}}; }
  static Type variable(std::string name) { return {TypeKind::Var, {}, std::move(name)}; }

  bool is(TypeKind k) const { return kind == k; }
  const Type& inner() const { return args.front(); }

  friend bool operator==(const Type&, const Type&) = default;
};

using TypeSubst = std::map<std::string, Type>;

/// Concrete syntax: `unit`, `bool?`, `(int, 'a)`.
std::string to_string(const Type& type);

/// Compact injective encoding used for monomorphised copy names:
/// unit=u, bool=b, int=i, float=f, option(t)=o<t>, tuple=T<k><t1..tk>.
std::string mangle(const Type& type);

bool is_ground(const Type& type);

/// Type variables in order of first occurrence, without duplicates.
void collect_vars(const Type& type, std::vector<std::string>& out);

Type substitute(const Type& type, const TypeSubst& subst);

/// The type of a pattern-like list: unit for none, the element for one, a tuple otherwise.
Type product(std::vector<Type> elems);

}  // namespace mimosa
