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

#include "mimosa/types.hpp"

#include <algorithm>

namespace mimosa {

std::string to_string(const Type& type) {
  switch (type.kind) {
    case TypeKind::Unit: return "unit";
    case TypeKind::Bool: return "bool";
    case TypeKind::Int: return "int";
    case TypeKind::Float: return "float";
    case TypeKind::Var: return type.var;
    case TypeKind::Option: return to_string(type.inner()) + "?";
    case TypeKind::Tuple: {
      std::string out = "(";
      for (std::size_t i = 0; i < type.args.size(); ++i) {
        if (i) out += ", ";
        out += to_string(type.args[i]);
      }
      return out + ")";
    }
  }
  return "?";
}

std::string mangle(const Type& type) {
  switch (type.kind) {
    case TypeKind::Unit: return "u";
    case TypeKind::Bool: return "b";
    case TypeKind::Int: return "i";
    case TypeKind::Float: return "f";
    case TypeKind::Var: return "v";
    case TypeKind::Option: return "o" + mangle(type.inner());
    case TypeKind::Tuple: {
      std::string out = "T" + std::to_string(type.args.size());
      for (const auto& t : type.args) out += mangle(t);
      return out;
    }
  }
  return "?";
}

bool is_ground(const Type& type) {
  if (type.kind == TypeKind::Var) return false;
  return std::all_of(type.args.begin(), type.args.end(),
                     [](const Type& t) { return is_ground(t); });
}

void collect_vars(const Type& type, std::vector<std::string>& out) {
  if (type.kind == TypeKind::Var) {
    if (std::find(out.begin(), out.end(), type.var) == out.end()) {
      out.push_back(type.var);
    }
    return;
  }
  for (const auto& t : type.args) collect_vars(t, out);
}

Type substitute(const Type& type, const TypeSubst& subst) {
  if (type.kind == TypeKind::Var) {
    auto it = subst.find(type.var);
    return it == subst.end() ? type : it->second;
  }
  Type out = type;
  for (auto& t : out.args) t = substitute(t, subst);
  return out;
}

Type product(std::vector<Type> elems) {
  if (elems.empty()) return Type::unit();
  if (elems.size() == 1) return std::move(elems.front());
  return Type::tuple(std::move(elems));
}

}  // namespace mimosa
