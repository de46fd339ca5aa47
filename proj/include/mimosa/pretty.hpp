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

#include <string>

#include "mimosa/ast.hpp"

namespace mimosa {

/// Concrete syntax for a whole program: steps, then channels, then nodes.
/// parse_source(pretty(p)) is structurally equal to p for parsed programs.
std::string pretty(const Program& program);

std::string pretty(const Expr& expr);
std::string pretty(const Pattern& pattern);
std::string pretty(const Equation& equation);

}  // namespace mimosa
