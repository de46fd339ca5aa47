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

#include <stdexcept>
#include <string>

#include "mimosa/ast.hpp"
#include "mimosa/value.hpp"

namespace oracle {

/// Raised for integer division by zero.
struct Fault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// True when the step and everything it calls are defined by equations
/// without pre, -> or fby, and no prototype is reached.
bool combinational(const mimosa::Program& program, const std::string& step);

/// Direct evaluation of a typed surface step on one input. Variables are
/// computed on demand from their defining equation, so the result does not
/// depend on equation order.
mimosa::Value eval_step(const mimosa::Program& program, const std::string& step,
                        const mimosa::Value& input);

}  // namespace oracle
