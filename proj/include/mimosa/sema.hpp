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

#include "mimosa/ast.hpp"
#include "mimosa/diagnostics.hpp"
#include "mimosa/model.hpp"

namespace mimosa {

/// ∀ vars. input → output
struct TypeScheme {
  std::vector<std::string> vars;
  Type input;
  Type output;

  bool is_ground() const { return vars.empty(); }
};

/// A program whose Expr/Pattern type slots are filled, plus one scheme per step.
struct TypedProgram {
  Program program;
  std::map<std::string, TypeScheme> schemes;
};

// ---- type inference ---------------------------------------------------------

/// Hindley-Milner inference over all steps, callees before callers. Operator
/// symbols are resolved to typed builtins by operand type (unconstrained
/// operands default to int). Also rejects duplicate declarations, unknown
/// identifiers and recursion between steps.
TypedProgram infer(Program program);

// ---- causality --------------------------------------------------------------

/// Indices of `body` in causal order. An equation depends on another when it
/// reads a variable bound there, except for `pre x` occurrences in eager
/// positions. Ties are broken by a canonical key (bound names, then text), so
/// the result does not depend on the source order.
std::vector<std::size_t> causal_order(const std::vector<Equation>& body);

/// Reorders the step body in place. Throws CompileError (Phase::Causality)
/// naming one cycle's equations.
void order_equations(StepDecl& step);

// ---- initialisation ---------------------------------------------------------

/// I: defined from the first cycle; U: may be the undefined value at cycle 1.
enum class InitClass { I, U };

inline InitClass join(InitClass a, InitClass b) {
  return a == InitClass::U || b == InitClass::U ? InitClass::U : InitClass::I;
}

/// First-cycle class of every variable of the step (inputs are I).
std::map<std::string, InitClass> init_classes(const StepDecl& step);

/// Throws CompileError (Phase::Init) when a step output, a step/prototype
/// argument, an if condition or an either scrutinee may be undefined at
/// cycle 1. Builtin operator arguments are not checked: they are pure.
void check_init(const StepDecl& step);

// ---- monomorphisation -------------------------------------------------------

/// Keeps the steps reachable from nodes, one copy per ground instantiation
/// (`id__i`, `id__b`), with call sites renamed. Throws CompileError
/// (Phase::Mono) when a reachable site stays polymorphic. `extra_roots` names
/// ground steps kept in addition to the node-implemented ones.
TypedProgram monomorphise(const TypedProgram& typed,
                          const std::vector<std::string>& extra_roots = {});

/// Name of the copy of `step` at the given instantiation of its scheme vars.
std::string instance_name(const std::string& step, const TypeScheme& scheme,
                          const TypeSubst& instantiation);

// ---- network ----------------------------------------------------------------

/// Declared type of each top-level signature item.
std::vector<Type> item_types(const std::vector<Pattern>& items);

/// Coordination-layer checks: one writer and one reader per channel, port
/// counts and types against the implemented step, model coverage. With a
/// null model, the coverage rules are skipped.
std::vector<Diagnostic> check_network(const TypedProgram& typed, const DeploymentModel* model);

}  // namespace mimosa
