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

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mimosa/ast.hpp"
#include "mimosa/sema.hpp"
#include "mimosa/value.hpp"

namespace mimosa {

/// b ::= x | c | None | Some x
struct NormBase {
  enum class Kind { Var, Const, None, Some };
  Kind kind = Kind::Const;
  std::string name;
  Literal literal;

  static NormBase var(std::string name) { return {Kind::Var, std::move(name), {}}; }
  static NormBase constant(Literal lit) { return {Kind::Const, {}, lit}; }
  static NormBase none() { return {Kind::None, {}, {}}; }
  static NormBase some(std::string name) { return {Kind::Some, std::move(name), {}}; }

  friend bool operator==(const NormBase&, const NormBase&) = default;
};

struct Block;

enum class NormKind { Base, Tuple, Pre, Fby, App, If, Either };

/// e ::= b | x,...,x | pre x | bl fby bl | f x | if x then bl else bl | either x or bl
///
/// `names` holds the tuple components, or the single operand of Pre, App
/// (argument), If (condition) and Either (scrutinee). `blocks` holds the
/// Fby operands, the If branches, or the Either fallback.
struct NormExpr {
  NormKind kind = NormKind::Base;
  NormBase base;
  std::vector<std::string> names;
  std::string callee;
  std::vector<Block> blocks;
};

/// Flat pattern: one variable, or a list of at least two variables.
struct NormEquation {
  std::vector<std::string> lhs;
  NormExpr rhs;

  bool is_tuple() const { return lhs.size() > 1; }
};

/// bl ::= [ p_i = e_i ]^n, b
struct Block {
  std::vector<NormEquation> eqs;
  NormBase result;
};

struct NormStep {
  std::string name;
  std::string in;
  Type in_type;
  Type out_type;
  Block body;
  /// Type of every variable bound in the step, inputs included.
  std::map<std::string, Type> var_types;
  /// Next value of the fresh-name counter; objectification continues from it.
  int next_fresh = 0;
};

/// Per-step fresh identifiers: `__<hint><N>`, one counter shared by all hints.
class FreshNames {
 public:
  explicit FreshNames(int start = 0) : next_(start) {}
  std::string operator()(const std::string& hint) { return "__" + hint + std::to_string(next_++); }
  int next() const { return next_; }

 private:
  int next_;
};

/// Rewrites `p = rhs` with nested or wildcard patterns into flat equations:
/// `x,(y,z) = e` becomes `x,<tmp> = e; y,z = <tmp>`, `_` becomes a fresh `__w`.
/// Types of introduced variables are recorded in `types` when `type` is given.
std::vector<NormEquation> flatten_pattern(const Pattern& pattern, NormExpr rhs, FreshNames& fresh,
                                          std::map<std::string, Type>* types = nullptr);

/// Normalises one typed expression: hoisted equations, then the result base.
Block normalise_expr(const Expr& expr, FreshNames& fresh,
                     std::map<std::string, Type>* types = nullptr);

/// Removes variable aliases `x = y` from the step (recursively through
/// nested blocks) and renames the uses, to a fixpoint.
void copy_propagate(NormStep& step);

/// Normalises a typed, monomorphic, causally ordered step with a body and
/// runs copy propagation.
NormStep normalise_step(const StepDecl& step);

/// All non-prototype steps of a monomorphised program, in program order.
std::vector<NormStep> normalise_program(const TypedProgram& typed);

/// Grammar and scope well-formedness: flat patterns, Some on variables,
/// every used variable bound earlier in this or an enclosing block, no
/// variable bound twice. Returns a list of violations (empty when valid).
std::vector<std::string> validate(const NormStep& step);

std::string dump(const NormBase& base);
std::string dump(const NormStep& step);

// ---- interpretation ---------------------------------------------------------

/// Implementation of prototypes during interpretation: (prototype, argument) -> result.
using ExternFn = std::function<Value(const std::string& prototype, const Value& arg)>;

/// Tree-walking interpreter over NormIR. Pre cells are stored at the end of
/// the block that reads them, fby operands are chosen by a per-equation
/// first-cycle flag, and each application of a step keeps its own instance.
class NormInterpreter {
 public:
  /// State of one step application: pre cells, fby flags, sub-instances,
  /// each keyed by the equation that owns it.
  struct Instance {
    const NormStep* step = nullptr;
    std::map<const NormEquation*, Value> cells;
    std::map<const NormEquation*, bool> first;
    std::map<const NormEquation*, std::unique_ptr<Instance>> subs;
  };

  NormInterpreter(const std::vector<NormStep>& steps, ExternFn externs);

  /// A freshly reset instance of `step`.
  Instance instantiate(const std::string& step) const;
  Value step(Instance& instance, const Value& input) const;

 private:
  struct Frame;
  Value eval_base(const NormBase& base, const Frame& frame) const;
  Value eval_block(const Block& block, Instance& inst, Frame& frame) const;
  Value call(const NormEquation& eq, const std::string& callee, const Value& arg, Instance& inst) const;

  std::map<std::string, const NormStep*> steps_;
  ExternFn externs_;
};

}  // namespace mimosa
