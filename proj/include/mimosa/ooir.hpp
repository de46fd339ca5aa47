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
#include <string>
#include <vector>

#include "mimosa/normir.hpp"
#include "mimosa/value.hpp"

namespace mimosa {

/// e ::= x | !x | c | None | Some x
struct OExpr {
  enum class Kind { Var, State, Const, None, Some };
  Kind kind = Kind::Const;
  std::string name;
  Value value;

  static OExpr var(std::string n) { return {Kind::Var, std::move(n), {}}; }
  static OExpr state(std::string n) { return {Kind::State, std::move(n), {}}; }
  static OExpr constant(Value v) { return {Kind::Const, {}, std::move(v)}; }
  static OExpr none() { return {Kind::None, {}, {}}; }
  static OExpr some(std::string n) { return {Kind::Some, std::move(n), {}}; }
};

enum class InstrKind {
  Assign,          // target = expr
  StateAssign,     // target <- expr
  TupleConstruct,  // target = names...
  TupleDestruct,   // names... = source
  Reset,           // machine.reset(instance)
  Return,          // return expr
  If,              // if source then body else alt
  StepCall,        // target = machine.step(source, instance)
  CaseOpt,         // case source { Some bound: body; None: alt }
};

struct Instr {
  InstrKind kind = InstrKind::Assign;
  std::string target;
  OExpr expr;
  std::vector<std::string> names;
  std::string source;
  std::string machine;
  /// Empty for calls to stateless machines and builtins.
  std::string instance;
  std::string bound;
  std::vector<Instr> body;
  std::vector<Instr> alt;
};

struct MemoryCell {
  std::string name;
  Type type;
  Value init;
};

struct InstanceDecl {
  std::string name;
  std::string machine;
};

/// d = (m, j, r, s), plus the signature and the types of all locals.
struct Machine {
  std::string name;
  std::string in;
  Type in_type;
  Type out_type;
  std::vector<MemoryCell> memory;
  std::vector<InstanceDecl> instances;
  std::vector<Instr> reset;
  std::vector<Instr> step;
  std::map<std::string, Type> locals;
  /// Externally implemented; only the signature is meaningful.
  bool prototype = false;

  /// Stateless machines are called without an instance.
  bool stateless() const { return !prototype && memory.empty() && instances.empty(); }
};

/// Arbitrary reset value of a `pre` cell (0, 0.0, false, (), None, componentwise).
Value nil_constant(const Type& type);

/// m |> b ~> e': variables in memory become state reads.
OExpr translate_base(const std::vector<MemoryCell>& memory, const NormBase& base);

/// Tells objectify whether a callee needs an instance (prototypes and
/// stateful machines do; builtins and stateless machines do not).
using InstancePolicy = std::function<bool(const std::string& callee)>;

/// Left fold of the NormIR equations into a machine. Pre stores are
/// deferred to the end of the enclosing block's instructions.
Machine objectify(const NormStep& step, const InstancePolicy& needs_instance);

/// Machine with only a signature, for a prototype.
Machine prototype_machine(const StepDecl& step);

/// One machine per step of the monomorphised program, in program order.
/// Callees are objectified before their callers so statelessness is known.
std::vector<Machine> objectify_program(const TypedProgram& typed,
                                       const std::vector<NormStep>& steps);

/// Well-formedness: disjoint memory/instance/local names, a single final
/// Return, state accesses and instances declared. Empty when valid.
std::vector<std::string> validate(const Machine& machine);

std::string dump(const OExpr& e);
std::string dump(const Machine& machine);

}  // namespace mimosa
