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

#include <algorithm>
#include <deque>
#include <set>

#include "mimosa/builtins.hpp"
#include "mimosa/sema.hpp"

namespace mimosa {

namespace {

// Binds the scheme variables of `pattern` so that it equals `ground`.
bool match(const Type& pattern, const Type& ground, TypeSubst& inst) {
  if (pattern.kind == TypeKind::Var) {
    auto [it, inserted] = inst.emplace(pattern.var, ground);
    return inserted || it->second == ground;
  }
  if (pattern.kind != ground.kind || pattern.args.size() != ground.args.size()) return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    if (!match(pattern.args[i], ground.args[i], inst)) return false;
  }
  return true;
}

void require_ground(const Type& t, SourceLoc loc, const std::string& step) {
  if (!is_ground(t)) {
    fail(Phase::Mono, loc,
         "unresolved polymorphic type " + to_string(t) + " in step '" + step + "'");
  }
}

struct Request {
  std::string original;
  TypeSubst inst;
  std::string copy;
};

class Monomorphiser {
 public:
  explicit Monomorphiser(const TypedProgram& typed) : typed_(typed) {}

  TypedProgram run(const std::vector<std::string>& extra_roots) {
    const Program& prog = typed_.program;
    for (const auto& name : extra_roots) {
      const StepDecl* step = prog.find_step(name);
      if (!step) fail(Phase::Mono, {}, "unknown root step '" + name + "'");
      if (!typed_.schemes.at(name).is_ground()) {
        fail(Phase::Mono, step->loc, "root step '" + name + "' is polymorphic");
      }
      request(name, {});
    }
    for (const auto& node : prog.nodes) {
      const StepDecl* step = prog.find_step(node.step);
      if (!step) {
        fail(Phase::Network, node.loc,
             "node '" + node.name + "' implements unknown step '" + node.step + "'");
      }
      const TypeScheme& scheme = typed_.schemes.at(step->name);
      if (!scheme.is_ground()) {
        fail(Phase::Mono, node.loc,
             "node '" + node.name + "' implements polymorphic step '" + step->name + "' : " +
                 to_string(scheme.input) + " --> " + to_string(scheme.output));
      }
      request(step->name, {});
    }

    while (!queue_.empty()) {
      Request r = queue_.front();
      queue_.pop_front();
      instantiate(r);
    }

    TypedProgram out;
    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < prog.steps.size(); ++i) position[prog.steps[i].name] = i;
    std::sort(copies_.begin(), copies_.end(), [&](const auto& a, const auto& b) {
      auto pa = position.at(a.first);
      auto pb = position.at(b.first);
      return pa != pb ? pa < pb : a.second.name < b.second.name;
    });
    for (auto& [original, step] : copies_) {
      out.schemes[step.name] = schemes_.at(step.name);
      out.program.steps.push_back(std::move(step));
    }
    out.program.channels = prog.channels;
    out.program.nodes = prog.nodes;
    return out;
  }

 private:
  std::string request(const std::string& name, const TypeSubst& inst) {
    const TypeScheme& scheme = typed_.schemes.at(name);
    std::string copy = scheme.is_ground() ? name : instance_name(name, scheme, inst);
    if (seen_.insert(copy).second) queue_.push_back({name, inst, copy});
    return copy;
  }

  void instantiate(const Request& r) {
    StepDecl step = *typed_.program.find_step(r.original);
    step.name = r.copy;
    for (auto& p : step.inputs) rewrite(p, r.inst, step.name);
    for (auto& p : step.outputs) rewrite(p, r.inst, step.name);
    if (step.body) {
      for (auto& eq : *step.body) {
        rewrite(eq.lhs, r.inst, step.name);
        rewrite(eq.rhs, r.inst, step.name);
      }
    }
    const TypeScheme& scheme = typed_.schemes.at(r.original);
    TypeScheme ground;
    ground.input = substitute(scheme.input, r.inst);
    ground.output = substitute(scheme.output, r.inst);
    require_ground(ground.input, step.loc, step.name);
    require_ground(ground.output, step.loc, step.name);
    schemes_[step.name] = ground;
    copies_.emplace_back(r.original, std::move(step));
  }

  void rewrite(Pattern& p, const TypeSubst& inst, const std::string& step) {
    if (p.type) {
      p.type = substitute(*p.type, inst);
      require_ground(*p.type, p.loc, step);
      if (p.annotation) p.annotation = p.type;
    }
    for (auto& e : p.elems) rewrite(e, inst, step);
  }

  void rewrite(Expr& e, const TypeSubst& inst, const std::string& step) {
    for (auto& a : e.args) rewrite(a, inst, step);
    if (e.type) {
      e.type = substitute(*e.type, inst);
      require_ground(*e.type, e.loc, step);
    }
    if (e.kind != ExprKind::App || find_builtin(e.name)) return;

    const TypeScheme& callee = typed_.schemes.at(e.name);
    TypeSubst call;
    if (!match(callee.input, *e.args[0].type, call) || !match(callee.output, *e.type, call)) {
      fail(Phase::Mono, e.loc, "cannot instantiate step '" + e.name + "' at this call site");
    }
    e.name = request(e.name, call);
  }

  const TypedProgram& typed_;
  std::deque<Request> queue_;
  std::set<std::string> seen_;
  std::vector<std::pair<std::string, StepDecl>> copies_;
  std::map<std::string, TypeScheme> schemes_;
};

}  // namespace

std::string instance_name(const std::string& step, const TypeScheme& scheme,
                          const TypeSubst& instantiation) {
  std::string name = step + "__";
  for (const auto& v : scheme.vars) {
    auto it = instantiation.find(v);
    name += it == instantiation.end() ? "u" : mangle(it->second);
  }
  return name;
}

TypedProgram monomorphise(const TypedProgram& typed, const std::vector<std::string>& extra_roots) {
  return Monomorphiser(typed).run(extra_roots);
}

}  // namespace mimosa
