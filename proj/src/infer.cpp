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
#include <functional>
#include <set>

#include "mimosa/builtins.hpp"
#include "mimosa/parser.hpp"
#include "mimosa/sema.hpp"

namespace mimosa {

namespace {

struct PendingOperator {
  Expr* app;
  Type operand;
};

class Inferencer {
 public:
  explicit Inferencer(TypedProgram& typed) : typed_(typed) {}

  void run() {
    check_declarations();
    for (std::size_t index : step_order()) infer_step(typed_.program.steps[index]);
  }

 private:
  // ---- declarations and call graph ------------------------------------------

  void check_declarations() {
    std::set<std::string> seen;
    for (const auto& s : typed_.program.steps) {
      if (find_builtin(s.name)) {
        fail(Phase::Names, s.loc, "step '" + s.name + "' shadows a builtin");
      }
      if (!seen.insert(s.name).second) {
        fail(Phase::Names, s.loc, "duplicate step '" + s.name + "'");
      }
    }
  }

  static void callees(const Expr& e, std::vector<std::pair<std::string, SourceLoc>>& out) {
    if (e.kind == ExprKind::App) out.emplace_back(e.name, e.loc);
    for (const auto& a : e.args) callees(a, out);
  }

  // Steps in callee-first order; rejects recursion.
  std::vector<std::size_t> step_order() {
    const auto& steps = typed_.program.steps;
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < steps.size(); ++i) index[steps[i].name] = i;

    std::vector<int> state(steps.size(), 0);  // 0 new, 1 on stack, 2 done
    std::vector<std::size_t> order;
    std::function<void(std::size_t)> visit = [&](std::size_t i) {
      state[i] = 1;
      if (steps[i].body) {
        std::vector<std::pair<std::string, SourceLoc>> calls;
        for (const auto& eq : *steps[i].body) callees(eq.rhs, calls);
        for (const auto& [name, loc] : calls) {
          auto it = index.find(name);
          if (it == index.end()) continue;
          if (state[it->second] == 1) {
            fail(Phase::Names, loc,
                 "recursive call from step '" + steps[i].name + "' to '" + name + "'");
          }
          if (state[it->second] == 0) visit(it->second);
        }
      }
      state[i] = 2;
      order.push_back(i);
    };
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (state[i] == 0) visit(i);
    }
    return order;
  }

  // ---- substitution -----------------------------------------------------------

  Type fresh() { return Type::variable("_t" + std::to_string(next_var_++)); }

  Type resolve(const Type& t) const {
    if (t.kind == TypeKind::Var) {
      auto it = subst_.find(t.var);
      return it == subst_.end() ? t : resolve(it->second);
    }
    Type out = t;
    for (auto& a : out.args) a = resolve(a);
    return out;
  }

  bool occurs(const std::string& var, const Type& t) const {
    if (t.kind == TypeKind::Var) return t.var == var;
    return std::any_of(t.args.begin(), t.args.end(),
                       [&](const Type& a) { return occurs(var, a); });
  }

  std::string show(const Type& t) const {
    // inference variables print as 'a, 'b, ... in order of appearance
    Type r = resolve(t);
    std::vector<std::string> vars;
    collect_vars(r, vars);
    TypeSubst names;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (vars[i].front() == '\'') continue;
      names[vars[i]] = Type::variable("'" + std::string(1, static_cast<char>('a' + i % 26)));
    }
    return to_string(substitute(r, names));
  }

  void unify(const Type& expected, const Type& found, SourceLoc loc) {
    Type a = resolve(expected);
    Type b = resolve(found);
    occurs_failure_ = false;
    if (!unify_resolved(a, b)) {
      if (occurs_failure_) {
        fail(Phase::Types, loc,
             "occurs check: cannot unify " + show(a) + " with " + show(b) +
                 " (infinite type)");
      }
      std::string what = "type mismatch: expected " + show(a) + ", found " + show(b);
      if (a.kind == TypeKind::Tuple && b.kind == TypeKind::Tuple &&
          a.args.size() != b.args.size()) {
        what = "arity mismatch: expected " + std::to_string(a.args.size()) +
               "-tuple " + show(a) + ", found " + std::to_string(b.args.size()) + "-tuple " +
               show(b);
      }
      fail(Phase::Types, loc, what);
    }
  }

  bool unify_resolved(const Type& a0, const Type& b0) {
    Type a = resolve(a0);
    Type b = resolve(b0);
    if (a.kind == TypeKind::Var && b.kind == TypeKind::Var && a.var == b.var) return true;
    if (a.kind == TypeKind::Var) return bind(a.var, b);
    if (b.kind == TypeKind::Var) return bind(b.var, a);
    if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (!unify_resolved(a.args[i], b.args[i])) return false;
    }
    return true;
  }

  bool bind(const std::string& var, const Type& t) {
    if (occurs(var, t)) {
      occurs_failure_ = true;
      return false;
    }
    subst_[var] = t;
    return true;
  }

  // ---- patterns ---------------------------------------------------------------

  Type annotation_type(const Type& annot) {
    if (annot.kind == TypeKind::Var) {
      auto [it, inserted] = ticks_.try_emplace(annot.var);
      if (inserted) it->second = fresh();
      return it->second;
    }
    Type out = annot;
    for (auto& a : out.args) a = annotation_type(a);
    return out;
  }

  // Assigns fresh/annotated types to a signature item and binds its variables.
  Type signature_item(Pattern& p, bool bind_vars) {
    Type t;
    if (p.kind == PatternKind::Tuple) {
      std::vector<Type> elems;
      for (auto& e : p.elems) elems.push_back(signature_item(e, bind_vars));
      t = Type::tuple(std::move(elems));
    } else {
      t = p.annotation ? annotation_type(*p.annotation) : fresh();
      if (bind_vars && p.kind == PatternKind::Var) bind_var(p.name, t, p.loc);
    }
    p.type = t;
    return t;
  }

  void bind_var(const std::string& name, const Type& t, SourceLoc loc) {
    if (!env_.emplace(name, t).second) {
      fail(Phase::Names, loc, "variable '" + name + "' is defined more than once");
    }
  }

  Type equation_pattern(Pattern& p) {
    Type t;
    switch (p.kind) {
      case PatternKind::Var:
        t = fresh();
        bind_var(p.name, t, p.loc);
        break;
      case PatternKind::Wildcard: t = fresh(); break;
      case PatternKind::Tuple: {
        std::vector<Type> elems;
        for (auto& e : p.elems) elems.push_back(equation_pattern(e));
        t = Type::tuple(std::move(elems));
        break;
      }
    }
    p.type = t;
    return t;
  }

  // ---- expressions ------------------------------------------------------------

  Type expr(Expr& e) {
    Type t;
    switch (e.kind) {
      case ExprKind::Var: {
        auto it = env_.find(e.name);
        if (it == env_.end()) fail(Phase::Names, e.loc, "unknown identifier '" + e.name + "'");
        t = it->second;
        break;
      }
      case ExprKind::Const: t = literal_type(e.literal); break;
      case ExprKind::Tuple: {
        std::vector<Type> elems;
        for (auto& a : e.args) elems.push_back(expr(a));
        t = Type::tuple(std::move(elems));
        break;
      }
      case ExprKind::Pre: t = expr(e.args[0]); break;
      case ExprKind::Arrow:
      case ExprKind::Fby: {
        t = expr(e.args[0]);
        Type rhs = expr(e.args[1]);
        unify(t, rhs, e.args[1].loc);
        break;
      }
      case ExprKind::App: t = application(e); break;
      case ExprKind::If: {
        unify(Type::boolean(), expr(e.args[0]), e.args[0].loc);
        t = expr(e.args[1]);
        unify(t, expr(e.args[2]), e.args[2].loc);
        break;
      }
      case ExprKind::NoneLit: t = Type::option(fresh()); break;
      case ExprKind::SomeLit: t = Type::option(expr(e.args[0])); break;
      case ExprKind::Either: {
        t = fresh();
        unify(Type::option(t), expr(e.args[0]), e.args[0].loc);
        unify(t, expr(e.args[1]), e.args[1].loc);
        break;
      }
    }
    e.type = t;
    return t;
  }

  Type application(Expr& e) {
    Type arg = expr(e.args[0]);

    if (is_operator_symbol(e.name)) {
      auto domain = operator_domain(e.name);
      Type operand = domain.size() == 1 ? Type{domain.front(), {}, {}} : fresh();
      Type input = operator_is_unary(e.name) ? operand : Type::tuple({operand, operand});
      unify(input, arg, e.args[0].loc);
      pending_.push_back({&e, operand});
      return operator_is_predicate(e.name) ? Type::boolean() : operand;
    }

    if (const Builtin* b = find_builtin(e.name)) {
      unify(b->input, arg, e.args[0].loc);
      return b->output;
    }

    auto it = typed_.schemes.find(e.name);
    if (it == typed_.schemes.end()) {
      fail(Phase::Names, e.loc, "unknown step '" + e.name + "'");
    }
    const TypeScheme& scheme = it->second;
    TypeSubst inst;
    for (const auto& v : scheme.vars) inst[v] = fresh();
    unify(substitute(scheme.input, inst), arg, e.args[0].loc);
    return substitute(scheme.output, inst);
  }

  void resolve_operators() {
    for (auto& [app, operand] : pending_) {
      Type t = resolve(operand);
      if (t.kind == TypeKind::Var) {
        unify(Type::integer(), t, app->loc);
        t = Type::integer();
      }
      auto name = resolve_operator(app->name, t.kind);
      if (!name) {
        fail(Phase::Types, app->loc,
             "operator '" + (app->name == "~-" ? std::string("-") : app->name) +
                 "' is not defined for " + show(t));
      }
      app->name = *name;
    }
    pending_.clear();
  }

  void apply(Expr& e) {
    if (e.type) e.type = resolve(*e.type);
    for (auto& a : e.args) apply(a);
  }

  void apply(Pattern& p) {
    if (p.type) p.type = resolve(*p.type);
    for (auto& e : p.elems) apply(e);
  }

  // ---- steps --------------------------------------------------------------------

  void check_output(const Pattern& p, const StepDecl& step) {
    switch (p.kind) {
      case PatternKind::Wildcard:
        fail(Phase::Names, p.loc, "output of step '" + step.name + "' cannot be '_'");
      case PatternKind::Var: {
        auto it = env_.find(p.name);
        if (it == env_.end()) {
          fail(Phase::Names, p.loc,
               "output '" + p.name + "' of step '" + step.name + "' is never defined");
        }
        unify(*p.type, it->second, p.loc);
        break;
      }
      case PatternKind::Tuple:
        for (const auto& e : p.elems) check_output(e, step);
        break;
    }
  }

  void infer_step(StepDecl& step) {
    env_.clear();
    ticks_.clear();

    std::vector<Type> ins, outs;
    for (auto& p : step.inputs) ins.push_back(signature_item(p, true));
    for (auto& p : step.outputs) outs.push_back(signature_item(p, false));

    if (step.body) {
      for (auto& eq : *step.body) equation_pattern(eq.lhs);
      for (auto& eq : *step.body) {
        Type rhs = expr(eq.rhs);
        unify(*eq.lhs.type, rhs, eq.rhs.loc);
      }
      for (const auto& p : step.outputs) check_output(p, step);
      resolve_operators();
      for (auto& eq : *step.body) {
        apply(eq.lhs);
        apply(eq.rhs);
      }
    }
    for (auto& p : step.inputs) apply(p);
    for (auto& p : step.outputs) apply(p);

    TypeScheme scheme;
    scheme.input = resolve(product(ins));
    scheme.output = resolve(product(outs));
    collect_vars(scheme.input, scheme.vars);
    collect_vars(scheme.output, scheme.vars);
    typed_.schemes[step.name] = std::move(scheme);
  }

  TypedProgram& typed_;
  int next_var_ = 0;
  bool occurs_failure_ = false;
  TypeSubst subst_;
  std::map<std::string, Type> env_;
  std::map<std::string, Type> ticks_;
  std::vector<PendingOperator> pending_;
};

}  // namespace

TypedProgram infer(Program program) {
  TypedProgram typed;
  typed.program = std::move(program);
  Inferencer(typed).run();
  return typed;
}

}  // namespace mimosa
