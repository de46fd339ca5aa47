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

#include "mimosa/normir.hpp"

#include <functional>
#include <set>
#include <sstream>

#include "mimosa/builtins.hpp"

namespace mimosa {

namespace {

bool is_fresh(const std::string& name) { return name.rfind("__", 0) == 0; }

NormExpr base_expr(NormBase b) {
  NormExpr e;
  e.kind = NormKind::Base;
  e.base = std::move(b);
  return e;
}

NormExpr named(NormKind kind, std::vector<std::string> names) {
  NormExpr e;
  e.kind = kind;
  e.names = std::move(names);
  return e;
}

NormEquation equation(std::string lhs, NormExpr rhs) {
  return NormEquation{{std::move(lhs)}, std::move(rhs)};
}

class Normaliser {
 public:
  Normaliser(FreshNames& fresh, std::map<std::string, Type>* types)
      : fresh_(fresh), types_(types) {}

  Block block(const Expr& e) {
    Block b;
    b.result = expr(e, b.eqs);
    return b;
  }

  // Appends the hoisted equations of `e` to `out` and returns its base.
  NormBase expr(const Expr& e, std::vector<NormEquation>& out) {
    switch (e.kind) {
      case ExprKind::Var: return NormBase::var(e.name);
      case ExprKind::Const: return NormBase::constant(e.literal);
      case ExprKind::NoneLit: return NormBase::none();
      case ExprKind::SomeLit: {
        NormBase inner = expr(e.args[0], out);
        if (inner.kind == NormBase::Kind::Var) return NormBase::some(inner.name);
        std::string x = bind("x", type_of(e.args[0]), base_expr(inner), out);
        return NormBase::some(x);
      }
      case ExprKind::Pre: {
        NormBase inner = expr(e.args[0], out);
        std::string x = bind("x", type_of(e.args[0]), base_expr(inner), out);
        return var(bind("r", type_of(e), named(NormKind::Pre, {x}), out));
      }
      case ExprKind::Arrow: {
        Block first = block(e.args[0]);
        NormBase rhs = expr(e.args[1], out);
        std::string y = bind("y", type_of(e.args[1]), base_expr(rhs), out);
        NormExpr fby;
        fby.kind = NormKind::Fby;
        fby.blocks.push_back(std::move(first));
        fby.blocks.push_back(Block{{}, NormBase::var(y)});
        return var(bind("r", type_of(e), std::move(fby), out));
      }
      case ExprKind::Fby: {
        NormExpr fby;
        fby.kind = NormKind::Fby;
        fby.blocks.push_back(block(e.args[0]));
        fby.blocks.push_back(block(e.args[1]));
        return var(bind("r", type_of(e), std::move(fby), out));
      }
      case ExprKind::Tuple: {
        std::vector<NormBase> parts;
        for (const auto& a : e.args) parts.push_back(expr(a, out));
        std::vector<std::string> names;
        for (std::size_t i = 0; i < parts.size(); ++i) {
          names.push_back(bind("t", type_of(e.args[i]), base_expr(parts[i]), out));
        }
        return var(bind("r", type_of(e), named(NormKind::Tuple, names), out));
      }
      case ExprKind::If: {
        NormBase cond = expr(e.args[0], out);
        std::string x = bind("x", Type::boolean(), base_expr(cond), out);
        NormExpr ite = named(NormKind::If, {x});
        ite.blocks.push_back(block(e.args[1]));
        ite.blocks.push_back(block(e.args[2]));
        return var(bind("r", type_of(e), std::move(ite), out));
      }
      case ExprKind::Either: {
        NormBase scrut = expr(e.args[0], out);
        std::string x = bind("x", type_of(e.args[0]), base_expr(scrut), out);
        NormExpr either = named(NormKind::Either, {x});
        either.blocks.push_back(block(e.args[1]));
        return var(bind("r", type_of(e), std::move(either), out));
      }
      case ExprKind::App: {
        NormBase arg = expr(e.args[0], out);
        std::string x = bind("x", type_of(e.args[0]), base_expr(arg), out);
        NormExpr app = named(NormKind::App, {x});
        app.callee = e.name;
        return var(bind("r", type_of(e), std::move(app), out));
      }
    }
    return NormBase::constant({});
  }

 private:
  static NormBase var(std::string name) { return NormBase::var(std::move(name)); }

  static Type type_of(const Expr& e) { return e.type ? *e.type : Type::variable("'?"); }

  std::string bind(const std::string& hint, const Type& type, NormExpr rhs,
                   std::vector<NormEquation>& out) {
    std::string name = fresh_(hint);
    if (types_) (*types_)[name] = type;
    out.push_back(equation(name, std::move(rhs)));
    return name;
  }

  FreshNames& fresh_;
  std::map<std::string, Type>* types_;
};

Type pattern_type(const Pattern& p) { return p.type ? *p.type : Type::variable("'?"); }

// ---- renaming -----------------------------------------------------------------

using Renamer = std::function<void(std::string&)>;

void rename(NormBase& b, const Renamer& f) {
  if (b.kind == NormBase::Kind::Var || b.kind == NormBase::Kind::Some) f(b.name);
}

void rename(Block& block, const Renamer& f);

void rename(NormExpr& e, const Renamer& f) {
  rename(e.base, f);
  for (auto& n : e.names) f(n);
  for (auto& b : e.blocks) rename(b, f);
}

void rename(Block& block, const Renamer& f) {
  for (auto& eq : block.eqs) {
    for (auto& n : eq.lhs) f(n);
    rename(eq.rhs, f);
  }
  rename(block.result, f);
}

struct AliasSite {
  Block* block = nullptr;
  std::size_t index = 0;
  bool top_level = false;
};

bool find_alias(Block& block, bool top_level, AliasSite& site) {
  for (std::size_t i = 0; i < block.eqs.size(); ++i) {
    auto& eq = block.eqs[i];
    if (!eq.is_tuple() && eq.rhs.kind == NormKind::Base &&
        eq.rhs.base.kind == NormBase::Kind::Var) {
      site = {&block, i, top_level};
      return true;
    }
    for (auto& b : eq.rhs.blocks) {
      if (find_alias(b, false, site)) return true;
    }
  }
  return false;
}

bool binds(const Block& block, const std::string& name) {
  for (const auto& eq : block.eqs) {
    for (const auto& n : eq.lhs) {
      if (n == name) return true;
    }
  }
  return false;
}

// ---- dumping ----------------------------------------------------------------------

void dump_block(std::ostream& os, const Block& block, int indent);

void dump_expr(std::ostream& os, const NormExpr& e, int indent) {
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& n : v) s += (s.empty() ? "" : ", ") + n;
    return s;
  };
  switch (e.kind) {
    case NormKind::Base: os << dump(e.base); break;
    case NormKind::Tuple: os << join(e.names); break;
    case NormKind::Pre: os << "pre " << e.names[0]; break;
    case NormKind::Fby:
      dump_block(os, e.blocks[0], indent);
      os << " fby ";
      dump_block(os, e.blocks[1], indent);
      break;
    case NormKind::App: os << e.callee << " " << e.names[0]; break;
    case NormKind::If:
      os << "if " << e.names[0] << " then ";
      dump_block(os, e.blocks[0], indent);
      os << " else ";
      dump_block(os, e.blocks[1], indent);
      break;
    case NormKind::Either:
      os << "either " << e.names[0] << " or ";
      dump_block(os, e.blocks[0], indent);
      break;
  }
}

void dump_equations(std::ostream& os, const Block& block, int indent) {
  std::string pad(indent, ' ');
  for (const auto& eq : block.eqs) {
    os << pad;
    for (std::size_t i = 0; i < eq.lhs.size(); ++i) os << (i ? ", " : "") << eq.lhs[i];
    os << " = ";
    dump_expr(os, eq.rhs, indent);
    os << "\n";
  }
  os << pad << "=> " << dump(block.result) << "\n";
}

void dump_block(std::ostream& os, const Block& block, int indent) {
  if (block.eqs.empty()) {
    os << "[=> " << dump(block.result) << "]";
    return;
  }
  os << "[\n";
  dump_equations(os, block, indent + 2);
  os << std::string(indent, ' ') << "]";
}

// ---- validation ------------------------------------------------------------------

class Validator {
 public:
  explicit Validator(std::vector<std::string>& errors) : errors_(errors) {}

  // A pre operand is read by the store at the end of its block, so it may be
  // bound later in that block.
  void block(const Block& b, std::set<std::string> scope) {
    std::vector<std::string> stored;
    for (const auto& eq : b.eqs) {
      if (eq.rhs.kind == NormKind::Pre) {
        arity(eq.rhs, 1, 0, "pre");
        stored.insert(stored.end(), eq.rhs.names.begin(), eq.rhs.names.end());
      } else {
        expr(eq.rhs, scope);
      }
      if (eq.lhs.empty()) errors_.push_back("equation without a pattern");
      for (const auto& n : eq.lhs) {
        if (!bound_.insert(n).second) errors_.push_back("variable '" + n + "' bound twice");
        scope.insert(n);
      }
    }
    for (const auto& n : stored) use(n, scope);
    base(b.result, scope);
  }

  void bind_input(const std::string& name) { bound_.insert(name); }

 private:
  void use(const std::string& name, const std::set<std::string>& scope) {
    if (!scope.contains(name)) errors_.push_back("variable '" + name + "' used out of scope");
  }

  void base(const NormBase& b, const std::set<std::string>& scope) {
    if (b.kind == NormBase::Kind::Var || b.kind == NormBase::Kind::Some) use(b.name, scope);
  }

  void arity(const NormExpr& e, std::size_t names, std::size_t blocks, const char* what) {
    if (e.names.size() != names || e.blocks.size() != blocks) {
      errors_.push_back(std::string("malformed ") + what);
    }
  }

  void expr(const NormExpr& e, const std::set<std::string>& scope) {
    switch (e.kind) {
      case NormKind::Base: arity(e, 0, 0, "base expression"); base(e.base, scope); break;
      case NormKind::Tuple:
        if (e.names.size() < 2 || !e.blocks.empty()) errors_.push_back("malformed tuple");
        break;
      case NormKind::Pre: arity(e, 1, 0, "pre"); break;
      case NormKind::Fby: arity(e, 0, 2, "fby"); break;
      case NormKind::App:
        arity(e, 1, 0, "application");
        if (e.callee.empty()) errors_.push_back("application without a callee");
        break;
      case NormKind::If: arity(e, 1, 2, "if"); break;
      case NormKind::Either: arity(e, 1, 1, "either"); break;
    }
    for (const auto& n : e.names) use(n, scope);
    for (const auto& b : e.blocks) block(b, scope);
  }

  std::vector<std::string>& errors_;
  std::set<std::string> bound_;
};

}  // namespace

std::vector<NormEquation> flatten_pattern(const Pattern& pattern, NormExpr rhs, FreshNames& fresh,
                                          std::map<std::string, Type>* types) {
  std::vector<NormEquation> out;
  auto record = [&](const std::string& name, const Pattern& p) {
    if (types) (*types)[name] = pattern_type(p);
  };
  switch (pattern.kind) {
    case PatternKind::Var:
      record(pattern.name, pattern);
      out.push_back(equation(pattern.name, std::move(rhs)));
      break;
    case PatternKind::Wildcard: {
      std::string w = fresh("w");
      record(w, pattern);
      out.push_back(equation(w, std::move(rhs)));
      break;
    }
    case PatternKind::Tuple: {
      NormEquation eq;
      eq.rhs = std::move(rhs);
      std::vector<std::pair<const Pattern*, std::string>> nested;
      for (const auto& elem : pattern.elems) {
        std::string name;
        switch (elem.kind) {
          case PatternKind::Var: name = elem.name; break;
          case PatternKind::Wildcard: name = fresh("w"); break;
          case PatternKind::Tuple:
            name = fresh("tmp");
            nested.emplace_back(&elem, name);
            break;
        }
        record(name, elem);
        eq.lhs.push_back(name);
      }
      out.push_back(std::move(eq));
      for (const auto& [elem, name] : nested) {
        auto more = flatten_pattern(*elem, base_expr(NormBase::var(name)), fresh, types);
        for (auto& m : more) out.push_back(std::move(m));
      }
      break;
    }
  }
  return out;
}

Block normalise_expr(const Expr& expr, FreshNames& fresh, std::map<std::string, Type>* types) {
  return Normaliser(fresh, types).block(expr);
}

void copy_propagate(NormStep& step) {
  AliasSite site;
  while (find_alias(step.body, true, site)) {
    NormEquation alias = site.block->eqs[site.index];
    site.block->eqs.erase(site.block->eqs.begin() + static_cast<std::ptrdiff_t>(site.index));
    const std::string x = alias.lhs[0];
    const std::string y = alias.rhs.base.name;

    if (site.top_level && is_fresh(y) && !is_fresh(x) && binds(step.body, y)) {
      rename(step.body, [&](std::string& n) {
        if (n == y) n = x;
      });
      step.var_types.erase(y);
    } else {
      rename(step.body, [&](std::string& n) {
        if (n == x) n = y;
      });
      if (step.in == x) step.in = y;
      step.var_types.erase(x);
    }
  }
}

NormStep normalise_step(const StepDecl& decl) {
  NormStep step;
  step.name = decl.name;
  FreshNames fresh;
  std::vector<Type> ins, outs;
  for (const auto& p : decl.inputs) ins.push_back(pattern_type(p));
  for (const auto& p : decl.outputs) outs.push_back(pattern_type(p));
  step.in_type = product(ins);
  step.out_type = product(outs);

  auto append = [&](std::vector<NormEquation> eqs) {
    for (auto& eq : eqs) step.body.eqs.push_back(std::move(eq));
  };

  if (decl.inputs.size() == 1 && decl.inputs[0].kind == PatternKind::Var) {
    step.in = decl.inputs[0].name;
    step.var_types[step.in] = step.in_type;
  } else {
    step.in = fresh("in");
    step.var_types[step.in] = step.in_type;
    if (!decl.inputs.empty()) {
      Pattern whole = decl.inputs.size() == 1 ? decl.inputs[0] : Pattern::tuple(decl.inputs);
      whole.type = step.in_type;
      append(flatten_pattern(whole, base_expr(NormBase::var(step.in)), fresh, &step.var_types));
    }
  }

  Normaliser norm(fresh, &step.var_types);
  for (const auto& eq : *decl.body) {
    NormBase result = norm.expr(eq.rhs, step.body.eqs);
    append(flatten_pattern(eq.lhs, base_expr(result), fresh, &step.var_types));
  }

  // Output items that are tuple patterns are rebuilt from their components.
  std::function<NormBase(const Pattern&)> build = [&](const Pattern& p) -> NormBase {
    if (p.kind != PatternKind::Tuple) return NormBase::var(p.name);
    std::vector<std::string> names;
    for (const auto& e : p.elems) names.push_back(build(e).name);
    std::string t = fresh("t");
    step.var_types[t] = pattern_type(p);
    step.body.eqs.push_back(equation(t, named(NormKind::Tuple, names)));
    return NormBase::var(t);
  };

  std::string out = fresh("out");
  step.var_types[out] = step.out_type;
  if (decl.outputs.empty()) {
    step.body.eqs.push_back(equation(out, base_expr(NormBase::constant({}))));
  } else if (decl.outputs.size() == 1) {
    step.body.eqs.push_back(equation(out, base_expr(build(decl.outputs[0]))));
  } else {
    std::vector<std::string> names;
    for (const auto& p : decl.outputs) names.push_back(build(p).name);
    step.body.eqs.push_back(equation(out, named(NormKind::Tuple, names)));
  }
  step.body.result = NormBase::var(out);

  copy_propagate(step);
  step.next_fresh = fresh.next();
  return step;
}

std::vector<NormStep> normalise_program(const TypedProgram& typed) {
  std::vector<NormStep> out;
  for (const auto& s : typed.program.steps) {
    if (!s.is_prototype()) out.push_back(normalise_step(s));
  }
  return out;
}

std::vector<std::string> validate(const NormStep& step) {
  std::vector<std::string> errors;
  Validator v(errors);
  v.bind_input(step.in);
  v.block(step.body, {step.in});
  return errors;
}

std::string dump(const NormBase& base) {
  switch (base.kind) {
    case NormBase::Kind::Var: return base.name;
    case NormBase::Kind::Const: return literal_to_string(base.literal);
    case NormBase::Kind::None: return "None";
    case NormBase::Kind::Some: return "Some " + base.name;
  }
  return "?";
}

std::string dump(const NormStep& step) {
  std::ostringstream os;
  os << "step " << step.name << " " << step.in << " : " << to_string(step.in_type) << " --> "
     << to_string(step.out_type) << "\n";
  dump_equations(os, step.body, 2);
  return os.str();
}

// ---- interpreter ---------------------------------------------------------------

struct NormInterpreter::Frame {
  std::map<std::string, Value> env;
};

NormInterpreter::NormInterpreter(const std::vector<NormStep>& steps, ExternFn externs)
    : externs_(std::move(externs)) {
  for (const auto& s : steps) steps_[s.name] = &s;
}

NormInterpreter::Instance NormInterpreter::instantiate(const std::string& step) const {
  auto it = steps_.find(step);
  if (it == steps_.end()) throw EvalError("no NormIR step named " + step);
  Instance inst;
  inst.step = it->second;
  return inst;
}

Value NormInterpreter::step(Instance& inst, const Value& input) const {
  Frame frame;
  frame.env[inst.step->in] = input;
  return eval_block(inst.step->body, inst, frame);
}

Value NormInterpreter::eval_base(const NormBase& base, const Frame& frame) const {
  auto lookup = [&](const std::string& n) -> const Value& {
    auto it = frame.env.find(n);
    if (it == frame.env.end()) throw EvalError("unbound variable " + n);
    return it->second;
  };
  switch (base.kind) {
    case NormBase::Kind::Var: return lookup(base.name);
    case NormBase::Kind::Const: return literal_value(base.literal);
    case NormBase::Kind::None: return Value::none();
    case NormBase::Kind::Some: return Value::some(lookup(base.name));
  }
  return Value::unit();
}

Value NormInterpreter::call(const NormEquation& eq, const std::string& callee, const Value& arg,
                            Instance& inst) const {
  if (find_builtin(callee)) return eval_builtin(callee, arg);
  if (steps_.contains(callee)) {
    auto& sub = inst.subs[&eq];
    if (!sub) sub = std::make_unique<Instance>(instantiate(callee));
    return step(*sub, arg);
  }
  if (!externs_) throw EvalError("no implementation for prototype " + callee);
  return externs_(callee, arg);
}

Value NormInterpreter::eval_block(const Block& block, Instance& inst, Frame& frame) const {
  std::vector<std::pair<const NormEquation*, std::string>> stores;
  auto var = [&](const std::string& n) {
    return eval_base(NormBase::var(n), frame);
  };

  for (const auto& eq : block.eqs) {
    const NormExpr& e = eq.rhs;
    Value v;
    switch (e.kind) {
      case NormKind::Base: v = eval_base(e.base, frame); break;
      case NormKind::Tuple: {
        std::vector<Value> parts;
        for (const auto& n : e.names) parts.push_back(var(n));
        v = Value::tuple(std::move(parts));
        break;
      }
      case NormKind::Pre: {
        auto it = inst.cells.find(&eq);
        if (it == inst.cells.end()) {
          v = nil_value(inst.step->var_types.at(e.names[0]));
        } else {
          v = it->second;
        }
        stores.emplace_back(&eq, e.names[0]);
        break;
      }
      case NormKind::Fby: {
        auto [it, inserted] = inst.first.try_emplace(&eq, true);
        v = eval_block(e.blocks[it->second ? 0 : 1], inst, frame);
        it->second = false;
        break;
      }
      case NormKind::App: v = call(eq, e.callee, var(e.names[0]), inst); break;
      case NormKind::If: {
        Value c = var(e.names[0]);
        v = eval_block(e.blocks[c.b ? 0 : 1], inst, frame);
        break;
      }
      case NormKind::Either: {
        Value s = var(e.names[0]);
        v = s.is_some() ? s.elems[0] : eval_block(e.blocks[0], inst, frame);
        break;
      }
    }
    if (eq.is_tuple()) {
      if (v.kind != TypeKind::Tuple || v.elems.size() != eq.lhs.size()) {
        throw EvalError("tuple destructuring arity mismatch");
      }
      for (std::size_t i = 0; i < eq.lhs.size(); ++i) frame.env[eq.lhs[i]] = v.elems[i];
    } else {
      frame.env[eq.lhs[0]] = std::move(v);
    }
  }
  for (const auto& [eq, name] : stores) inst.cells[eq] = var(name);
  return eval_base(block.result, frame);
}

}  // namespace mimosa
