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

#include "mimosa/ooir.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mimosa/builtins.hpp"

namespace mimosa {

namespace {

Instr assign(std::string target, OExpr e) {
  Instr i;
  i.kind = InstrKind::Assign;
  i.target = std::move(target);
  i.expr = std::move(e);
  return i;
}

Instr state_assign(std::string target, OExpr e) {
  Instr i;
  i.kind = InstrKind::StateAssign;
  i.target = std::move(target);
  i.expr = std::move(e);
  return i;
}

class Objectifier {
 public:
  Objectifier(const NormStep& step, const InstancePolicy& policy)
      : step_(step), policy_(policy), fresh_(step.next_fresh) {}

  Machine run() {
    m_.name = step_.name;
    m_.in = step_.in;
    m_.in_type = step_.in_type;
    m_.out_type = step_.out_type;
    m_.locals = step_.var_types;
    m_.step = block(step_.body.eqs);
    Instr ret;
    ret.kind = InstrKind::Return;
    ret.expr = translate_base(m_.memory, step_.body.result);
    m_.step.push_back(std::move(ret));
    return std::move(m_);
  }

 private:
  // Instructions of a block's equations followed by its deferred pre stores.
  std::vector<Instr> block(const std::vector<NormEquation>& eqs) {
    std::vector<Instr> out;
    std::vector<Instr> stores;
    for (const auto& eq : eqs) equation(eq, out, stores);
    for (auto& s : stores) out.push_back(std::move(s));
    return out;
  }

  // Branch body: s' :: stores :: [v = e'].
  std::vector<Instr> branch(const Block& b, const std::string& v) {
    std::vector<Instr> out = block(b.eqs);
    out.push_back(assign(v, translate_base(m_.memory, b.result)));
    return out;
  }

  std::string local(const std::string& hint, const Type& type) {
    std::string n = fresh_(hint);
    m_.locals[n] = type;
    return n;
  }

  void equation(const NormEquation& eq, std::vector<Instr>& out, std::vector<Instr>& stores) {
    if (eq.is_tuple()) {
      std::string t = local("t", tuple_type(eq.lhs));
      single(t, eq.rhs, out, stores);
      Instr d;
      d.kind = InstrKind::TupleDestruct;
      d.names = eq.lhs;
      d.source = t;
      out.push_back(std::move(d));
      return;
    }
    single(eq.lhs[0], eq.rhs, out, stores);
  }

  Type tuple_type(const std::vector<std::string>& names) const {
    std::vector<Type> elems;
    for (const auto& n : names) elems.push_back(m_.locals.at(n));
    return Type::tuple(std::move(elems));
  }

  void single(const std::string& v, const NormExpr& e, std::vector<Instr>& out,
              std::vector<Instr>& stores) {
    switch (e.kind) {
      case NormKind::Base: out.push_back(assign(v, translate_base(m_.memory, e.base))); return;
      case NormKind::Tuple: {
        Instr i;
        i.kind = InstrKind::TupleConstruct;
        i.target = v;
        i.names = e.names;
        out.push_back(std::move(i));
        return;
      }
      case NormKind::Pre: {
        const std::string& x = e.names[0];
        Type type = m_.locals.at(x);
        std::string tmp = fresh_("tmp");
        Value nil = nil_constant(type);
        m_.memory.push_back({tmp, type, nil});
        m_.reset.push_back(state_assign(tmp, OExpr::constant(nil)));
        out.push_back(assign(v, OExpr::state(tmp)));
        stores.push_back(state_assign(tmp, translate_base(m_.memory, NormBase::var(x))));
        return;
      }
      case NormKind::Fby: {
        std::string fst = fresh_("fst");
        std::string t = local("t", Type::boolean());
        Instr ite;
        ite.kind = InstrKind::If;
        ite.source = t;
        ite.body = branch(e.blocks[0], v);
        ite.alt = branch(e.blocks[1], v);
        m_.memory.push_back({fst, Type::boolean(), Value::boolean(true)});
        m_.reset.push_back(state_assign(fst, OExpr::constant(Value::boolean(true))));
        out.push_back(assign(t, OExpr::state(fst)));
        out.push_back(std::move(ite));
        out.push_back(state_assign(fst, OExpr::constant(Value::boolean(false))));
        return;
      }
      case NormKind::If: {
        Instr ite;
        ite.kind = InstrKind::If;
        ite.source = e.names[0];
        ite.body = branch(e.blocks[0], v);
        ite.alt = branch(e.blocks[1], v);
        out.push_back(std::move(ite));
        return;
      }
      case NormKind::Either: {
        Instr c;
        c.kind = InstrKind::CaseOpt;
        c.source = e.names[0];
        c.bound = local("y", m_.locals.at(v));
        c.body.push_back(assign(v, OExpr::var(c.bound)));
        c.alt = branch(e.blocks[0], v);
        out.push_back(std::move(c));
        return;
      }
      case NormKind::App: {
        Instr call;
        call.kind = InstrKind::StepCall;
        call.target = v;
        call.machine = e.callee;
        call.source = e.names[0];
        if (!find_builtin(e.callee) && policy_(e.callee)) {
          std::string o = fresh_("o");
          m_.instances.push_back({o, e.callee});
          Instr r;
          r.kind = InstrKind::Reset;
          r.machine = e.callee;
          r.instance = o;
          m_.reset.push_back(std::move(r));
          call.instance = o;
        }
        out.push_back(std::move(call));
        return;
      }
    }
  }

  const NormStep& step_;
  const InstancePolicy& policy_;
  FreshNames fresh_;
  Machine m_;
};

// ---- dumping ----------------------------------------------------------------------

void dump_instrs(std::ostream& os, const std::vector<Instr>& instrs, int indent);

void dump_instr(std::ostream& os, const Instr& i, int indent) {
  std::string pad(indent, ' ');
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& n : v) s += (s.empty() ? "" : ", ") + n;
    return s;
  };
  os << pad;
  switch (i.kind) {
    case InstrKind::Assign: os << i.target << " = " << dump(i.expr) << "\n"; break;
    case InstrKind::StateAssign: os << i.target << " <- " << dump(i.expr) << "\n"; break;
    case InstrKind::TupleConstruct: os << i.target << " = " << join(i.names) << "\n"; break;
    case InstrKind::TupleDestruct: os << join(i.names) << " = " << i.source << "\n"; break;
    case InstrKind::Reset: os << i.machine << ".reset(" << i.instance << ")\n"; break;
    case InstrKind::Return: os << "return " << dump(i.expr) << "\n"; break;
    case InstrKind::StepCall:
      os << i.target << " = " << i.machine << ".step(" << i.source
         << (i.instance.empty() ? "" : ", " + i.instance) << ")\n";
      break;
    case InstrKind::If:
      os << "if " << i.source << " then [\n";
      dump_instrs(os, i.body, indent + 2);
      os << pad << "] else [\n";
      dump_instrs(os, i.alt, indent + 2);
      os << pad << "]\n";
      break;
    case InstrKind::CaseOpt:
      os << "case " << i.source << " {\n" << pad << "  Some " << i.bound << ":\n";
      dump_instrs(os, i.body, indent + 4);
      os << pad << "  None:\n";
      dump_instrs(os, i.alt, indent + 4);
      os << pad << "}\n";
      break;
  }
}

void dump_instrs(std::ostream& os, const std::vector<Instr>& instrs, int indent) {
  for (const auto& i : instrs) dump_instr(os, i, indent);
}

// ---- validation ------------------------------------------------------------------

void check_instrs(const Machine& m, const std::vector<Instr>& instrs, bool top,
                  std::vector<std::string>& errors) {
  auto has_cell = [&](const std::string& n) {
    return std::any_of(m.memory.begin(), m.memory.end(),
                       [&](const MemoryCell& c) { return c.name == n; });
  };
  auto has_instance = [&](const std::string& n) {
    return std::any_of(m.instances.begin(), m.instances.end(),
                       [&](const InstanceDecl& d) { return d.name == n; });
  };
  for (std::size_t k = 0; k < instrs.size(); ++k) {
    const Instr& i = instrs[k];
    if (i.kind == InstrKind::Return && !(top && k + 1 == instrs.size())) {
      errors.push_back("return is not the final step instruction");
    }
    if (i.expr.kind == OExpr::Kind::State && !has_cell(i.expr.name)) {
      errors.push_back("state read of undeclared cell '" + i.expr.name + "'");
    }
    if (i.kind == InstrKind::StateAssign && !has_cell(i.target)) {
      errors.push_back("state assignment to undeclared cell '" + i.target + "'");
    }
    if ((i.kind == InstrKind::Reset || i.kind == InstrKind::StepCall) && !i.instance.empty() &&
        !has_instance(i.instance)) {
      errors.push_back("use of undeclared instance '" + i.instance + "'");
    }
    check_instrs(m, i.body, false, errors);
    check_instrs(m, i.alt, false, errors);
  }
}

}  // namespace

Value nil_constant(const Type& type) { return nil_value(type); }

OExpr translate_base(const std::vector<MemoryCell>& memory, const NormBase& base) {
  switch (base.kind) {
    case NormBase::Kind::Var: {
      bool state = std::any_of(memory.begin(), memory.end(),
                               [&](const MemoryCell& c) { return c.name == base.name; });
      return state ? OExpr::state(base.name) : OExpr::var(base.name);
    }
    case NormBase::Kind::Const: return OExpr::constant(literal_value(base.literal));
    case NormBase::Kind::None: return OExpr::none();
    case NormBase::Kind::Some: return OExpr::some(base.name);
  }
  return OExpr::none();
}

Machine objectify(const NormStep& step, const InstancePolicy& needs_instance) {
  return Objectifier(step, needs_instance).run();
}

Machine prototype_machine(const StepDecl& step) {
  Machine m;
  m.name = step.name;
  m.prototype = true;
  std::vector<Type> ins, outs;
  for (const auto& p : step.inputs) ins.push_back(p.type ? *p.type : Type::unit());
  for (const auto& p : step.outputs) outs.push_back(p.type ? *p.type : Type::unit());
  m.in_type = product(ins);
  m.out_type = product(outs);
  Instr ret;
  ret.kind = InstrKind::Return;
  ret.expr = OExpr::constant(nil_value(m.out_type));
  m.step.push_back(std::move(ret));
  return m;
}

std::vector<Machine> objectify_program(const TypedProgram& typed,
                                       const std::vector<NormStep>& steps) {
  std::map<std::string, const NormStep*> norm;
  for (const auto& s : steps) norm[s.name] = &s;
  std::map<std::string, Machine> built;

  std::function<const Machine&(const std::string&)> build = [&](const std::string& name)
      -> const Machine& {
    if (auto it = built.find(name); it != built.end()) return it->second;
    const StepDecl* decl = typed.program.find_step(name);
    if (!decl) throw EvalError("objectify: unknown step " + name);
    Machine m;
    if (decl->is_prototype()) {
      m = prototype_machine(*decl);
    } else {
      InstancePolicy policy = [&](const std::string& callee) {
        return !build(callee).stateless();
      };
      m = objectify(*norm.at(name), policy);
    }
    return built.emplace(name, std::move(m)).first->second;
  };

  std::vector<Machine> out;
  for (const auto& s : typed.program.steps) {
    build(s.name);
    out.push_back(built.at(s.name));
  }
  return out;
}

std::vector<std::string> validate(const Machine& m) {
  std::vector<std::string> errors;
  std::set<std::string> names;
  auto claim = [&](const std::string& n, const char* what) {
    if (!names.insert(n).second) errors.push_back(std::string(what) + " name '" + n + "' clashes");
  };
  if (!m.in.empty()) names.insert(m.in);
  for (const auto& c : m.memory) claim(c.name, "memory");
  for (const auto& i : m.instances) claim(i.name, "instance");
  for (const auto& [n, t] : m.locals) {
    if (n != m.in) claim(n, "local");
  }
  if (!m.prototype) {
    if (m.step.empty() || m.step.back().kind != InstrKind::Return) {
      errors.push_back("step instructions do not end with return");
    }
  }
  check_instrs(m, m.reset, false, errors);
  check_instrs(m, m.step, true, errors);
  return errors;
}

std::string dump(const OExpr& e) {
  switch (e.kind) {
    case OExpr::Kind::Var: return e.name;
    case OExpr::Kind::State: return "!" + e.name;
    case OExpr::Kind::Const: return format_value(e.value);
    case OExpr::Kind::None: return "None";
    case OExpr::Kind::Some: return "Some " + e.name;
  }
  return "?";
}

std::string dump(const Machine& m) {
  std::ostringstream os;
  if (m.prototype) {
    os << "prototype " << m.name << " : " << to_string(m.in_type) << " --> "
       << to_string(m.out_type) << "\n";
    return os.str();
  }
  os << "machine " << m.name << " " << m.in << " : " << to_string(m.in_type) << " --> "
     << to_string(m.out_type) << "\n";
  os << "memory:\n";
  for (const auto& c : m.memory) {
    os << "  " << c.name << " : " << to_string(c.type) << "\n";
  }
  os << "instances:\n";
  for (const auto& i : m.instances) os << "  " << i.name << " : " << i.machine << "\n";
  os << "reset:\n";
  dump_instrs(os, m.reset, 2);
  os << "step:\n";
  dump_instrs(os, m.step, 2);
  return os.str();
}

}  // namespace mimosa
