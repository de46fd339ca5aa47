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

#include "mimosa/codegen_c.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "mimosa/builtins.hpp"
#include "mimosa/diagnostics.hpp"

namespace mimosa {

namespace {

const std::set<std::string>& c_keywords() {
  static const std::set<std::string> words = {
      "auto",     "break",    "case",     "char",   "const",    "continue", "default",
      "do",       "double",   "else",     "enum",   "extern",   "float",    "for",
      "goto",     "if",       "inline",   "int",    "long",     "register", "restrict",
      "return",   "short",    "signed",   "sizeof", "static",   "struct",   "switch",
      "typedef",  "union",    "unsigned", "void",   "volatile", "while",    "bool",
      "true",     "false",    "main",     "self",   "now",      "_Bool",    "_Complex"};
  return words;
}

// Locals, parameters and state fields. Source names get `v_`, compiler
// temporaries (`__r1`) get `t_`, so the two never meet and never hit a keyword.
std::string cvar(const std::string& name) {
  if (name.rfind("__", 0) == 0) return "t_" + name.substr(2);
  return "v_" + name;
}

// Channel queues keep the channel name unless it is reserved.
std::string cchan(const std::string& name) {
  return c_keywords().count(name) ? name + "_q" : name;
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string int_literal(std::int64_t v) {
  if (v == INT64_MIN) return "(-INT64_C(9223372036854775807) - 1)";
  if (v > 2147483647 || v < -2147483647) return "INT64_C(" + std::to_string(v) + ")";
  return std::to_string(v);
}

std::string float_literal(double v) {
  if (std::isnan(v)) return "(0.0 / 0.0)";
  if (std::isinf(v)) return v > 0 ? "(1.0 / 0.0)" : "(-1.0 / 0.0)";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string c_value(const Value& v, const Type& type) {
  switch (type.kind) {
    case TypeKind::Unit: return "((unit_t)0)";
    case TypeKind::Bool: return v.b ? "true" : "false";
    case TypeKind::Int: return int_literal(v.i);
    case TypeKind::Float: return float_literal(v.f);
    case TypeKind::Option:
      if (v.is_some()) return c_type_name(type) + "_some(" + c_value(v.elems[0], type.inner()) + ")";
      return c_type_name(type) + "_none()";
    case TypeKind::Tuple: {
      std::string s = c_type_name(type) + "_make(";
      for (std::size_t i = 0; i < type.args.size(); ++i) {
        if (i) s += ", ";
        s += c_value(v.elems[i], type.args[i]);
      }
      return s + ")";
    }
    case TypeKind::Var: break;
  }
  throw std::logic_error("polymorphic type reached the C backend");
}

void collect_types(const Type& t, std::set<std::string>& seen, std::vector<Type>& out) {
  if (t.kind != TypeKind::Option && t.kind != TypeKind::Tuple) return;
  for (const auto& a : t.args) collect_types(a, seen, out);
  if (seen.insert(c_type_name(t)).second) out.push_back(t);
}

class MachineEmitter {
 public:
  explicit MachineEmitter(const Machine& m) : m_(m) {}

  CUnit run() {
    CUnit unit;
    unit.header = header();
    if (!m_.prototype) unit.source = source();
    return unit;
  }

 private:
  std::string state_struct() const { return "struct " + m_.name + "_state_t"; }

  std::string return_type() const {
    return m_.out_type.is(TypeKind::Unit) ? "void" : c_type(m_.out_type);
  }

  std::string signature() const {
    std::vector<std::string> params;
    if (!m_.in_type.is(TypeKind::Unit)) params.push_back(c_type(m_.in_type) + " " + cvar(m_.in));
    if (!m_.stateless()) params.push_back(state_struct() + " *self");
    std::string s = return_type() + " " + m_.name + "_step(";
    if (params.empty()) return s + "void)";
    for (std::size_t i = 0; i < params.size(); ++i) s += (i ? ", " : "") + params[i];
    return s + ")";
  }

  std::string header() const {
    std::ostringstream os;
    std::string guard = "MIMOSA_STEP_" + m_.name + "_H";
    os << "#ifndef " << guard << "\n#define " << guard << "\n\n#include \"types.h\"\n";
    std::set<std::string> deps;
    for (const auto& inst : m_.instances) deps.insert(inst.machine);
    for (const auto& d : deps) os << "#include \"" << d << ".h\"\n";
    os << "\n";
    if (m_.prototype) {
      os << "/* Implemented outside the generated code. */\n";
      os << state_struct() << " {\n  void *ext;\n};\n\n";
    } else if (!m_.stateless()) {
      os << state_struct() << " {\n";
      for (const auto& cell : m_.memory) os << "  " << c_type(cell.type) << " " << cvar(cell.name) << ";\n";
      for (const auto& inst : m_.instances) {
        os << "  struct " << inst.machine << "_state_t " << cvar(inst.name) << ";\n";
      }
      os << "};\n\n";
    }
    if (!m_.stateless()) os << "void " << m_.name << "_reset(" << state_struct() << " *self);\n";
    os << signature() << ";\n\n#endif\n";
    return os.str();
  }

  std::string source() {
    std::ostringstream os;
    os << "#include \"" << m_.name << ".h\"\n";
    std::set<std::string> callees;
    collect_callees(m_.step, callees);
    for (const auto& c : callees) {
      bool instanced = false;
      for (const auto& inst : m_.instances) instanced |= inst.machine == c;
      if (!instanced) os << "#include \"" << c << ".h\"\n";
    }
    os << "\n";
    if (!m_.stateless()) {
      os << "void " << m_.name << "_reset(" << state_struct() << " *self)\n{\n";
      body_ = {};
      instrs(m_.reset, 1);
      os << body_.str() << "}\n\n";
    }
    os << signature() << "\n{\n";
    for (const auto& [name, type] : m_.locals) {
      if (name == m_.in || type.is(TypeKind::Unit)) continue;
      os << "  " << c_type(type) << " " << cvar(name) << " = " << c_value(nil_value(type), type)
         << ";\n";
    }
    for (const auto& [name, type] : m_.locals) {
      if (name == m_.in || type.is(TypeKind::Unit)) continue;
      os << "  (void)" << cvar(name) << ";\n";
    }
    if (!m_.in_type.is(TypeKind::Unit)) os << "  (void)" << cvar(m_.in) << ";\n";
    body_ = {};
    instrs(m_.step, 1);
    os << body_.str() << "}\n";
    return os.str();
  }

  void collect_callees(const std::vector<Instr>& is, std::set<std::string>& out) const {
    for (const auto& i : is) {
      if (i.kind == InstrKind::StepCall && !find_builtin(i.machine)) out.insert(i.machine);
      collect_callees(i.body, out);
      collect_callees(i.alt, out);
    }
  }

  Type type_of(const std::string& name) const {
    if (name == m_.in) return m_.in_type;
    auto it = m_.locals.find(name);
    if (it != m_.locals.end()) return it->second;
    for (const auto& cell : m_.memory) {
      if (cell.name == name) return cell.type;
    }
    throw std::logic_error("no type for '" + name + "' in machine " + m_.name);
  }

  bool is_unit(const std::string& name) const { return type_of(name).is(TypeKind::Unit); }

  std::string use(const std::string& name) const {
    return is_unit(name) ? "((unit_t)0)" : cvar(name);
  }

  std::string expr(const OExpr& e, const Type& type) const {
    switch (e.kind) {
      case OExpr::Kind::Var: return use(e.name);
      case OExpr::Kind::State: return type.is(TypeKind::Unit) ? "((unit_t)0)" : "self->" + cvar(e.name);
      case OExpr::Kind::Const: return c_value(e.value, type);
      case OExpr::Kind::None: return c_type_name(type) + "_none()";
      case OExpr::Kind::Some: return c_type_name(type) + "_some(" + use(e.name) + ")";
    }
    return {};
  }

  void line(int depth, const std::string& text) {
    body_ << std::string(2 * depth, ' ') << text << "\n";
  }

  std::string builtin(const std::string& name, const std::string& arg) const {
    std::string a = arg + "._0";
    std::string b = arg + "._1";
    if (name == "float_of_int") return "((double)" + arg + ")";
    if (name == "not_bool") return "(!" + arg + ")";
    if (name == "neg_int") return "mimosa_neg_int(" + arg + ")";
    if (name == "neg_float") return "(-" + arg + ")";
    auto pos = name.find('_');
    std::string stem = name.substr(0, pos);
    std::string kind = name.substr(pos + 1);
    if (kind == "int" && (stem == "add" || stem == "sub" || stem == "mul" || stem == "div")) {
      return "mimosa_" + name + "(" + a + ", " + b + ")";
    }
    static const std::map<std::string, std::string> ops = {
        {"add", "+"}, {"sub", "-"}, {"mul", "*"},  {"div", "/"},  {"lt", "<"},   {"le", "<="},
        {"gt", ">"},  {"ge", ">="}, {"eq", "=="}, {"ne", "!="}, {"and", "&&"}, {"or", "||"}};
    return "(" + a + " " + ops.at(stem) + " " + b + ")";
  }

  void instrs(const std::vector<Instr>& is, int depth) {
    for (const auto& i : is) instr(i, depth);
  }

  void instr(const Instr& i, int d) {
    switch (i.kind) {
      case InstrKind::Assign:
        if (!is_unit(i.target)) line(d, cvar(i.target) + " = " + expr(i.expr, type_of(i.target)) + ";");
        return;
      case InstrKind::StateAssign: {
        Type t = type_of(i.target);
        if (!t.is(TypeKind::Unit)) line(d, "self->" + cvar(i.target) + " = " + expr(i.expr, t) + ";");
        return;
      }
      case InstrKind::TupleConstruct: {
        std::string s = cvar(i.target) + " = " + c_type_name(type_of(i.target)) + "_make(";
        for (std::size_t k = 0; k < i.names.size(); ++k) s += (k ? ", " : "") + use(i.names[k]);
        line(d, s + ");");
        return;
      }
      case InstrKind::TupleDestruct:
        for (std::size_t k = 0; k < i.names.size(); ++k) {
          if (is_unit(i.names[k])) continue;
          line(d, cvar(i.names[k]) + " = " + cvar(i.source) + "._" + std::to_string(k) + ";");
        }
        return;
      case InstrKind::Reset:
        line(d, i.machine + "_reset(&self->" + cvar(i.instance) + ");");
        return;
      case InstrKind::Return:
        if (!m_.out_type.is(TypeKind::Unit)) line(d, "return " + expr(i.expr, m_.out_type) + ";");
        return;
      case InstrKind::If:
        line(d, "if (" + cvar(i.source) + ") {");
        instrs(i.body, d + 1);
        line(d, "} else {");
        instrs(i.alt, d + 1);
        line(d, "}");
        return;
      case InstrKind::CaseOpt: {
        line(d, "if (" + cvar(i.source) + ".is_some) {");
        if (!is_unit(i.bound)) line(d + 1, cvar(i.bound) + " = " + cvar(i.source) + ".value;");
        instrs(i.body, d + 1);
        line(d, "} else {");
        instrs(i.alt, d + 1);
        line(d, "}");
        return;
      }
      case InstrKind::StepCall: {
        std::string call;
        if (find_builtin(i.machine)) {
          call = builtin(i.machine, cvar(i.source));
        } else {
          std::vector<std::string> args;
          if (!is_unit(i.source)) args.push_back(cvar(i.source));
          if (!i.instance.empty()) args.push_back("&self->" + cvar(i.instance));
          call = i.machine + "_step(";
          for (std::size_t k = 0; k < args.size(); ++k) call += (k ? ", " : "") + args[k];
          call += ")";
        }
        if (is_unit(i.target)) {
          line(d, call + ";");
        } else {
          line(d, cvar(i.target) + " = " + call + ";");
        }
        return;
      }
    }
  }

  const Machine& m_;
  std::ostringstream body_;
};

}  // namespace

const std::string* CProject::find(const std::string& name) const {
  for (const auto& [n, text] : files) {
    if (n == name) return &text;
  }
  return nullptr;
}

std::string c_type_name(const Type& type) {
  switch (type.kind) {
    case TypeKind::Unit: return "unit";
    case TypeKind::Bool: return "bool";
    case TypeKind::Int: return "int";
    case TypeKind::Float: return "float";
    case TypeKind::Option: return "opt_" + c_type_name(type.inner());
    case TypeKind::Tuple: {
      std::string s = "tup" + std::to_string(type.args.size());
      for (const auto& a : type.args) s += "_" + c_type_name(a);
      return s;
    }
    case TypeKind::Var: break;
  }
  throw std::logic_error("polymorphic type reached the C backend");
}

std::string c_type(const Type& type) {
  switch (type.kind) {
    case TypeKind::Unit: return "unit_t";
    case TypeKind::Bool: return "bool";
    case TypeKind::Int: return "int64_t";
    case TypeKind::Float: return "double";
    case TypeKind::Option:
    case TypeKind::Tuple: return "struct " + c_type_name(type);
    case TypeKind::Var: break;
  }
  throw std::logic_error("polymorphic type reached the C backend");
}

std::string emit_runtime_header() {
  return R"C(#ifndef MIMOSA_RUNTIME_H
#define MIMOSA_RUNTIME_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/* Microseconds since system start. */
typedef uint64_t timestamp_t;

typedef struct queue *queue_t;

typedef void (*task_fn)(void);

/* Bounded FIFO of `len` items of `elem_size` bytes each. */
queue_t create_queue(size_t len, size_t elem_size);
/* Copies one item in; false when the queue is full. */
bool queue_send(queue_t q, const void *item);
/* Copies the front item out (`item` may be NULL to drop it). */
void queue_recv(queue_t q, void *item);
/* True when `stamps` is non-empty and its front stamp is <= now. */
bool check_avail(timestamp_t now, queue_t stamps);
void sleep_until(timestamp_t deadline);
void spawn_task(const char *name, task_fn fn, int priority, size_t stack);
void start_scheduler(void);

/* Reports a full channel at `now` and stops the system. */
void runtime_overflow(const char *channel, timestamp_t now);
/* Reports an unrecoverable error (integer division by zero) and stops. */
void runtime_fatal(const char *message);

#ifdef MIMOSA_TRACE
/* Starts a line `T=<now> <kind> <node>`. */
void trace_begin(timestamp_t now, const char *kind, const char *node);
void trace_text(const char *text);
void trace_int(int64_t v);
/* %.17g */
void trace_float(double v);
void trace_stamp(timestamp_t v);
/* Ends the line. */
void trace_end(void);
#endif

#endif
)C";
}

std::string emit_types(const Compilation& compiled) {
  std::set<std::string> seen;
  std::vector<Type> types;
  for (const auto& m : compiled.machines) {
    collect_types(m.in_type, seen, types);
    collect_types(m.out_type, seen, types);
    for (const auto& cell : m.memory) collect_types(cell.type, seen, types);
    for (const auto& [n, t] : m.locals) collect_types(t, seen, types);
  }
  for (const auto& ch : compiled.typed.program.channels) {
    collect_types(ch.element, seen, types);
    collect_types(Type::option(ch.element), seen, types);
  }

  std::ostringstream os;
  os << "#ifndef MIMOSA_TYPES_H\n#define MIMOSA_TYPES_H\n\n"
     << "#include <stdbool.h>\n#include <stdint.h>\n\n#include \"runtime.h\"\n\n"
     << "typedef uint8_t unit_t;\n\n";

  for (const auto& t : types) {
    std::string n = c_type_name(t);
    os << "struct " << n << " {\n";
    if (t.is(TypeKind::Option)) {
      os << "  bool is_some;\n  " << c_type(t.inner()) << " value;\n};\n\n";
      os << "static inline struct " << n << " " << n << "_some(" << c_type(t.inner()) << " v)\n{\n"
         << "  struct " << n << " r;\n  r.is_some = true;\n  r.value = v;\n  return r;\n}\n\n";
      os << "static inline struct " << n << " " << n << "_none(void)\n{\n"
         << "  struct " << n << " r;\n  r.is_some = false;\n  r.value = "
         << c_value(nil_value(t.inner()), t.inner()) << ";\n  return r;\n}\n\n";
    } else {
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        os << "  " << c_type(t.args[i]) << " _" << i << ";\n";
      }
      os << "};\n\n";
      os << "static inline struct " << n << " " << n << "_make(";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        os << (i ? ", " : "") << c_type(t.args[i]) << " a" << i;
      }
      os << ")\n{\n  struct " << n << " r;\n";
      for (std::size_t i = 0; i < t.args.size(); ++i) os << "  r._" << i << " = a" << i << ";\n";
      os << "  return r;\n}\n\n";
    }
  }

  os << R"C(/* Two's complement wrapping arithmetic. */
static inline int64_t mimosa_add_int(int64_t a, int64_t b)
{
  return (int64_t)((uint64_t)a + (uint64_t)b);
}

static inline int64_t mimosa_sub_int(int64_t a, int64_t b)
{
  return (int64_t)((uint64_t)a - (uint64_t)b);
}

static inline int64_t mimosa_mul_int(int64_t a, int64_t b)
{
  return (int64_t)((uint64_t)a * (uint64_t)b);
}

static inline int64_t mimosa_neg_int(int64_t a)
{
  return (int64_t)((uint64_t)0 - (uint64_t)a);
}

static inline int64_t mimosa_div_int(int64_t a, int64_t b)
{
  if (b == 0) {
    runtime_fatal("integer division by zero");
    return 0;
  }
  if (b == -1) return mimosa_neg_int(a);
  return a / b;
}

#ifdef MIMOSA_TRACE
static inline void trace_value_unit(unit_t v)
{
  (void)v;
  trace_text("()");
}

static inline void trace_value_bool(bool v)
{
  trace_text(v ? "true" : "false");
}

static inline void trace_value_int(int64_t v)
{
  trace_int(v);
}

static inline void trace_value_float(double v)
{
  trace_float(v);
}

)C";
  for (const auto& t : types) {
    std::string n = c_type_name(t);
    os << "static inline void trace_value_" << n << "(struct " << n << " v)\n{\n";
    if (t.is(TypeKind::Option)) {
      os << "  if (v.is_some) {\n    trace_text(\"Some(\");\n    trace_value_"
         << c_type_name(t.inner()) << "(v.value);\n    trace_text(\")\");\n  } else {\n"
         << "    trace_text(\"None\");\n  }\n";
    } else {
      os << "  trace_text(\"(\");\n";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) os << "  trace_text(\",\");\n";
        os << "  trace_value_" << c_type_name(t.args[i]) << "(v._" << i << ");\n";
      }
      os << "  trace_text(\")\");\n";
    }
    os << "}\n\n";
  }
  os << "#endif\n\n#endif\n";
  return os.str();
}

CUnit emit_machine(const Machine& machine) { return MachineEmitter(machine).run();
}

std::string emit_network(const Compilation& compiled, const DeploymentModel& model) {
  const Program& prog = compiled.typed.program;
  std::ostringstream os;

  // Size macros are upper-cased unless two channels differ only in case.
  std::set<std::string> uppers;
  bool clash = false;
  for (const auto& ch : prog.channels) clash |= !uppers.insert(upper(ch.name)).second;
  auto size_macro = [&](const std::string& ch) { return (clash ? ch : upper(ch)) + "_SIZE"; };

  os << "#include \"runtime.h\"\n#include \"types.h\"\n";
  std::set<std::string> steps;
  for (const auto& node : prog.nodes) steps.insert(node.step);
  for (const auto& s : steps) os << "#include \"" << s << ".h\"\n";
  os << "\n";

  for (const auto& ch : prog.channels) {
    os << "#define " << size_macro(ch.name) << " " << model.channels.at(ch.name).capacity << "\n";
  }
  os << "\n";
  for (const auto& ch : prog.channels) {
    os << "static queue_t " << cchan(ch.name) << ";\n";
    os << "static queue_t " << cchan(ch.name) << "_stamps;\n";
  }
  os << "\n";

  auto element = [&](const std::string& ch) { return prog.find_channel(ch)->element; };

  for (const auto& node : prog.nodes) {
    const Machine* m = compiled.machine(node.step);
    if (!m) fail(Phase::Network, node.loc, "no machine for step '" + node.step + "'");
    const bool stateless = m->stateless();

    os << "static const timestamp_t " << node.name << "_period = " << node.period_us << ";\n\n";
    os << "static void " << node.name << "_task(void)\n{\n";
    if (!stateless) {
      os << "  /* Create/reset step state */\n";
      os << "  struct " << m->name << "_state_t self;\n";
      os << "  " << m->name << "_reset(&self);\n\n";
    }
    os << "  timestamp_t now = 0;\n\n  while (1) {\n";
    os << "    /* Calculate end of period */\n";
    os << "    timestamp_t next_period = now + " << node.name << "_period;\n\n";

    std::vector<std::string> required;
    for (const auto& p : node.inputs) {
      if (p.optional) continue;
      required.push_back(p.channel);
    }
    std::string ind = "    ";
    if (!required.empty()) {
      os << "    /* Check if input data is available */\n";
      std::string cond;
      for (const auto& ch : required) {
        os << "    bool " << cchan(ch) << "_avail = check_avail(now, " << cchan(ch) << "_stamps);\n";
        cond += (cond.empty() ? "" : " && ") + cchan(ch) + "_avail";
      }
      os << "    if (" << cond << ") {\n";
      ind = "      ";
    }

    // Receive inputs in port order.
    std::vector<std::string> args;
    std::vector<std::pair<std::string, Type>> traced_inputs;
    for (std::size_t k = 0; k < node.inputs.size(); ++k) {
      const Port& p = node.inputs[k];
      Type el = element(p.channel);
      std::string q = cchan(p.channel);
      std::string var = "in" + std::to_string(k);
      if (!p.optional) {
        os << ind << "/* Receive input data item */\n";
        os << ind << c_type(el) << " " << var << ";\n";
        os << ind << "queue_recv(" << q << ", &" << var << ");\n";
        os << ind << "/* Remove corresponding time stamp */\n";
        os << ind << "queue_recv(" << q << "_stamps, NULL);\n";
        traced_inputs.push_back({var, el});
      } else {
        Type opt = Type::option(el);
        os << ind << c_type(opt) << " " << var << ";\n";
        os << ind << "if (check_avail(now, " << q << "_stamps)) {\n";
        os << ind << "  " << var << ".is_some = true;\n";
        os << ind << "  queue_recv(" << q << ", &" << var << ".value);\n";
        os << ind << "  queue_recv(" << q << "_stamps, NULL);\n";
        os << ind << "} else {\n";
        os << ind << "  " << var << " = " << c_type_name(opt) << "_none();\n";
        os << ind << "}\n";
        traced_inputs.push_back({var, opt});
      }
      args.push_back(var);
    }

    std::string arg;
    if (args.size() == 1) {
      arg = args[0];
    } else if (args.size() >= 2) {
      arg = c_type_name(m->in_type) + "_make(";
      for (std::size_t k = 0; k < args.size(); ++k) arg += (k ? ", " : "") + args[k];
      arg += ")";
    }
    std::vector<std::string> call_args;
    if (!m->in_type.is(TypeKind::Unit)) call_args.push_back(arg);
    if (!stateless) call_args.push_back("&self");
    std::string call = m->name + "_step(";
    for (std::size_t k = 0; k < call_args.size(); ++k) call += (k ? ", " : "") + call_args[k];
    call += ")";

    os << ind << "/* Call implemented step function */\n";
    const std::size_t k_out = node.outputs.size();
    if (m->out_type.is(TypeKind::Unit)) {
      os << ind << call << ";\n";
    } else {
      os << ind << c_type(m->out_type) << " r = " << call << ";\n";
    }

    // Each output value as a C expression of the port's declared type.
    std::vector<std::string> outs;
    for (std::size_t k = 0; k < k_out; ++k) {
      Type port_type = k_out == 1 ? m->out_type : m->out_type.args[k];
      if (port_type.is(TypeKind::Unit)) {
        outs.push_back("((unit_t)0)");
      } else {
        outs.push_back(k_out == 1 ? "r" : "r._" + std::to_string(k));
      }
    }

    for (std::size_t k = 0; k < k_out; ++k) {
      const Port& p = node.outputs[k];
      Type el = element(p.channel);
      std::string q = cchan(p.channel);
      std::string val = outs[k];
      std::string inner = ind;
      if (p.optional) {
        os << ind << "/* Unwrap optional output */\n";
        os << ind << "if (" << val << ".is_some) {\n";
        inner = ind + "  ";
        val += ".value";
      }
      std::string tmp = "out" + std::to_string(k);
      os << inner << c_type(el) << " " << tmp << " = " << val << ";\n";
      os << inner << "/* Write at end of current period */\n";
      os << inner << "if (!queue_send(" << q << ", &" << tmp << ")) runtime_overflow(\"" << p.channel
         << "\", now);\n";
      os << inner << "if (!queue_send(" << q << "_stamps, &next_period)) runtime_overflow(\""
         << p.channel << "\", now);\n";
      if (p.optional) os << ind << "}\n";
    }

    os << "#ifdef MIMOSA_TRACE\n";
    os << ind << "trace_begin(now, \"FIRE\", \"" << node.name << "\");\n";
    os << ind << "trace_text(\" in=[\");\n";
    for (std::size_t k = 0; k < traced_inputs.size(); ++k) {
      if (k) os << ind << "trace_text(\",\");\n";
      os << ind << "trace_value_" << c_type_name(traced_inputs[k].second) << "("
         << traced_inputs[k].first << ");\n";
    }
    os << ind << "trace_text(\"] out=[\");\n";
    if (k_out > 0) os << ind << "int first = 1;\n";
    for (std::size_t k = 0; k < k_out; ++k) {
      const Port& p = node.outputs[k];
      Type el = element(p.channel);
      std::string val = outs[k];
      std::string inner = ind;
      if (p.optional) {
        os << ind << "if (" << val << ".is_some) {\n";
        inner = ind + "  ";
        val += ".value";
      }
      os << inner << "if (!first) trace_text(\",\");\n";
      os << inner << "first = 0;\n";
      os << inner << "trace_text(\"" << p.channel << ":\");\n";
      os << inner << "trace_value_" << c_type_name(el) << "(" << val << ");\n";
      os << inner << "trace_text(\"@\");\n";
      os << inner << "trace_stamp(next_period);\n";
      if (p.optional) os << ind << "}\n";
    }
    if (k_out > 0) os << ind << "(void)first;\n";
    os << ind << "trace_text(\"]\");\n";
    os << ind << "trace_end();\n";
    os << "#endif\n";
    if (!required.empty()) {
      os << "    } else {\n#ifdef MIMOSA_TRACE\n";
      os << "      trace_begin(now, \"SKIP\", \"" << node.name << "\");\n";
      os << "      trace_text(\" missing=[\");\n";
      os << "      int first = 1;\n";
      for (const auto& ch : required) {
        os << "      if (!" << cchan(ch) << "_avail) {\n";
        os << "        if (!first) trace_text(\",\");\n";
        os << "        first = 0;\n";
        os << "        trace_text(\"" << ch << "\");\n";
        os << "      }\n";
      }
      os << "      (void)first;\n";
      os << "      trace_text(\"]\");\n      trace_end();\n#endif\n    }\n";
    }
    os << "    now = next_period;\n";
    os << "    /* Wait till next period */\n";
    os << "    sleep_until(next_period);\n";
    os << "  }\n}\n\n";
  }

  os << "int main(void)\n{\n";
  for (const auto& ch : prog.channels) {
    std::string q = cchan(ch.name);
    os << "  " << q << " = create_queue(" << size_macro(ch.name) << ", sizeof(" << c_type(ch.element)
       << "));\n";
    os << "  " << q << "_stamps = create_queue(" << size_macro(ch.name)
       << ", sizeof(timestamp_t));\n";
  }
  for (const auto& node : prog.nodes) {
    const auto& spec = model.nodes.at(node.name);
    os << "  spawn_task(\"" << node.name << "\", " << node.name << "_task, " << spec.priority
       << ", " << spec.stack << ");\n";
  }
  os << "  start_scheduler();\n  return 0;\n}\n";
  return os.str();
}

CProject generate_c(const Compilation& compiled, const DeploymentModel& model) {
  CProject p;
  p.files.emplace_back("runtime.h", emit_runtime_header());
  p.files.emplace_back("types.h", emit_types(compiled));
  for (const auto& m : compiled.machines) {
    CUnit u = emit_machine(m);
    p.files.emplace_back(m.name + ".h", std::move(u.header));
    if (!m.prototype) p.files.emplace_back(m.name + ".c", std::move(u.source));
  }
  if (!compiled.typed.program.nodes.empty()) {
    p.files.emplace_back("network.c", emit_network(compiled, model));
  }
  return p;
}

void write_project(const CProject& project, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, text] : project.files) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << text;
  }
}

}  // namespace mimosa
