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

#include "mimosa/simulator.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "mimosa/builtins.hpp"
#include "mimosa/lexer.hpp"

namespace mimosa {

// ---- machine interpretation ---------------------------------------------------

struct MachineInterpreter::Frame {
  std::map<std::string, Value> env;

  const Value& get(const std::string& name) const {
    auto it = env.find(name);
    if (it == env.end()) throw EvalError("unbound local " + name);
    return it->second;
  }
};

MachineInterpreter::MachineInterpreter(const std::vector<Machine>& machines, ExternFn externs)
    : externs_(std::move(externs)) {
  for (const auto& m : machines) machines_[m.name] = &m;
}

const Machine& MachineInterpreter::machine(const std::string& name) const {
  auto it = machines_.find(name);
  if (it == machines_.end()) throw EvalError("no machine named " + name);
  return *it->second;
}

MachineState MachineInterpreter::create(const std::string& name) const {
  const Machine& m = machine(name);
  MachineState state;
  for (const auto& cell : m.memory) state.memory[cell.name] = cell.init;
  for (const auto& inst : m.instances) {
    state.instances[inst.name] = std::make_unique<MachineState>(create(inst.machine));
  }
  return state;
}

void MachineInterpreter::reset(const std::string& name, MachineState& state) const {
  const Machine& m = machine(name);
  Frame frame;
  Value ignored;
  exec(m, m.reset, state, frame, ignored);
}

Value MachineInterpreter::step(const std::string& name, MachineState& state,
                               const Value& input) const {
  const Machine& m = machine(name);
  if (m.prototype) {
    if (!externs_) throw EvalError("no implementation for prototype " + name);
    return externs_(name, input);
  }
  Frame frame;
  frame.env[m.in] = input;
  Value result;
  if (!exec(m, m.step, state, frame, result)) throw EvalError("machine " + name + " did not return");
  return result;
}

Value MachineInterpreter::call(const Instr& i, MachineState& state, const Value& arg) const {
  if (find_builtin(i.machine)) return eval_builtin(i.machine, arg);
  if (i.instance.empty()) {
    MachineState scratch;
    return step(i.machine, scratch, arg);
  }
  auto it = state.instances.find(i.instance);
  if (it == state.instances.end()) throw EvalError("missing instance " + i.instance);
  return step(i.machine, *it->second, arg);
}

bool MachineInterpreter::exec(const Machine& m, const std::vector<Instr>& instrs,
                              MachineState& state, Frame& frame, Value& result) const {
  auto eval = [&](const OExpr& e) -> Value {
    switch (e.kind) {
      case OExpr::Kind::Var: return frame.get(e.name);
      case OExpr::Kind::State: {
        auto it = state.memory.find(e.name);
        if (it == state.memory.end()) throw EvalError("missing cell " + e.name);
        return it->second;
      }
      case OExpr::Kind::Const: return e.value;
      case OExpr::Kind::None: return Value::none();
      case OExpr::Kind::Some: return Value::some(frame.get(e.name));
    }
    return Value::unit();
  };

  for (const auto& i : instrs) {
    switch (i.kind) {
      case InstrKind::Assign: frame.env[i.target] = eval(i.expr); break;
      case InstrKind::StateAssign: state.memory[i.target] = eval(i.expr); break;
      case InstrKind::TupleConstruct: {
        std::vector<Value> parts;
        for (const auto& n : i.names) parts.push_back(frame.get(n));
        frame.env[i.target] = Value::tuple(std::move(parts));
        break;
      }
      case InstrKind::TupleDestruct: {
        Value t = frame.get(i.source);
        if (t.kind != TypeKind::Tuple || t.elems.size() != i.names.size()) {
          throw EvalError("tuple destructuring arity mismatch in " + m.name);
        }
        for (std::size_t k = 0; k < i.names.size(); ++k) frame.env[i.names[k]] = t.elems[k];
        break;
      }
      case InstrKind::Reset: {
        auto it = state.instances.find(i.instance);
        if (it == state.instances.end()) throw EvalError("missing instance " + i.instance);
        reset(i.machine, *it->second);
        break;
      }
      case InstrKind::Return: result = eval(i.expr); return true;
      case InstrKind::If:
        if (exec(m, frame.get(i.source).b ? i.body : i.alt, state, frame, result)) return true;
        break;
      case InstrKind::StepCall: frame.env[i.target] = call(i, state, frame.get(i.source)); break;
      case InstrKind::CaseOpt: {
        Value s = frame.get(i.source);
        bool done;
        if (s.is_some()) {
          frame.env[i.bound] = s.elems[0];
          done = exec(m, i.body, state, frame, result);
        } else {
          done = exec(m, i.alt, state, frame, result);
        }
        if (done) return true;
        break;
      }
    }
  }
  return false;
}

// ---- stimuli ------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

[[noreturn]] void stimulus_error(int line, const std::string& msg) {
  fail(Phase::Stimulus, {line, 1}, msg);
}

}  // namespace

Stimuli parse_stimuli(std::string_view text, const std::vector<Machine>& machines) {
  std::map<std::string, const Machine*> protos;
  for (const auto& m : machines) {
    if (m.prototype) protos[m.name] = &m;
  }

  Stimuli out;
  const Machine* current = nullptr;
  int section_line = 0;
  bool has_returns = false;
  auto finish = [&] {
    if (current && !has_returns) {
      stimulus_error(section_line, "extern '" + current->name + "' has no 'returns' line");
    }
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      finish();
      if (line.back() != ']') stimulus_error(line_no, "unterminated section header");
      std::string_view inner = trim(line.substr(1, line.size() - 2));
      if (inner.substr(0, 7) != "extern " && inner.substr(0, 7) != "extern\t") {
        stimulus_error(line_no, "expected '[extern <name>]'");
      }
      std::string name(trim(inner.substr(7)));
      auto it = protos.find(name);
      if (it == protos.end()) stimulus_error(line_no, "unknown prototype '" + name + "'");
      if (out.scripts.contains(name)) stimulus_error(line_no, "duplicate extern '" + name + "'");
      current = it->second;
      section_line = line_no;
      has_returns = false;
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string_view::npos) stimulus_error(line_no, "expected 'returns = <values>'");
    if (!current) stimulus_error(line_no, "key outside of an [extern] section");
    std::string key(trim(line.substr(0, eq)));
    if (key != "returns") stimulus_error(line_no, "unknown key '" + key + "'");
    if (has_returns) stimulus_error(line_no, "duplicate key 'returns'");
    std::vector<Value> values;
    try {
      values = parse_value_list(trim(line.substr(eq + 1)), current->out_type);
    } catch (const CompileError& e) {
      stimulus_error(line_no, e.diagnostics().front().message);
    }
    if (values.empty()) stimulus_error(line_no, "empty script for '" + current->name + "'");
    out.scripts[current->name] = std::move(values);
    has_returns = true;
  }
  finish();
  return out;
}

// ---- coordination ---------------------------------------------------------------

bool available(const TimedQueue& queue, Micros now) {
  return !queue.items.empty() && queue.items.front().stamp <= now;
}

namespace {

std::string join_values(const std::vector<Value>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + format_value(values[i]);
  return s;
}

std::vector<Value> split(const Value& v, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {v};
  return v.elems;
}

Value combine(std::vector<Value> values) {
  if (values.empty()) return Value::unit();
  if (values.size() == 1) return std::move(values.front());
  return Value::tuple(std::move(values));
}

}  // namespace

std::string format_event(const TraceEvent& e) {
  std::ostringstream os;
  os << "T=" << e.time << " ";
  switch (e.kind) {
    case TraceEvent::Kind::Fire: {
      os << "FIRE " << e.node << " in=[" << join_values(e.inputs) << "] out=[";
      for (std::size_t i = 0; i < e.outputs.size(); ++i) {
        const auto& w = e.outputs[i];
        os << (i ? "," : "") << w.channel << ":" << format_value(w.value) << "@" << w.stamp;
      }
      os << "]";
      break;
    }
    case TraceEvent::Kind::Skip: {
      os << "SKIP " << e.node << " missing=[";
      for (std::size_t i = 0; i < e.missing.size(); ++i) os << (i ? "," : "") << e.missing[i];
      os << "]";
      break;
    }
    case TraceEvent::Kind::Extern:
      os << "EXT " << e.prototype << " arg=" << format_value(e.arg) << " ret=" << format_value(e.ret);
      break;
    case TraceEvent::Kind::Overflow: os << "OVERFLOW " << e.channel; break;
  }
  return os.str();
}

std::string format_trace(const Trace& trace) {
  std::string out;
  for (const auto& e : trace) out += format_event(e) + "\n";
  return out;
}

SimResult run(const Compilation& compiled, const DeploymentModel& model, const Stimuli& stimuli,
              Micros horizon) {
  const Program& prog = compiled.typed.program;
  SimResult result;

  for (const auto& m : compiled.machines) {
    if (m.prototype && !(m.out_type == Type::unit()) && !stimuli.scripts.contains(m.name)) {
      fail(Phase::Stimulus, {}, "no stimulus script for prototype '" + m.name + "'");
    }
  }
  for (const auto& c : prog.channels) {
    auto it = model.channels.find(c.name);
    if (it == model.channels.end()) {
      fail(Phase::Model, c.loc, "channel '" + c.name + "' is missing from the model");
    }
    result.queues[c.name] = TimedQueue{c.name, it->second.capacity, {}};
    result.produced[c.name] = 0;
    result.consumed[c.name] = 0;
  }

  Micros now = 0;
  std::string current_node;
  std::map<std::string, std::size_t> calls;
  ExternFn externs = [&](const std::string& proto, const Value& arg) {
    Value ret = Value::unit();
    if (auto it = stimuli.scripts.find(proto); it != stimuli.scripts.end()) {
      std::size_t& k = calls[proto];
      ret = it->second[std::min(k, it->second.size() - 1)];
      ++k;
    }
    TraceEvent e;
    e.kind = TraceEvent::Kind::Extern;
    e.time = now;
    e.node = current_node;
    e.prototype = proto;
    e.arg = arg;
    e.ret = ret;
    result.trace.push_back(std::move(e));
    return ret;
  };

  MachineInterpreter interp(compiled.machines, externs);
  std::vector<MachineState> states;
  std::vector<Micros> next(prog.nodes.size(), 0);
  for (const auto& n : prog.nodes) {
    states.push_back(interp.create(n.step));
    interp.reset(n.step, states.back());
  }

  while (true) {
    Micros t = std::numeric_limits<Micros>::max();
    for (Micros r : next) t = std::min(t, r);
    if (prog.nodes.empty() || t > horizon) break;
    now = t;

    for (std::size_t k = 0; k < prog.nodes.size(); ++k) {
      if (next[k] != t) continue;
      const NodeDecl& node = prog.nodes[k];
      next[k] += node.period_us;
      current_node = node.name;

      std::vector<std::string> missing;
      for (const auto& p : node.inputs) {
        if (!p.optional && !available(result.queues.at(p.channel), t)) missing.push_back(p.channel);
      }
      if (!missing.empty()) {
        TraceEvent e;
        e.kind = TraceEvent::Kind::Skip;
        e.time = t;
        e.node = node.name;
        e.missing = std::move(missing);
        result.trace.push_back(std::move(e));
        continue;
      }

      std::vector<Value> inputs;
      for (const auto& p : node.inputs) {
        TimedQueue& q = result.queues.at(p.channel);
        if (p.optional && !available(q, t)) {
          inputs.push_back(Value::none());
          continue;
        }
        Value v = q.items.front().value;
        q.items.pop_front();
        ++result.consumed[p.channel];
        inputs.push_back(p.optional ? Value::some(std::move(v)) : std::move(v));
      }

      Value out = interp.step(node.step, states[k], combine(inputs));
      std::vector<Value> outs = split(out, node.outputs.size());

      TraceEvent fire;
      fire.kind = TraceEvent::Kind::Fire;
      fire.time = t;
      fire.node = node.name;
      fire.inputs = inputs;
      Micros stamp = t + node.period_us;
      for (std::size_t i = 0; i < node.outputs.size(); ++i) {
        const Port& p = node.outputs[i];
        Value v = outs.at(i);
        if (p.optional) {
          if (!v.is_some()) continue;
          v = v.elems[0];
        }
        TimedQueue& q = result.queues.at(p.channel);
        if (static_cast<std::int64_t>(q.items.size()) >= q.capacity) {
          TraceEvent e;
          e.kind = TraceEvent::Kind::Overflow;
          e.time = t;
          e.node = node.name;
          e.channel = p.channel;
          result.trace.push_back(std::move(e));
          result.overflowed = true;
          return result;
        }
        q.items.push_back({v, stamp});
        ++result.produced[p.channel];
        fire.outputs.push_back({p.channel, std::move(v), stamp});
      }
      result.trace.push_back(std::move(fire));
    }
  }
  return result;
}

Micros parse_duration(std::string_view text) {
  std::vector<Token> toks = tokenize(text);
  if (toks.size() != 1 || toks[0].kind != Tok::Duration) {
    fail(Phase::Parser, {}, "expected a duration such as 600ms, found '" + std::string(text) + "'");
  }
  Micros scale = micros_per(toks[0].unit);
  if (toks[0].int_value > std::numeric_limits<Micros>::max() / scale) {
    fail(Phase::Parser, {}, "duration out of range");
  }
  return toks[0].int_value * scale;
}

}  // namespace mimosa
