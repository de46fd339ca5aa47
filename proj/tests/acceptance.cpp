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

// Acceptance runner: one PASS/FAIL line per criterion. With no argument every
// criterion runs; otherwise only the named ones. Exit status is non-zero when
// any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <regex>
#include <sstream>

#include "mimosa/codegen_c.hpp"
#include "mimosa/parser.hpp"
#include "mimosa/pretty.hpp"
#include "mimosa/simulator.hpp"
#include "support.hpp"

using namespace mimosa;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string join_values(const std::vector<Value>& vs) {
  std::string out = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + format_value(vs[i]);
  return out + "]";
}

// ---- edge detector ------------------------------------------------------------

Verdict edge_end_to_end() {
  auto start = Clock::now();
  auto p = mtest::corpus_program("edge");
  Compilation c = mtest::compile(p);
  SimResult r = run(c, *p.model, parse_stimuli(p.stimuli, c.machines), 600'000);
  double elapsed = seconds_since(start);

  bool rising = false, falling = false;
  std::vector<Micros> toggles;
  for (const auto& e : r.trace) {
    if (e.kind == TraceEvent::Kind::Fire && e.node == "edge") {
      for (const auto& w : e.outputs) {
        if (w.channel != "b") continue;
        rising |= w.value == Value::boolean(true) && w.stamp == 150'000;
        falling |= w.value == Value::boolean(false) && w.stamp == 250'000;
      }
    }
    if (e.kind == TraceEvent::Kind::Extern && e.prototype == "toggle_led") toggles.push_back(e.time);
  }
  bool golden = format_trace(r.trace) == mtest::read_file(mtest::golden_path("edge.trace"));
  bool toggles_ok = toggles == std::vector<Micros>{300'000, 600'000};

  std::ostringstream d;
  d << "Some true@150000 " << (rising ? "yes" : "no") << ", Some false@250000 "
    << (falling ? "yes" : "no") << ", toggle_led at [";
  for (std::size_t i = 0; i < toggles.size(); ++i) d << (i ? "," : "") << toggles[i];
  d << "] (want [300000,600000]), golden " << (golden ? "match" : "differs") << ", " << elapsed << "s";
  return {rising && falling && toggles_ok && golden && elapsed < 1.0, d.str()};
}

// ---- memory operators -----------------------------------------------------------

// Outputs of `o = <expr>` over x = 1,2,3 and y = 10,20,30, from both the
// NormIR and the OOIR interpreter.
std::pair<std::vector<Value>, std::vector<Value>> three_cycles(const std::string& expr) {
  PipelineOptions options;
  options.init_check = false;
  Compilation c =
      compile_source("step s (x : int, y : int) --> (o : int) { o = " + expr + "; }", nullptr, options);
  NormInterpreter norm(c.norm, nullptr);
  MachineInterpreter mach(c.machines, nullptr);
  auto inst = norm.instantiate("s");
  MachineState st = mach.create("s");
  mach.reset("s", st);
  std::vector<Value> a, b;
  for (std::int64_t k = 1; k <= 3; ++k) {
    Value in = Value::tuple({Value::integer(k), Value::integer(10 * k)});
    a.push_back(norm.step(inst, in));
    b.push_back(mach.step("s", st, in));
  }
  return {a, b};
}

std::vector<Value> ints(std::initializer_list<std::int64_t> xs) {
  std::vector<Value> out;
  for (auto x : xs) out.push_back(Value::integer(x));
  return out;
}

Verdict memory_operators() {
  // Reading fby as a one-cycle delay of y would give [1,10,20]. The
  // compilation rules evaluate y in the current cycle from the second cycle
  // on, so fby yields the values of -> and differs only in when the side
  // effects of y begin. The mismatch with the delayed reading is asserted.
  const std::vector<Value> nil_first = ints({0, 1, 2});
  const std::vector<Value> arrow = ints({1, 20, 30});
  const std::vector<Value> fby_rules = ints({1, 20, 30});
  const std::vector<Value> fby_delayed = ints({1, 10, 20});

  auto [pre_n, pre_o] = three_cycles("pre x");
  auto [arr_n, arr_o] = three_cycles("x -> y");
  auto [fby_n, fby_o] = three_cycles("x fby y");
  bool ok = pre_n == nil_first && pre_o == nil_first && arr_n == arrow && arr_o == arrow &&
            fby_n == fby_rules && fby_o == fby_rules && fby_n != fby_delayed;
  std::string d = "pre " + join_values(pre_n) + "/" + join_values(pre_o) + " (nil=0), -> " +
                  join_values(arr_n) + "/" + join_values(arr_o) + ", fby " + join_values(fby_n) + "/" +
                  join_values(fby_o) + " (a one-cycle delay would give [1,10,20])";
  return {ok, d};
}

// ---- worked OOIR listing --------------------------------------------------------

std::string canonical(const std::string& text) {
  static const std::regex fresh("__([a-z]+)([0-9]+)");
  std::map<std::string, int> ids;
  std::string out;
  std::size_t last = 0;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), fresh); it != std::sregex_iterator(); ++it) {
    out += text.substr(last, it->position() - last);
    auto [pos, inserted] = ids.emplace(it->str(), static_cast<int>(ids.size()));
    out += "__" + (*it)[1].str() + "#" + std::to_string(pos->second);
    last = it->position() + it->length();
  }
  return out + text.substr(last);
}

Verdict worked_ooir() {
  Compilation c = compile_source("step s (in : bool) --> (pre_in : bool) { pre_in = in -> pre in; }");
  const std::string expected =
      "machine s in : bool --> bool\n"
      "memory:\n"
      "  __tmp#0 : bool\n"
      "  __fst#1 : bool\n"
      "instances:\n"
      "reset:\n"
      "  __tmp#0 <- false\n"
      "  __fst#1 <- true\n"
      "step:\n"
      "  __r#2 = !__tmp#0\n"
      "  __t#3 = !__fst#1\n"
      "  if __t#3 then [\n"
      "    pre_in = in\n"
      "  ] else [\n"
      "    pre_in = __r#2\n"
      "  ]\n"
      "  __fst#1 <- false\n"
      "  __tmp#0 <- in\n"
      "  return pre_in\n";
  std::string got = canonical(dump(*c.machine("s")));
  return {got == expected, got == expected ? "reset {tmp <- nil, fst <- true}; read, test, flag clear, store"
                                           : "dump differs:\n" + got};
}

// ---- causality and initialisation ------------------------------------------------

std::optional<Diagnostic> rejection(const std::string& src) {
  try {
    compile_source(src);
  } catch (const CompileError& e) {
    return e.diagnostics().front();
  }
  return std::nullopt;
}

Verdict causality_init() {
  auto cycle = rejection("step f (a : int) --> (x : int) { x = x + 1; }");
  bool cycle_ok = cycle && cycle->phase == Phase::Causality &&
                  cycle->message.find("cycle") != std::string::npos;

  bool counter_ok = false;
  std::string counted;
  try {
    auto p = mtest::corpus_program("counter");
    Compilation c = mtest::compile(p);
    SimResult r = run(c, *p.model, parse_stimuli(p.stimuli, c.machines), 90'000);
    std::vector<Value> values;
    for (const auto& e : r.trace) {
      if (e.kind == TraceEvent::Kind::Fire && e.node == "counter") values.push_back(e.outputs.at(0).value);
    }
    counted = join_values(values);
    counter_ok = values == ints({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  } catch (const std::exception& e) {
    counted = e.what();
  }

  auto init = rejection("step f (in : int) --> (out : int) { out = pre in; }");
  bool init_ok = init && init->phase == Phase::Init;

  std::string d = std::string("x = x + 1 ") + (cycle ? "rejected (" + cycle->message + ")" : "accepted") +
                  "; counter " + counted + "; out = pre in " +
                  (init ? "rejected (" + init->message + ")" : "accepted");
  return {cycle_ok && counter_ok && init_ok, d};
}

// ---- NormIR versus OOIR -----------------------------------------------------------

Verdict oracle_equivalence() {
  auto start = Clock::now();
  int steps = 0, stateful = 0, mismatches = 0;
  for (const auto& p : mtest::corpus()) {
    Compilation c = mtest::compile(p);
    for (const auto& s : c.norm) {
      ++steps;
      stateful += !c.machine(s.name)->stateless();
      std::mt19937_64 rng(std::hash<std::string>{}(p.name + "/" + s.name));
      for (int stream = 0; stream < 100; ++stream) {
        std::uint64_t seed = rng();
        mtest::ScriptedExterns ext_a(c.machines, seed), ext_b(c.machines, seed);
        NormInterpreter norm(c.norm, std::ref(ext_a));
        MachineInterpreter mach(c.machines, std::ref(ext_b));
        auto inst = norm.instantiate(s.name);
        MachineState st = mach.create(s.name);
        mach.reset(s.name, st);
        for (int k = 0; k < 10; ++k) {
          Value in = mtest::random_value(s.in_type, rng);
          std::optional<Value> a, b;
          try {
            a = norm.step(inst, in);
          } catch (const EvalError&) {
          }
          try {
            b = mach.step(s.name, st, in);
          } catch (const EvalError&) {
          }
          if (a != b) {
            ++mismatches;
            break;
          }
          if (!a) break;
        }
      }
    }
  }
  double elapsed = seconds_since(start);
  std::ostringstream d;
  d << steps << " steps (" << stateful << " stateful) x 100 streams x 10 cycles, " << mismatches
    << " mismatches, " << elapsed << "s";
  return {steps >= 10 && stateful > 0 && mismatches == 0 && elapsed < 10.0, d.str()};
}

// ---- determinism ----------------------------------------------------------------

struct Artefacts {
  std::string ir;
  std::string c;
  std::string trace;
};

Artefacts artefacts(const mtest::CorpusProgram& p) {
  Compilation c = mtest::compile(p);
  Artefacts a;
  for (const auto& s : c.norm) a.ir += dump(s) + "\n";
  for (const auto& m : c.machines) a.ir += dump(m) + "\n";
  for (const auto& [name, text] : generate_c(c, p.model ? *p.model : DeploymentModel{}).files) {
    a.c += "== " + name + "\n" + text;
  }
  if (p.model) a.trace = format_trace(run(c, *p.model, parse_stimuli(p.stimuli, c.machines), 2'000'000).trace);
  return a;
}

std::string shuffled_equations(const std::string& source, std::mt19937_64& rng) {
  Program prog = parse_source(source);
  for (auto& s : prog.steps) {
    if (s.body) std::shuffle(s.body->begin(), s.body->end(), rng);
  }
  return pretty(prog);
}

std::string shuffled_nodes(const std::string& source, std::mt19937_64& rng) {
  Program prog = parse_source(source);
  std::shuffle(prog.nodes.begin(), prog.nodes.end(), rng);
  return pretty(prog);
}

Verdict determinism() {
  std::mt19937_64 rng(2024);
  int programs = 0, variants = 0;
  std::vector<std::string> failures;
  for (const auto& p : mtest::corpus()) {
    ++programs;
    Artefacts base = artefacts(p);
    Artefacts again = artefacts(p);
    if (base.ir != again.ir || base.c != again.c || base.trace != again.trace) failures.push_back(p.name + " rerun");
    for (int k = 0; k < 5; ++k) {
      mtest::CorpusProgram q = p;
      q.source = shuffled_equations(p.source, rng);
      Artefacts v = artefacts(q);
      ++variants;
      if (v.ir != base.ir || v.c != base.c || v.trace != base.trace) {
        failures.push_back(p.name + " equation order");
      }
      if (!p.model) continue;
      q = p;
      q.source = shuffled_nodes(p.source, rng);
      ++variants;
      if (mtest::normalise_instants(artefacts(q).trace) != mtest::normalise_instants(base.trace)) {
        failures.push_back(p.name + " node order");
      }
    }
  }
  std::ostringstream d;
  d << programs << " programs, " << variants << " permuted variants";
  for (const auto& f : failures) d << "; differs: " << f;
  return {failures.empty(), d.str()};
}

// ---- overflow --------------------------------------------------------------------

// Instant of the first send into a full `fast`, from the periods and the
// capacity alone: the producer sends every 10ms and the consumer takes one
// item per 300ms release whose stamp has arrived.
Micros first_overflow(std::int64_t capacity, Micros producer, Micros consumer) {
  std::deque<Micros> queue;
  for (Micros t = 0;; t += std::gcd(producer, consumer)) {
    if (t % consumer == 0 && !queue.empty() && queue.front() <= t) queue.pop_front();
    if (t % producer == 0) {
      if (static_cast<std::int64_t>(queue.size()) == capacity) return t;
      queue.push_back(t + producer);
    }
  }
}

Verdict overflow() {
  auto p = mtest::corpus_program("overflow");
  Compilation c = mtest::compile(p);
  SimResult r = run(c, *p.model, {}, 2'000'000);
  Micros want = first_overflow(p.model->channels.at("fast").capacity, 10'000, 300'000);
  const TraceEvent* last = r.trace.empty() ? nullptr : &r.trace.back();
  bool ok = r.overflowed && last && last->kind == TraceEvent::Kind::Overflow && last->channel == "fast" &&
            last->time == want;
  std::string d = "expected OVERFLOW fast at T=" + std::to_string(want) + ", got " +
                  (last ? format_event(*last) : std::string("empty trace"));
  return {ok, d};
}

const std::vector<std::pair<std::string, std::function<Verdict()>>> kCriteria = {
    {"edge_end_to_end", edge_end_to_end},
    {"memory_operators", memory_operators},
    {"worked_ooir", worked_ooir},
    {"causality_init", causality_init},
    {"oracle_equivalence", oracle_equivalence},
    {"determinism", determinism},
    {"overflow", overflow},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> selected(argv + 1, argv + argc);
  for (const auto& s : selected) {
    bool known = std::any_of(kCriteria.begin(), kCriteria.end(), [&](const auto& c) { return c.first == s; });
    if (!known) {
      std::fprintf(stderr, "unknown criterion '%s'\n", s.c_str());
      return 2;
    }
  }
  bool all = true;
  for (const auto& [name, check] : kCriteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), name) == selected.end()) continue;
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    all &= v.pass;
  }
  return all ? 0 : 1;
}
