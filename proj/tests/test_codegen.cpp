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

#include <gtest/gtest.h>

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "mimosa/codegen_c.hpp"
#include "mimosa/ooir.hpp"
#include "support.hpp"

using namespace mimosa;
namespace fs = std::filesystem;

namespace {

const char* const kFlags = "-std=c99 -pedantic -Wall -Wextra -Werror";

CProject project(const mtest::CorpusProgram& p, const Compilation& c) {
  return generate_c(c, p.model ? *p.model : DeploymentModel{});
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::path(MIMOSA_SCRATCH_DIR) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& command) { return std::system(command.c_str()); }

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

std::string c_literal(const Value& v, const Type& t) {
  switch (t.kind) {
    case TypeKind::Unit: return "((unit_t)0)";
    case TypeKind::Bool: return v.b ? "true" : "false";
    case TypeKind::Int:
      if (v.i == INT64_MIN) return "(-INT64_C(9223372036854775807) - 1)";
      return "INT64_C(" + std::to_string(v.i) + ")";
    case TypeKind::Float: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", v.f);
      std::string s = buf;
      if (s.find_first_of(".e") == std::string::npos) s += ".0";
      return "(" + s + ")";
    }
    case TypeKind::Option:
      if (v.elems.empty()) return c_type_name(t) + "_none()";
      return c_type_name(t) + "_some(" + c_literal(v.elems[0], t.args[0]) + ")";
    case TypeKind::Tuple: {
      std::string out = c_type_name(t) + "_make(";
      for (std::size_t i = 0; i < v.elems.size(); ++i) {
        out += (i ? ", " : "") + c_literal(v.elems[i], t.args[i]);
      }
      return out + ")";
    }
    case TypeKind::Var: break;
  }
  return "?";
}

// Machines whose behaviour does not depend on external code.
std::set<std::string> closed_machines(const Compilation& c) {
  std::set<std::string> open;
  for (const auto& m : c.machines) {
    if (m.prototype) open.insert(m.name);
  }
  std::function<bool(const std::vector<Instr>&)> calls_open = [&](const std::vector<Instr>& is) {
    for (const auto& i : is) {
      if (i.kind == InstrKind::StepCall && open.count(i.machine)) return true;
      if (calls_open(i.body) || calls_open(i.alt)) return true;
    }
    return false;
  };
  // Callees precede callers, so one pass suffices.
  std::set<std::string> closed;
  for (const auto& m : c.machines) {
    if (m.prototype) continue;
    if (calls_open(m.step)) {
      open.insert(m.name);
    } else {
      closed.insert(m.name);
    }
  }
  return closed;
}

struct Streams {
  std::string driver;    // C statements
  std::string expected;  // interpreter output
};

// Drives `m` through random streams on both the interpreter and generated C.
void add_streams(const Compilation& c, const Machine& m, std::mt19937_64& rng, Streams& out) {
  MachineInterpreter interp(c.machines, nullptr);
  const std::string call_prefix = m.name + "_step(";
  const bool unit_in = m.in_type.kind == TypeKind::Unit;
  const bool unit_out = m.out_type.kind == TypeKind::Unit;
  std::ostringstream d;
  d << "  {\n";
  if (!m.stateless()) d << "    static struct " << m.name << "_state_t s;\n";
  for (int stream = 0; stream < 20; ++stream) {
    d << "    if (setjmp(fatal_env) == 0) {\n";
    if (!m.stateless()) d << "      " << m.name << "_reset(&s);\n";
    MachineState st = interp.create(m.name);
    interp.reset(m.name, st);
    for (int k = 0; k < 10; ++k) {
      Value in = mtest::random_value(m.in_type, rng);
      std::string args = unit_in ? "" : c_literal(in, m.in_type);
      if (!m.stateless()) args += std::string(unit_in ? "" : ", ") + "&s";
      if (unit_out) {
        d << "      " << call_prefix << args << ");\n      puts(\"()\");\n";
      } else {
        d << "      trace_value_" << c_type_name(m.out_type) << "(" << call_prefix << args
          << "));\n      putchar('\\n');\n";
      }
      try {
        out.expected += format_value(interp.step(m.name, st, in)) + "\n";
      } catch (const EvalError&) {
        out.expected += "FATAL\n";
        break;
      }
    }
    d << "    }\n    puts(\"--\");\n";
    out.expected += "--\n";
  }
  d << "  }\n";
  out.driver += d.str();
}

const char* const kDriverPrelude = R"C(#include <inttypes.h>
#include <setjmp.h>
#include <stdio.h>
#include <stdlib.h>

#include "types.h"

static jmp_buf fatal_env;

void runtime_fatal(const char *message)
{
  (void)message;
  puts("FATAL");
  longjmp(fatal_env, 1);
}

void trace_text(const char *text) { fputs(text, stdout); }
void trace_int(int64_t v) { printf("%" PRId64, v); }
void trace_float(double v) { printf("%.17g", v); }
)C";

}  // namespace

TEST(Types, Spelling) {
  EXPECT_EQ(c_type(Type::integer()), "int64_t");
  EXPECT_EQ(c_type(Type::floating()), "double");
  EXPECT_EQ(c_type(Type::unit()), "unit_t");
  EXPECT_EQ(c_type(Type::option(Type::boolean())), "struct opt_bool");
  EXPECT_EQ(c_type(Type::tuple({Type::integer(), Type::boolean()})), "struct tup2_int_bool");
  EXPECT_EQ(c_type_name(Type::option(Type::tuple({Type::integer(), Type::boolean()}))),
            "opt_tup2_int_bool");
}

TEST(Types, ComponentsBeforeComposites) {
  Compilation c = compile_source(
      "step f (x : int, b : bool) --> (o : (int, bool)?) { o = if b then Some (x, b) else None; }");
  std::string types = emit_types(c);
  auto tup = types.find("struct tup2_int_bool {");
  auto opt = types.find("struct opt_tup2_int_bool {");
  ASSERT_NE(tup, std::string::npos);
  ASSERT_NE(opt, std::string::npos);
  EXPECT_LT(tup, opt);
  EXPECT_TRUE(contains(types, "opt_tup2_int_bool_some("));
  EXPECT_TRUE(contains(types, "tup2_int_bool_make("));
}

TEST(Types, OptionStruct) {
  Compilation c = mtest::compile(mtest::corpus_program("edge"));
  std::string types = emit_types(c);
  EXPECT_TRUE(contains(types, "struct opt_bool {\n  bool is_some;\n  bool value;\n};"));
  EXPECT_TRUE(contains(types, "static inline struct opt_bool opt_bool_none(void)"));
}

TEST(Machines, EdgeSignatures) {
  Compilation c = mtest::compile(mtest::corpus_program("edge"));
  CUnit edge = emit_machine(*c.machine("edge"));
  EXPECT_TRUE(contains(edge.header, "void edge_reset(struct edge_state_t *self);"));
  EXPECT_TRUE(contains(edge.header, "struct opt_bool edge_step(bool v_in, struct edge_state_t *self);"));
  CUnit toggle = emit_machine(*c.machine("toggle"));
  EXPECT_TRUE(contains(toggle.header, "void toggle_step(bool v_in, struct toggle_state_t *self);"));
  EXPECT_TRUE(contains(toggle.header, "#include \"toggle_led.h\""));
}

TEST(Machines, PrototypeIsHeaderOnly) {
  Compilation c = mtest::compile(mtest::corpus_program("edge"));
  CUnit proto = emit_machine(*c.machine("toggle_led"));
  EXPECT_TRUE(proto.source.empty());
  EXPECT_TRUE(contains(proto.header, "struct toggle_led_state_t {\n  void *ext;\n};"));
  EXPECT_TRUE(contains(proto.header, "void toggle_led_step(struct toggle_led_state_t *self);"));
  CUnit poll = emit_machine(*c.machine("poll"));
  EXPECT_TRUE(contains(poll.header, "bool poll_step(struct poll_state_t *self);"));
}

TEST(Machines, StatelessIsPlainFunction) {
  Compilation c = mtest::compile(mtest::corpus_program("poly"));
  const Machine* id = c.machine("id__i");
  ASSERT_NE(id, nullptr);
  ASSERT_TRUE(id->stateless());
  CUnit unit = emit_machine(*id);
  EXPECT_FALSE(contains(unit.header, "_state_t"));
  EXPECT_FALSE(contains(unit.header, "_reset"));
  EXPECT_TRUE(contains(unit.header, "int64_t id__i_step(int64_t v_a);"));
}

TEST(Project, FileOrder) {
  CProject p = project(mtest::corpus_program("edge"), mtest::compile(mtest::corpus_program("edge")));
  std::vector<std::string> names;
  for (const auto& [n, text] : p.files) names.push_back(n);
  ASSERT_GE(names.size(), 3u);
  EXPECT_EQ(names[0], "runtime.h");
  EXPECT_EQ(names[1], "types.h");
  EXPECT_EQ(names.back(), "network.c");
  EXPECT_NE(p.find("toggle_led.h"), nullptr);
  EXPECT_EQ(p.find("toggle_led.c"), nullptr);
}

TEST(Project, NoNetworkWithoutNodes) {
  auto prog = mtest::corpus_program("arith");
  CProject p = project(prog, mtest::compile(prog));
  EXPECT_EQ(p.find("network.c"), nullptr);
}

TEST(Project, NetworkSkeleton) {
  CProject p = project(mtest::corpus_program("edge"), mtest::compile(mtest::corpus_program("edge")));
  const std::string& net = *p.find("network.c");
  for (const char* needle :
       {"static queue_t a;", "static queue_t a_stamps;", "static const timestamp_t edge_period = 50000;",
        "#define A_SIZE 16", "a = create_queue(A_SIZE, sizeof(bool));",
        "spawn_task(\"button\", button_task, 3, 1024);", "check_avail(now, a_stamps)",
        "runtime_overflow(\"b\", now)", "start_scheduler();", "\"SKIP\"", "\"FIRE\""}) {
    EXPECT_TRUE(contains(net, needle)) << needle;
  }
  // Tasks appear in declaration order.
  EXPECT_LT(net.find("button_task(void)"), net.find("edge_task(void)"));
  EXPECT_LT(net.find("edge_task(void)"), net.find("led_task(void)"));
}

TEST(Project, Deterministic) {
  for (const auto& prog : mtest::corpus()) {
    CProject a = project(prog, mtest::compile(prog));
    CProject b = project(prog, mtest::compile(prog));
    EXPECT_EQ(a.files, b.files) << prog.name;
  }
}

// Every generated translation unit compiles cleanly, with and without tracing.
TEST(Compile, CorpusIsWarningFree) {
  for (const auto& prog : mtest::corpus()) {
    SCOPED_TRACE(prog.name);
    fs::path dir = scratch("compile_" + prog.name);
    CProject p = project(prog, mtest::compile(prog));
    write_project(p, dir);
    for (const auto& [name, text] : p.files) {
      if (fs::path(name).extension() != ".c") continue;
      for (const char* trace : {"", " -DMIMOSA_TRACE"}) {
        std::string cmd = std::string(MIMOSA_C_COMPILER) + " " + kFlags + trace + " -c -o " +
                          (dir / (name + ".o")).string() + " " + (dir / name).string();
        EXPECT_EQ(run(cmd), 0) << cmd;
      }
    }
  }
}

// Extern-free machines run in C agree with the interpreter step by step.
TEST(Compile, StepsAgreeWithInterpreter) {
  int machines = 0;
  for (const auto& prog : mtest::corpus()) {
    SCOPED_TRACE(prog.name);
    Compilation c = mtest::compile(prog);
    std::set<std::string> closed = closed_machines(c);
    if (closed.empty()) continue;
    fs::path dir = scratch("diff_" + prog.name);
    CProject p = project(prog, c);
    write_project(p, dir);
    std::mt19937_64 rng(std::hash<std::string>{}(prog.name));
    Streams streams;
    std::string includes, sources;
    for (const auto& m : c.machines) {
      if (!closed.count(m.name)) continue;
      includes += "#include \"" + m.name + ".h\"\n";
      sources += " " + (dir / (m.name + ".c")).string();
      add_streams(c, m, rng, streams);
      ++machines;
    }
    std::ofstream(dir / "driver.c") << kDriverPrelude << includes << "\nint main(void)\n{\n"
                                    << streams.driver << "  return 0;\n}\n";
    fs::path exe = dir / "driver";
    std::string build = std::string(MIMOSA_C_COMPILER) + " -std=c99 -Wall -DMIMOSA_TRACE -I" +
                        dir.string() + " -o " + exe.string() + " " + (dir / "driver.c").string() +
                        sources;
    ASSERT_EQ(run(build), 0) << build;
    ASSERT_EQ(run(exe.string() + " > " + (dir / "out.txt").string()), 0);
    EXPECT_EQ(mtest::read_file((dir / "out.txt").string()), streams.expected);
  }
  EXPECT_GE(machines, 10);
}
