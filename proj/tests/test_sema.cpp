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

#include <algorithm>
#include <random>

#include "mimosa/builtins.hpp"
#include "mimosa/parser.hpp"
#include "mimosa/pipeline.hpp"
#include "mimosa/pretty.hpp"
#include "mimosa/sema.hpp"
#include "support.hpp"

using namespace mimosa;

namespace {

std::optional<CompileError> analyse_error(const std::string& source,
                                          const DeploymentModel* model = nullptr) {
  try {
    analyse(parse_source(source), model);
  } catch (const CompileError& e) {
    return e;
  }
  return std::nullopt;
}

bool has_message(const CompileError& e, const std::string& needle) {
  for (const auto& d : e.diagnostics()) {
    if (d.message.find(needle) != std::string::npos) return true;
  }
  return false;
}

std::vector<std::string> bound_order(const StepDecl& step) {
  std::vector<std::string> out;
  for (const auto& eq : *step.body) out.push_back(pretty(eq));
  return out;
}

void collect_types(const Expr& e, std::vector<Type>& out) {
  if (e.type) out.push_back(*e.type);
  for (const auto& a : e.args) collect_types(a, out);
}

const char* kEdgeModel =
    "[channel a]\nsize = 16\n[channel b]\nsize = 16\n"
    "[node button]\npriority = 3\nstack = 1024\n"
    "[node edge]\npriority = 2\nstack = 1024\n"
    "[node led]\npriority = 1\nstack = 1024\n";

}  // namespace

TEST(Infer, IdentityIsPolymorphic) {
  TypedProgram t = infer(parse_source("step id (a : 'a) --> (b : 'a) { b = a; }"));
  const TypeScheme& s = t.schemes.at("id");
  ASSERT_EQ(s.vars.size(), 1u);
  EXPECT_EQ(s.input, Type::variable(s.vars[0]));
  EXPECT_EQ(s.output, s.input);
}

TEST(Infer, EdgeSignature) {
  TypedProgram t = infer(parse_source(mtest::read_file(mtest::corpus_path("edge.mim"))));
  EXPECT_EQ(t.schemes.at("edge").input, Type::boolean());
  EXPECT_EQ(t.schemes.at("edge").output, Type::option(Type::boolean()));
  EXPECT_EQ(t.schemes.at("toggle").output, Type::unit());
}

TEST(Infer, IntAndBoolMismatch) {
  auto e = analyse_error("step f () --> (x : bool) { x = 1 && true; }");
  ASSERT_TRUE(e);
  EXPECT_EQ(e->phase(), Phase::Types);
}

TEST(Infer, OperatorResolution) {
  TypedProgram t = infer(parse_source("step f (x : float) --> (y : float, b : bool) { y = x + 1.0; b = !(x < y); }"));
  std::vector<std::string> callees;
  std::function<void(const Expr&)> walk = [&](const Expr& e) {
    if (e.kind == ExprKind::App) callees.push_back(e.name);
    for (const auto& a : e.args) walk(a);
  };
  for (const auto& eq : *t.program.find_step("f")->body) walk(eq.rhs);
  std::sort(callees.begin(), callees.end());
  EXPECT_EQ(callees, (std::vector<std::string>{"add_float", "lt_float", "not_bool"}));
}

TEST(Infer, UnconstrainedOperandDefaultsToInt) {
  TypedProgram t = infer(parse_source("step f () --> (b : bool) { b = 1 < 2; }"));
  EXPECT_EQ(t.program.find_step("f")->body->at(0).rhs.name, "lt_int");
}

TEST(Infer, RejectsUnknownsDuplicatesAndRecursion) {
  EXPECT_TRUE(has_message(*analyse_error("step f (x : int) --> (y : int) { y = g x; }"), "unknown"));
  EXPECT_TRUE(analyse_error("step f (x : int) --> (y : int) { y = x; y = x; }"));
  EXPECT_TRUE(analyse_error("step f () --> () { } step f () --> () { }"));
  EXPECT_TRUE(has_message(
      *analyse_error("step f (x : int) --> (y : int) { y = g x; } step g (x : int) --> (y : int) { y = f x; }"),
      "recursive"));
  EXPECT_TRUE(analyse_error("step f (x : int) --> (y : int) { z = x; }"));
}

TEST(Infer, OccursCheck) {
  auto e = analyse_error("step f (x : 'a) --> (y : 'a) { y = (x, x); }");
  ASSERT_TRUE(e);
  EXPECT_EQ(e->phase(), Phase::Types);
}

TEST(Infer, StableUnderEquationPermutation) {
  const std::string base = "step f (a : int, b : bool) --> (x : int, y : bool, z : float) {\n";
  std::vector<std::string> eqs = {"x = a + 1;", "y = b && x > 0;", "z = float_of_int x * 0.5;"};
  std::sort(eqs.begin(), eqs.end());
  std::optional<TypeScheme> first;
  do {
    std::string src = base;
    for (const auto& e : eqs) src += e + "\n";
    TypedProgram t = infer(parse_source(src + "}"));
    const TypeScheme& s = t.schemes.at("f");
    if (!first) first = s;
    EXPECT_EQ(s.input, first->input);
    EXPECT_EQ(s.output, first->output);
  } while (std::next_permutation(eqs.begin(), eqs.end()));
}

TEST(Causality, EdgeOrdersPreInFirst) {
  Program p = parse_source(mtest::read_file(mtest::corpus_path("edge.mim")));
  TypedProgram t = infer(p);
  StepDecl edge = *t.program.find_step("edge");
  std::swap(edge.body->at(0), edge.body->at(1));
  order_equations(edge);
  EXPECT_EQ(edge.body->at(0).lhs.name, "pre_in");
  EXPECT_EQ(edge.body->at(1).lhs.name, "out");
}

TEST(Causality, SelfDependencyIsACycle) {
  auto e = analyse_error("step f () --> (x : int) { x = x + 1; }");
  ASSERT_TRUE(e);
  EXPECT_EQ(e->phase(), Phase::Causality);
  EXPECT_TRUE(has_message(*e, "[x]"));
}

TEST(Causality, CounterIsAccepted) {
  EXPECT_FALSE(analyse_error("step count () --> (n : int) { n = 0 -> pre n + 1; }"));
}

TEST(Causality, MutualCycle) {
  auto e = analyse_error("step f (a : int) --> (x : int) { x = y + a; y = x; }");
  ASSERT_TRUE(e);
  EXPECT_TRUE(has_message(*e, "[x, y]"));
}

TEST(Causality, OrderIsPermutationInvariant) {
  std::vector<std::string> eqs = {"a = x + 1;", "b = a * 2;", "c = b - a;", "d = pre c;", "e = 0 -> d;",
                                  "o = e + c;"};
  std::sort(eqs.begin(), eqs.end());
  std::optional<std::vector<std::string>> first;
  std::mt19937_64 rng(7);
  for (int round = 0; round < 60; ++round) {
    std::shuffle(eqs.begin(), eqs.end(), rng);
    std::string src = "step f (x : int) --> (o : int) {\n";
    for (const auto& e : eqs) src += e + "\n";
    TypedProgram t = infer(parse_source(src + "}"));
    StepDecl step = *t.program.find_step("f");
    auto before = bound_order(step);
    order_equations(step);
    auto after = bound_order(step);
    auto sorted_before = before, sorted_after = after;
    std::sort(sorted_before.begin(), sorted_before.end());
    std::sort(sorted_after.begin(), sorted_after.end());
    EXPECT_EQ(sorted_before, sorted_after);
    if (!first) first = after;
    EXPECT_EQ(after, *first);
  }
}

TEST(Init, PreOutputRejected) {
  auto e = analyse_error("step f (in : int) --> (out : int) { out = pre in; }");
  ASSERT_TRUE(e);
  EXPECT_EQ(e->phase(), Phase::Init);
}

TEST(Init, EdgeAccepted) {
  EXPECT_FALSE(analyse_error(mtest::read_file(mtest::corpus_path("edge.mim"))));
}

TEST(Init, ArrowGuardsPreVariable) {
  EXPECT_FALSE(analyse_error("step f (in : int) --> (out : int) { x = pre in; y = in -> x; out = y; }"));
}

TEST(Init, UndefinedArgumentConditionAndScrutinee) {
  const char* prelude = "step g (x : int) --> (y : int) { y = x; }\n";
  EXPECT_TRUE(analyse_error(std::string(prelude) +
                            "step f (in : int) --> (out : int) { x = g (pre in); out = 0 -> x; }"));
  EXPECT_TRUE(analyse_error("step f (in : bool) --> (out : int) { out = if pre in then 1 else 2; }"));
  EXPECT_TRUE(analyse_error("step f (in : int?) --> (out : int) { out = either pre in or 0; }"));
}

// Values of pre operands and right operands of -> are not observed at the
// first cycle.
TEST(Init, UnobservedPositionsNotChecked) {
  const char* prelude = "step g (x : int) --> (y : int) { y = x; }\n";
  EXPECT_FALSE(analyse_error(std::string(prelude) +
                             "step f (in : int) --> (out : int) { out = 0 -> g (pre in); }"));
  EXPECT_FALSE(analyse_error(
      "step f (in : bool) --> (out : int) { out = 0 -> pre (if pre in then 1 else 2); }"));
  EXPECT_FALSE(analyse_error("step f (in : int?) --> (out : int) { out = 0 fby (either pre in or 0); }"));
}

TEST(Init, ArrowOfPreAlwaysAccepted) {
  for (const char* e1 : {"in", "1", "in * 2"}) {
    for (const char* e2 : {"in", "in + 1", "pre in"}) {
      std::string src = std::string("step f (in : int) --> (out : int) { out = ") + e1 + " -> pre (" + e2 + "); }";
      EXPECT_FALSE(analyse_error(src)) << src;
    }
  }
}

TEST(Init, Classes) {
  Program p = parse_source("step f (in : int) --> (out : int) { a = pre in; b = in -> a; c = a + 1; out = b; }");
  auto cls = init_classes(p.steps[0]);
  EXPECT_EQ(cls.at("in"), InitClass::I);
  EXPECT_EQ(cls.at("a"), InitClass::U);
  EXPECT_EQ(cls.at("b"), InitClass::I);
  EXPECT_EQ(cls.at("c"), InitClass::U);
}

TEST(Mono, CopiesPerInstantiation) {
  TypedProgram t = analyse(parse_source(
      "step id (a : 'a) --> (b : 'a) { b = a; }\n"
      "step use (x : int, p : bool) --> (y : int, q : bool) { y = id x; q = id p; }"),
      nullptr);
  EXPECT_TRUE(t.program.find_step("id__i"));
  EXPECT_TRUE(t.program.find_step("id__b"));
  EXPECT_FALSE(t.program.find_step("id"));
}

TEST(Mono, MonomorphicProgramUnchanged) {
  Program p = parse_source(mtest::read_file(mtest::corpus_path("edge.mim")));
  TypedProgram typed = infer(p);
  TypedProgram mono = monomorphise(typed);
  ASSERT_EQ(mono.program.steps.size(), typed.program.steps.size());
  for (std::size_t i = 0; i < mono.program.steps.size(); ++i) {
    EXPECT_EQ(mono.program.steps[i].name, typed.program.steps[i].name);
  }
}

TEST(Mono, UnreachableStepDropped) {
  auto p = mtest::corpus_program("edge");
  std::string source = p.source + "\nstep id (a : 'a) --> (b : 'a) { b = a; }\n";
  Compilation c = compile_source(source, &*p.model);
  EXPECT_FALSE(c.typed.program.find_step("id"));
  EXPECT_FALSE(c.machine("id"));
}

TEST(Mono, OutputIsGroundAndClosed) {
  for (const auto& program : mtest::corpus()) {
    SCOPED_TRACE(program.name);
    Compilation c = mtest::compile(program);
    for (const auto& step : c.typed.program.steps) {
      if (!step.body) continue;
      for (const auto& eq : *step.body) {
        std::vector<Type> types;
        collect_types(eq.rhs, types);
        for (const auto& t : types) EXPECT_TRUE(is_ground(t)) << to_string(t);
        std::function<void(const Expr&)> callees = [&](const Expr& e) {
          if (e.kind == ExprKind::App && !find_builtin(e.name)) {
            EXPECT_TRUE(c.typed.program.find_step(e.name)) << e.name;
          }
          for (const auto& a : e.args) callees(a);
        };
        callees(eq.rhs);
      }
    }
  }
}

TEST(Mono, PolymorphicNodeRejected) {
  auto e = analyse_error(
      "step id (a : 'a) --> (b : 'a) { b = a; }\nchannel c : int\n"
      "step src () --> (x : int) { x = 1; }\nstep snk (x : int) --> () { }\n"
      "node p implements src () --> (c) every 10ms\nnode q implements id (c) --> () every 10ms");
  ASSERT_TRUE(e);
}

TEST(Network, EdgeWithModelOk) {
  DeploymentModel m = parse_model(kEdgeModel);
  EXPECT_FALSE(analyse_error(mtest::read_file(mtest::corpus_path("edge.mim")), &m));
}

TEST(Network, MultipleReaders) {
  std::string src = mtest::read_file(mtest::corpus_path("edge.mim")) +
                    "\nstep look (x : bool) --> () { }\nnode spy implements look (a) --> () every 50ms\n";
  auto e = analyse_error(src);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->phase(), Phase::Network);
  EXPECT_TRUE(has_message(*e, "a"));
}

TEST(Network, PortTypeMismatch) {
  std::string src = mtest::read_file(mtest::corpus_path("edge.mim"));
  auto pos = src.find("step toggle (in : bool)");
  src.replace(pos, std::string("step toggle (in : bool)").size(), "step toggle (in : int)");
  src.replace(src.find("if in then"), std::string("if in then").size(), "if in > 0 then");
  auto e = analyse_error(src);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->phase(), Phase::Network);
}

TEST(Network, ModelCoverage) {
  DeploymentModel m = parse_model("[channel a]\nsize = 16\n[node edge]\npriority = 1\nstack = 8\n");
  auto e = analyse_error(mtest::read_file(mtest::corpus_path("edge.mim")), &m);
  ASSERT_TRUE(e);
  EXPECT_TRUE(has_message(*e, "b"));
  EXPECT_TRUE(has_message(*e, "led"));
}

TEST(Network, UnwrittenAndUnreadChannels) {
  auto e = analyse_error(
      "channel c : int\nstep snk (x : int) --> () { }\nnode q implements snk (c) --> () every 10ms");
  ASSERT_TRUE(e);
  EXPECT_EQ(e->phase(), Phase::Network);
}

TEST(Diagnostics, SortedByPosition) {
  auto e = analyse_error(
      "channel c : int\nchannel d : int\nstep snk (x : int) --> () { }\n"
      "node q implements snk (d) --> () every 10ms\nnode r implements snk (c) --> () every 20ms");
  ASSERT_TRUE(e);
  const auto& ds = e->diagnostics();
  ASSERT_GE(ds.size(), 2u);
  for (std::size_t i = 1; i < ds.size(); ++i) {
    EXPECT_LE(std::tie(ds[i - 1].loc, ds[i - 1].phase), std::tie(ds[i].loc, ds[i].phase));
  }
}

TEST(Model, ParsesEntries) {
  DeploymentModel m = parse_model("[channel a]\nsize = 16\n# note\n[node edge]\npriority = 3\nstack = 1024\n");
  EXPECT_EQ(m.channels.at("a").capacity, 16);
  EXPECT_EQ(m.nodes.at("edge").priority, 3);
  EXPECT_EQ(m.nodes.at("edge").stack, 1024);
  EXPECT_EQ(parse_model(format_model(m)).channels.at("a").capacity, 16);
}

TEST(Model, Rejections) {
  EXPECT_THROW(parse_model("[channel a]\nsize = 0\n"), CompileError);
  EXPECT_THROW(parse_model("[channel a]\nsize = 1\n[channel a]\nsize = 2\n"), CompileError);
  EXPECT_THROW(parse_model("[node n]\npriority = 1\n"), CompileError);
  EXPECT_THROW(parse_model("[channel a]\nwidth = 3\n"), CompileError);
  EXPECT_THROW(parse_model("size = 3\n"), CompileError);
}
