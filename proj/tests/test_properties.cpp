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
#include <regex>

#include "mimosa/codegen_c.hpp"
#include "mimosa/normir.hpp"
#include "mimosa/parser.hpp"
#include "mimosa/pretty.hpp"
#include "mimosa/simulator.hpp"
#include "support.hpp"

using namespace mimosa;

namespace {

// Every byte the pipeline produces for one program.
std::string artefacts(const mtest::CorpusProgram& p) {
  Compilation c = mtest::compile(p);
  std::string out;
  for (const auto& s : c.norm) out += dump(s) + "\n";
  for (const auto& m : c.machines) out += dump(m) + "\n";
  for (const auto& [name, text] : generate_c(c, p.model ? *p.model : DeploymentModel{}).files) {
    out += "== " + name + "\n" + text;
  }
  if (p.model) {
    Stimuli stim = parse_stimuli(p.stimuli, c.machines);
    out += format_trace(run(c, *p.model, stim, 2'000'000).trace);
  }
  return out;
}

// Source of `p` with the equations of every step shuffled.
std::string shuffle_equations(const std::string& source, std::mt19937_64& rng) {
  Program prog = parse_source(source);
  for (auto& s : prog.steps) {
    if (s.body) std::shuffle(s.body->begin(), s.body->end(), rng);
  }
  return pretty(prog);
}

// Random integer expression over `x` and `y`.
std::string random_expr(std::mt19937_64& rng, int depth, bool allow_pre) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 7);
  switch (pick(rng)) {
    case 0: return "x";
    case 1: return "y";
    case 2: return std::to_string(std::uniform_int_distribution<int>(-5, 5)(rng));
    case 3: return "(" + random_expr(rng, depth - 1, allow_pre) + " + " + random_expr(rng, depth - 1, allow_pre) + ")";
    case 4: return "(" + random_expr(rng, depth - 1, allow_pre) + " * " + random_expr(rng, depth - 1, allow_pre) + ")";
    case 5: return "(-" + random_expr(rng, depth - 1, allow_pre) + ")";
    case 6:
      return "(if " + random_expr(rng, depth - 1, allow_pre) + " < " + random_expr(rng, depth - 1, allow_pre) +
             " then " + random_expr(rng, depth - 1, allow_pre) + " else " +
             random_expr(rng, depth - 1, allow_pre) + ")";
    default:
      if (!allow_pre) return "(" + random_expr(rng, depth - 1, false) + " - 1)";
      return "(pre " + random_expr(rng, depth - 1, true) + ")";
  }
}

std::string int_step(const std::string& body) {
  return "step s (x : int, y : int) --> (o : int) { o = " + body + "; }";
}

}  // namespace

TEST(Determinism, RepeatedRuns) {
  for (const auto& p : mtest::corpus()) EXPECT_EQ(artefacts(p), artefacts(p)) << p.name;
}

TEST(Determinism, EquationPermutations) {
  std::mt19937_64 rng(7);
  for (const auto& p : mtest::corpus()) {
    SCOPED_TRACE(p.name);
    std::string base = artefacts(p);
    for (int k = 0; k < 5; ++k) {
      mtest::CorpusProgram q = p;
      q.source = shuffle_equations(p.source, rng);
      EXPECT_EQ(artefacts(q), base) << q.source;
    }
  }
}

TEST(Init, ArrowOfPreAlwaysAccepted) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    std::string src = int_step(random_expr(rng, 3, false) + " -> pre " + random_expr(rng, 3, true));
    EXPECT_NO_THROW(compile_source(src)) << src;
  }
}

TEST(Init, PreFreeAlwaysAccepted) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 200; ++k) {
    std::string src = int_step(random_expr(rng, 4, false));
    EXPECT_NO_THROW(compile_source(src)) << src;
  }
}

TEST(Init, BarePreRejected) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 50; ++k) {
    std::string src = int_step("pre " + random_expr(rng, 3, false));
    EXPECT_THROW(compile_source(src), CompileError) << src;
  }
}

TEST(CopyPropagation, Idempotent) {
  for (const auto& p : mtest::corpus()) {
    for (auto s : mtest::compile(p).norm) {
      std::string once = dump(s);
      copy_propagate(s);
      EXPECT_EQ(dump(s), once) << p.name << ":" << s.name;
    }
  }
}

// Every machine called from network.c is declared by a header it includes.
TEST(Network, ReferencedSymbolsDeclared) {
  static const std::regex call(R"(\b([A-Za-z_][A-Za-z0-9_]*)_(step|reset)\()");
  for (const auto& p : mtest::corpus()) {
    if (!p.model) continue;
    SCOPED_TRACE(p.name);
    CProject proj = generate_c(mtest::compile(p), *p.model);
    const std::string* net = proj.find("network.c");
    ASSERT_NE(net, nullptr);
    int calls = 0;
    for (auto it = std::sregex_iterator(net->begin(), net->end(), call); it != std::sregex_iterator(); ++it) {
      std::string machine = (*it)[1].str();
      std::string fn = machine + "_" + (*it)[2].str() + "(";
      ++calls;
      EXPECT_NE(net->find("#include \"" + machine + ".h\""), std::string::npos) << machine;
      const std::string* header = proj.find(machine + ".h");
      ASSERT_NE(header, nullptr) << machine;
      EXPECT_NE(header->find(fn), std::string::npos) << fn;
    }
    EXPECT_GT(calls, 0);
  }
}
