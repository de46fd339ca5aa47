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

#include "mimosa/diagnostics.hpp"

#include <algorithm>

namespace mimosa {

namespace {

std::string summary(const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (!out.empty()) out += "\n";
    out += d.render("<input>");
  }
  return out;
}

std::vector<Diagnostic> sorted(std::vector<Diagnostic> diagnostics) {
  std::stable_sort(diagnostics.begin(), diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     if (a.loc != b.loc) return a.loc < b.loc;
                     return a.phase < b.phase;
                   });
  return diagnostics;
}

}  // namespace

const char* phase_name(Phase phase) {
  switch (phase) {
    case Phase::Lexer: return "lexer";
    case Phase::Parser: return "parser";
    case Phase::Names: return "names";
    case Phase::Types: return "types";
    case Phase::Causality: return "causality";
    case Phase::Init: return "init";
    case Phase::Mono: return "mono";
    case Phase::Network: return "network";
    case Phase::Model: return "model";
    case Phase::Stimulus: return "stimulus";
    case Phase::Eval: return "eval";
  }
  return "?";
}

std::string Diagnostic::render(const std::string& file) const {
  std::string out = file;
  if (loc.line > 0) {
    out += ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column);
  }
  out += ": error: ";
  out += message;
  return out;
}

CompileError::CompileError(Diagnostic diagnostic)
    : CompileError(std::vector<Diagnostic>{std::move(diagnostic)}) {}

CompileError::CompileError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(summary(sorted(diagnostics))),
      diagnostics_(sorted(std::move(diagnostics))) {
  if (diagnostics_.empty()) {
    diagnostics_.push_back({Phase::Parser, {}, "unknown error"});
  }
}

void fail(Phase phase, SourceLoc loc, std::string message) {
  throw CompileError(Diagnostic{phase, loc, std::move(message)});
}

}  // namespace mimosa
