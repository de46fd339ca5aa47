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

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mimosa {

struct SourceLoc {
  int line = 0;
  int column = 0;

  friend bool operator==(const SourceLoc&, const SourceLoc&) = default;
  friend auto operator<=>(const SourceLoc&, const SourceLoc&) = default;
};

enum class Phase {
  Lexer,
  Parser,
  Names,
  Types,
  Causality,
  Init,
  Mono,
  Network,
  Model,
  Stimulus,
  Eval,
};

const char* phase_name(Phase phase);

struct Diagnostic {
  Phase phase = Phase::Parser;
  SourceLoc loc;
  std::string message;

  /// `file:line:col: error: message`, or without the position when loc is unset.
  std::string render(const std::string& file) const;
};

/// Thrown by every pipeline phase. Carries one or more diagnostics, sorted by
/// source position then phase.
class CompileError : public std::runtime_error {
 public:
  explicit CompileError(Diagnostic diagnostic);
  explicit CompileError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
  Phase phase() const { return diagnostics_.front().phase; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Raised by interpreters when IR invariants are broken at run time.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] void fail(Phase phase, SourceLoc loc, std::string message);

}  // namespace mimosa
