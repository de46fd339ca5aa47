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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mimosa/ast.hpp"
#include "mimosa/diagnostics.hpp"

namespace mimosa {

enum class Tok {
  End,
  Ident,
  TickIdent,
  Underscore,
  IntLit,
  FloatLit,
  BoolLit,
  UnitLit,
  Duration,
  // keywords
  KwStep,
  KwChannel,
  KwNode,
  KwImplements,
  KwEvery,
  KwPre,
  KwFby,
  KwIf,
  KwThen,
  KwElse,
  KwEither,
  KwOr,
  KwSome,
  KwNone,
  // punctuation
  LongArrow,  // -->
  Arrow,      // ->
  Question,
  Assign,
  Colon,
  Semi,
  Comma,
  LBrace,
  RBrace,
  LParen,
  RParen,
  // operators
  Plus,
  Minus,
  Star,
  Slash,
  Bang,
  AndAnd,
  OrOr,
  Less,
  LessEq,
  Greater,
  GreaterEq,
  EqEq,
  NotEq,
};

const char* tok_name(Tok kind);

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLoc loc;
  std::int64_t int_value = 0;
  double float_value = 0.0;
  TimeUnit unit = TimeUnit::Millis;

  friend bool operator==(const Token& a, const Token& b) {
    return a.kind == b.kind && a.text == b.text && a.int_value == b.int_value &&
           a.float_value == b.float_value && a.unit == b.unit;
  }
};

/// Splits Mimosa source into tokens. The returned sequence does not contain
/// a terminating End token; an empty source yields an empty vector.
/// Throws CompileError (Phase::Lexer) on unknown characters, malformed
/// literals, identifiers starting with `__`, and unterminated comments.
std::vector<Token> tokenize(std::string_view source);

}  // namespace mimosa
