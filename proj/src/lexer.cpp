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

#include "mimosa/lexer.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <unordered_map>

namespace mimosa {

const char* tok_name(Tok kind) {
  switch (kind) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::TickIdent: return "type variable";
    case Tok::Underscore: return "'_'";
    case Tok::IntLit: return "integer literal";
    case Tok::FloatLit: return "float literal";
    case Tok::BoolLit: return "boolean literal";
    case Tok::UnitLit: return "'()'";
    case Tok::Duration: return "duration";
    case Tok::KwStep: return "'step'";
    case Tok::KwChannel: return "'channel'";
    case Tok::KwNode: return "'node'";
    case Tok::KwImplements: return "'implements'";
    case Tok::KwEvery: return "'every'";
    case Tok::KwPre: return "'pre'";
    case Tok::KwFby: return "'fby'";
    case Tok::KwIf: return "'if'";
    case Tok::KwThen: return "'then'";
    case Tok::KwElse: return "'else'";
    case Tok::KwEither: return "'either'";
    case Tok::KwOr: return "'or'";
    case Tok::KwSome: return "'Some'";
    case Tok::KwNone: return "'None'";
    case Tok::LongArrow: return "'-->'";
    case Tok::Arrow: return "'->'";
    case Tok::Question: return "'?'";
    case Tok::Assign: return "'='";
    case Tok::Colon: return "':'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Bang: return "'!'";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::Less: return "'<'";
    case Tok::LessEq: return "'<='";
    case Tok::Greater: return "'>'";
    case Tok::GreaterEq: return "'>='";
    case Tok::EqEq: return "'=='";
    case Tok::NotEq: return "'!='";
  }
  return "?";
}

namespace {

const std::unordered_map<std::string_view, Tok>& keywords() {
  static const std::unordered_map<std::string_view, Tok> table = {
      {"step", Tok::KwStep},     {"channel", Tok::KwChannel},
      {"node", Tok::KwNode},     {"implements", Tok::KwImplements},
      {"every", Tok::KwEvery},   {"pre", Tok::KwPre},
      {"fby", Tok::KwFby},       {"if", Tok::KwIf},
      {"then", Tok::KwThen},     {"else", Tok::KwElse},
      {"either", Tok::KwEither}, {"or", Tok::KwOr},
      {"Some", Tok::KwSome},     {"None", Tok::KwNone},
  };
  return table;
}

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  SourceLoc here() const { return {line_, col_}; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_trivia() {
    for (;;) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '(' && peek(1) == '*') {
        skip_comment();
      } else {
        return;
      }
    }
  }

  // (* ... *), nestable
  void skip_comment() {
    SourceLoc start = here();
    int depth = 0;
    do {
      if (pos_ >= src_.size()) fail(Phase::Lexer, start, "unterminated comment");
      if (peek() == '(' && peek(1) == '*') {
        ++depth;
        advance(2);
      } else if (peek() == '*' && peek(1) == ')') {
        --depth;
        advance(2);
      } else {
        advance();
      }
    } while (depth > 0);
  }

  Token make(Tok kind, SourceLoc loc, std::size_t start) const {
    Token t;
    t.kind = kind;
    t.loc = loc;
    t.text = std::string(src_.substr(start, pos_ - start));
    return t;
  }

  Token next() {
    SourceLoc loc = here();
    std::size_t start = pos_;
    char c = peek();

    if (ident_start(c)) return word(loc, start);
    if (std::isdigit(static_cast<unsigned char>(c))) return number(loc, start);
    if (c == '\'') {
      advance();
      if (!ident_start(peek())) fail(Phase::Lexer, loc, "expected type variable name after '''");
      while (ident_char(peek())) advance();
      return make(Tok::TickIdent, loc, start);
    }

    auto punct = [&](Tok kind, std::size_t len) {
      advance(len);
      return make(kind, loc, start);
    };
    switch (c) {
      case '-':
        if (peek(1) == '-' && peek(2) == '>') return punct(Tok::LongArrow, 3);
        if (peek(1) == '>') return punct(Tok::Arrow, 2);
        return punct(Tok::Minus, 1);
      case '(':
        if (peek(1) == ')') return punct(Tok::UnitLit, 2);
        return punct(Tok::LParen, 1);
      case ')': return punct(Tok::RParen, 1);
      case '{': return punct(Tok::LBrace, 1);
      case '}': return punct(Tok::RBrace, 1);
      case '?': return punct(Tok::Question, 1);
      case ':': return punct(Tok::Colon, 1);
      case ';': return punct(Tok::Semi, 1);
      case ',': return punct(Tok::Comma, 1);
      case '+': return punct(Tok::Plus, 1);
      case '*': return punct(Tok::Star, 1);
      case '/': return punct(Tok::Slash, 1);
      case '!': return peek(1) == '=' ? punct(Tok::NotEq, 2) : punct(Tok::Bang, 1);
      case '=': return peek(1) == '=' ? punct(Tok::EqEq, 2) : punct(Tok::Assign, 1);
      case '<': return peek(1) == '=' ? punct(Tok::LessEq, 2) : punct(Tok::Less, 1);
      case '>': return peek(1) == '=' ? punct(Tok::GreaterEq, 2) : punct(Tok::Greater, 1);
      case '&':
        if (peek(1) == '&') return punct(Tok::AndAnd, 2);
        break;
      case '|':
        if (peek(1) == '|') return punct(Tok::OrOr, 2);
        break;
      default: break;
    }
    std::string shown = std::isprint(static_cast<unsigned char>(c))
                            ? std::string(1, c)
                            : "\\x" + std::to_string(static_cast<unsigned char>(c));
    fail(Phase::Lexer, loc, "unknown character '" + shown + "'");
  }

  Token word(SourceLoc loc, std::size_t start) {
    while (ident_char(peek())) advance();
    Token t = make(Tok::Ident, loc, start);
    if (t.text == "_") {
      t.kind = Tok::Underscore;
    } else if (t.text.rfind("__", 0) == 0) {
      fail(Phase::Lexer, loc, "identifiers may not begin with '__': " + t.text);
    } else if (t.text == "true" || t.text == "false") {
      t.kind = Tok::BoolLit;
      t.int_value = t.text == "true";
    } else if (auto it = keywords().find(t.text); it != keywords().end()) {
      t.kind = it->second;
    }
    return t;
  }

  Token number(SourceLoc loc, std::size_t start) {
    while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    bool is_float = false;
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      is_float = true;
      advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek(1))) ||
         ((peek(1) == '+' || peek(1) == '-') &&
          std::isdigit(static_cast<unsigned char>(peek(2)))))) {
      is_float = true;
      advance(2);
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    }
    std::string digits(src_.substr(start, pos_ - start));

    if (is_float) {
      if (ident_char(peek())) fail(Phase::Lexer, loc, "malformed float literal");
      Token t = make(Tok::FloatLit, loc, start);
      t.float_value = std::strtod(digits.c_str(), nullptr);
      return t;
    }

    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{}) fail(Phase::Lexer, loc, "integer literal out of range: " + digits);

    if (ident_start(peek())) {
      std::size_t suffix_start = pos_;
      while (ident_char(peek())) advance();
      std::string_view suffix = src_.substr(suffix_start, pos_ - suffix_start);
      TimeUnit unit;
      if (suffix == "us") {
        unit = TimeUnit::Micros;
      } else if (suffix == "ms") {
        unit = TimeUnit::Millis;
      } else if (suffix == "s") {
        unit = TimeUnit::Seconds;
      } else {
        fail(Phase::Lexer, loc, "unknown duration unit '" + std::string(suffix) + "'");
      }
      Token t = make(Tok::Duration, loc, start);
      t.int_value = value;
      t.unit = unit;
      return t;
    }

    Token t = make(Tok::IntLit, loc, start);
    t.int_value = value;
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace mimosa
