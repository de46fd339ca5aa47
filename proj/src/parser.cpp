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

#include "mimosa/parser.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace mimosa {

namespace {

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : toks_(tokens) {}

  Program program() {
    Program prog;
    while (!at(Tok::End)) {
      switch (cur().kind) {
        case Tok::KwStep: prog.steps.push_back(step()); break;
        case Tok::KwChannel: prog.channels.push_back(channel()); break;
        case Tok::KwNode: prog.nodes.push_back(node()); break;
        default: unexpected({Tok::KwStep, Tok::KwChannel, Tok::KwNode});
      }
      accept(Tok::Semi);
    }
    return prog;
  }

  Expr standalone_expr() {
    Expr e = expr();
    expect(Tok::End);
    return e;
  }

  Type standalone_type() {
    Type t = type();
    expect(Tok::End);
    return t;
  }

 private:
  // ---- token helpers -------------------------------------------------------

  const Token& cur() const {
    static const Token end_token{};
    if (pos_ < toks_.size()) return toks_[pos_];
    return end_token;
  }

  SourceLoc end_loc() const { return toks_.empty() ? SourceLoc{1, 1} : toks_.back().loc; }

  SourceLoc loc() const { return pos_ < toks_.size() ? toks_[pos_].loc : end_loc(); }

  bool at(Tok kind) const { return cur().kind == kind; }

  const Token& peek_tok(std::size_t ahead) const {
    static const Token end_token{};
    return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : end_token;
  }

  bool accept(Tok kind) {
    if (!at(kind)) return false;
    ++pos_;
    return true;
  }

  const Token& expect(Tok kind) {
    if (!at(kind)) unexpected({kind});
    return toks_[pos_++];
  }

  [[noreturn]] void unexpected(std::initializer_list<Tok> expected) const {
    std::string msg = "syntax error: expected ";
    std::size_t i = 0;
    for (Tok t : expected) {
      if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += tok_name(t);
      ++i;
    }
    msg += ", found ";
    msg += at(Tok::End) ? std::string(tok_name(Tok::End)) : "'" + cur().text + "'";
    fail(Phase::Parser, loc(), msg);
  }

  // ---- declarations --------------------------------------------------------

  StepDecl step() {
    StepDecl s;
    s.loc = loc();
    expect(Tok::KwStep);
    s.name = expect(Tok::Ident).text;
    s.inputs = signature();
    expect(Tok::LongArrow);
    s.outputs = signature();
    if (accept(Tok::LBrace)) {
      std::vector<Equation> eqs;
      while (!accept(Tok::RBrace)) eqs.push_back(equation());
      s.body = std::move(eqs);
    }
    return s;
  }

  std::vector<Pattern> signature() {
    std::vector<Pattern> items;
    if (accept(Tok::UnitLit)) return items;
    expect(Tok::LParen);
    do {
      items.push_back(signature_item());
    } while (accept(Tok::Comma));
    expect(Tok::RParen);
    return items;
  }

  Pattern signature_item() {
    SourceLoc l = loc();
    Pattern p;
    if (accept(Tok::LParen)) {
      std::vector<Pattern> elems;
      do {
        elems.push_back(signature_item());
      } while (accept(Tok::Comma));
      expect(Tok::RParen);
      p = elems.size() == 1 ? std::move(elems.front()) : Pattern::tuple(std::move(elems), l);
    } else if (accept(Tok::Underscore)) {
      p = Pattern::wildcard(l);
    } else if (at(Tok::Ident)) {
      p = Pattern::var(cur().text, l);
      ++pos_;
    } else {
      unexpected({Tok::Ident, Tok::Underscore, Tok::LParen});
    }
    if (p.kind != PatternKind::Tuple && accept(Tok::Colon)) p.annotation = type();
    return p;
  }

  ChannelDecl channel() {
    ChannelDecl c;
    c.loc = loc();
    expect(Tok::KwChannel);
    c.name = expect(Tok::Ident).text;
    expect(Tok::Colon);
    c.element = type();
    return c;
  }

  NodeDecl node() {
    NodeDecl n;
    n.loc = loc();
    expect(Tok::KwNode);
    n.name = expect(Tok::Ident).text;
    expect(Tok::KwImplements);
    n.step = expect(Tok::Ident).text;
    n.inputs = ports();
    expect(Tok::LongArrow);
    n.outputs = ports();
    expect(Tok::KwEvery);
    const Token& d = expect(Tok::Duration);
    std::int64_t scale = micros_per(d.unit);
    if (d.int_value > std::numeric_limits<std::int64_t>::max() / scale) {
      fail(Phase::Parser, d.loc, "period out of range");
    }
    n.period_us = d.int_value * scale;
    n.period_unit = d.unit;
    if (n.period_us <= 0) fail(Phase::Parser, d.loc, "node period must be positive");
    return n;
  }

  std::vector<Port> ports() {
    std::vector<Port> out;
    if (accept(Tok::UnitLit)) return out;
    expect(Tok::LParen);
    do {
      Port p;
      p.loc = loc();
      p.channel = expect(Tok::Ident).text;
      p.optional = accept(Tok::Question);
      out.push_back(std::move(p));
    } while (accept(Tok::Comma));
    expect(Tok::RParen);
    return out;
  }

  Type type() {
    Type t = type_atom();
    while (accept(Tok::Question)) t = Type::option(std::move(t));
    return t;
  }

  Type type_atom() {
    if (accept(Tok::UnitLit)) return Type::unit();
    if (at(Tok::TickIdent)) {
      Type t = Type::variable(cur().text);
      ++pos_;
      return t;
    }
    if (accept(Tok::LParen)) {
      std::vector<Type> elems;
      do {
        elems.push_back(type());
      } while (accept(Tok::Comma));
      expect(Tok::RParen);
      return elems.size() == 1 ? std::move(elems.front()) : Type::tuple(std::move(elems));
    }
    if (at(Tok::Ident)) {
      const std::string& name = cur().text;
      Type t;
      if (name == "unit") {
        t = Type::unit();
      } else if (name == "bool") {
        t = Type::boolean();
      } else if (name == "int") {
        t = Type::integer();
      } else if (name == "float") {
        t = Type::floating();
      } else {
        fail(Phase::Parser, loc(), "unknown type '" + name + "'");
      }
      ++pos_;
      return t;
    }
    unexpected({Tok::Ident, Tok::TickIdent, Tok::LParen});
  }

  // ---- equations and patterns ---------------------------------------------

  Equation equation() {
    Equation eq;
    eq.loc = loc();
    eq.lhs = pattern();
    expect(Tok::Assign);
    eq.rhs = expr();
    expect(Tok::Semi);
    return eq;
  }

  Pattern pattern() {
    SourceLoc l = loc();
    std::vector<Pattern> elems;
    elems.push_back(pattern_atom());
    while (accept(Tok::Comma)) elems.push_back(pattern_atom());
    if (elems.size() == 1) return std::move(elems.front());
    return Pattern::tuple(std::move(elems), l);
  }

  Pattern pattern_atom() {
    SourceLoc l = loc();
    if (accept(Tok::Underscore)) return Pattern::wildcard(l);
    if (at(Tok::Ident)) {
      Pattern p = Pattern::var(cur().text, l);
      ++pos_;
      return p;
    }
    if (accept(Tok::LParen)) {
      Pattern p = pattern();
      expect(Tok::RParen);
      return p;
    }
    unexpected({Tok::Ident, Tok::Underscore, Tok::LParen});
  }

  // ---- expressions ---------------------------------------------------------
  //
  // lowest to highest: tuple, ->, fby, ||, &&, comparison, additive,
  // multiplicative, unary, application, atom.

  Expr expr() {
    SourceLoc l = loc();
    Expr first = arrow();
    if (!at(Tok::Comma)) return first;
    std::vector<Expr> elems;
    elems.push_back(std::move(first));
    while (accept(Tok::Comma)) elems.push_back(arrow());
    return Expr::tuple(std::move(elems), l);
  }

  Expr arrow() {
    SourceLoc l = loc();
    Expr lhs = fby();
    if (accept(Tok::Arrow)) return Expr::binary(ExprKind::Arrow, std::move(lhs), arrow(), l);
    return lhs;
  }

  Expr fby() {
    SourceLoc l = loc();
    Expr lhs = logical_or();
    if (accept(Tok::KwFby)) return Expr::binary(ExprKind::Fby, std::move(lhs), fby(), l);
    return lhs;
  }

  Expr infix(std::string op, Expr lhs, Expr rhs, SourceLoc l) {
    std::vector<Expr> pair;
    pair.push_back(std::move(lhs));
    pair.push_back(std::move(rhs));
    return Expr::app(std::move(op), Expr::tuple(std::move(pair), l), l);
  }

  Expr logical_or() {
    SourceLoc l = loc();
    Expr lhs = logical_and();
    while (accept(Tok::OrOr)) lhs = infix("||", std::move(lhs), logical_and(), l);
    return lhs;
  }

  Expr logical_and() {
    SourceLoc l = loc();
    Expr lhs = comparison();
    while (accept(Tok::AndAnd)) lhs = infix("&&", std::move(lhs), comparison(), l);
    return lhs;
  }

  Expr comparison() {
    SourceLoc l = loc();
    Expr lhs = additive();
    static const std::pair<Tok, const char*> ops[] = {
        {Tok::Less, "<"},       {Tok::LessEq, "<="}, {Tok::Greater, ">"},
        {Tok::GreaterEq, ">="}, {Tok::EqEq, "=="},   {Tok::NotEq, "!="},
    };
    for (const auto& [tok, sym] : ops) {
      if (accept(tok)) return infix(sym, std::move(lhs), additive(), l);
    }
    return lhs;
  }

  Expr additive() {
    SourceLoc l = loc();
    Expr lhs = multiplicative();
    for (;;) {
      if (accept(Tok::Plus)) {
        lhs = infix("+", std::move(lhs), multiplicative(), l);
      } else if (accept(Tok::Minus)) {
        lhs = infix("-", std::move(lhs), multiplicative(), l);
      } else {
        return lhs;
      }
    }
  }

  Expr multiplicative() {
    SourceLoc l = loc();
    Expr lhs = unary();
    for (;;) {
      if (accept(Tok::Star)) {
        lhs = infix("*", std::move(lhs), unary(), l);
      } else if (accept(Tok::Slash)) {
        lhs = infix("/", std::move(lhs), unary(), l);
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    SourceLoc l = loc();
    if (accept(Tok::Bang)) return Expr::app("!", unary(), l);
    if (accept(Tok::Minus)) return Expr::app(std::string(op::kNeg), unary(), l);
    if (accept(Tok::KwPre)) return Expr::unary(ExprKind::Pre, unary(), l);
    if (accept(Tok::KwSome)) return Expr::unary(ExprKind::SomeLit, unary(), l);
    if (accept(Tok::KwIf)) {
      Expr cond = arrow();
      expect(Tok::KwThen);
      Expr then_branch = arrow();
      expect(Tok::KwElse);
      Expr else_branch = arrow();
      return Expr::ite(std::move(cond), std::move(then_branch), std::move(else_branch), l);
    }
    if (accept(Tok::KwEither)) {
      Expr scrutinee = arrow();
      expect(Tok::KwOr);
      Expr fallback = arrow();
      return Expr::binary(ExprKind::Either, std::move(scrutinee), std::move(fallback), l);
    }
    return application();
  }

  bool starts_atom(const Token& t) const {
    switch (t.kind) {
      case Tok::Ident:
      case Tok::IntLit:
      case Tok::FloatLit:
      case Tok::BoolLit:
      case Tok::UnitLit:
      case Tok::LParen:
      case Tok::KwNone:
        return true;
      default:
        return false;
    }
  }

  Expr application() {
    if (at(Tok::Ident) && starts_atom(peek_tok(1))) {
      SourceLoc l = loc();
      std::string callee = cur().text;
      ++pos_;
      return Expr::app(std::move(callee), atom(), l);
    }
    return atom();
  }

  Expr atom() {
    SourceLoc l = loc();
    const Token& t = cur();
    switch (t.kind) {
      case Tok::Ident: ++pos_; return Expr::var(t.text, l);
      case Tok::IntLit: ++pos_; return Expr::constant(t.int_value, l);
      case Tok::FloatLit: ++pos_; return Expr::constant(t.float_value, l);
      case Tok::BoolLit: ++pos_; return Expr::constant(t.int_value != 0, l);
      case Tok::UnitLit: ++pos_; return Expr::constant(std::monostate{}, l);
      case Tok::KwNone: ++pos_; return Expr::none(l);
      case Tok::LParen: {
        ++pos_;
        Expr e = expr();
        expect(Tok::RParen);
        return e;
      }
      default:
        unexpected({Tok::Ident, Tok::IntLit, Tok::FloatLit, Tok::BoolLit, Tok::UnitLit,
                    Tok::LParen, Tok::KwNone});
    }
  }

  std::span<const Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse(std::span<const Token> tokens) { return Parser(tokens).program(); }

Program parse_source(std::string_view source) {
  auto tokens = tokenize(source);
  return parse(tokens);
}

Expr parse_expression(std::string_view source) {
  auto tokens = tokenize(source);
  return Parser(tokens).standalone_expr();
}

Type parse_type(std::string_view source) {
  auto tokens = tokenize(source);
  return Parser(tokens).standalone_type();
}

bool is_operator_symbol(std::string_view callee) {
  static const std::set<std::string_view> ops = {"+",  "-",  "*",  "/",  "~-", "!",  "&&",
                                                 "||", "<",  "<=", ">",  ">=", "==", "!="};
  return ops.contains(callee);
}

}  // namespace mimosa
