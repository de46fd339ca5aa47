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

#include "mimosa/pretty.hpp"

#include "mimosa/parser.hpp"

namespace mimosa {

namespace {

// Binding strength; higher binds tighter. Mirrors the parser's levels.
enum Level : int {
  kTuple = 0,
  kArrow = 1,
  kFby = 2,
  kOr = 3,
  kAnd = 4,
  kCompare = 5,
  kAdd = 6,
  kMul = 7,
  kUnary = 8,
  kApp = 9,
  kAtom = 10,
};

int binary_level(const std::string& op) {
  if (op == "||") return kOr;
  if (op == "&&") return kAnd;
  if (op == "+" || op == "-") return kAdd;
  if (op == "*" || op == "/") return kMul;
  return kCompare;
}

bool is_binary_app(const Expr& e) {
  return e.kind == ExprKind::App && is_operator_symbol(e.name) && e.name != "!" &&
         e.name != op::kNeg && e.args[0].kind == ExprKind::Tuple && e.args[0].args.size() == 2;
}

bool is_unary_app(const Expr& e) {
  return e.kind == ExprKind::App && (e.name == "!" || e.name == op::kNeg);
}

int level(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Tuple: return kTuple;
    case ExprKind::Arrow: return kArrow;
    case ExprKind::Fby: return kFby;
    case ExprKind::If:
    case ExprKind::Either: return kArrow;
    case ExprKind::Pre:
    case ExprKind::SomeLit: return kUnary;
    case ExprKind::App:
      if (is_binary_app(e)) return binary_level(e.name);
      if (is_unary_app(e)) return kUnary;
      return kApp;
    case ExprKind::Var:
    case ExprKind::Const:
    case ExprKind::NoneLit: return kAtom;
  }
  return kAtom;
}

std::string print(const Expr& e, int min_level);

std::string print_raw(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Var: return e.name;
    case ExprKind::Const: return literal_to_string(e.literal);
    case ExprKind::NoneLit: return "None";
    case ExprKind::Tuple: {
      std::string out;
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        out += print(e.args[i], kArrow);
      }
      return out;
    }
    case ExprKind::Arrow: return print(e.args[0], kFby) + " -> " + print(e.args[1], kArrow);
    case ExprKind::Fby: return print(e.args[0], kOr) + " fby " + print(e.args[1], kFby);
    case ExprKind::Pre: return "pre " + print(e.args[0], kUnary);
    case ExprKind::SomeLit: return "Some " + print(e.args[0], kUnary);
    case ExprKind::If:
      return "if " + print(e.args[0], kArrow) + " then " + print(e.args[1], kArrow) + " else " +
             print(e.args[2], kArrow);
    case ExprKind::Either:
      return "either " + print(e.args[0], kArrow) + " or " + print(e.args[1], kArrow);
    case ExprKind::App: {
      if (is_binary_app(e)) {
        int lvl = binary_level(e.name);
        // comparisons do not chain, so both sides need a tighter level
        int left = lvl == kCompare ? lvl + 1 : lvl;
        const Expr& pair = e.args[0];
        return print(pair.args[0], left) + " " + e.name + " " + print(pair.args[1], lvl + 1);
      }
      if (is_unary_app(e)) {
        std::string operand = print(e.args[0], kUnary);
        std::string sym = e.name == "!" ? "!" : "-";
        if (!operand.empty() && (operand[0] == '-' || operand[0] == '!')) sym += " ";
        return sym + operand;
      }
      return e.name + " " + print(e.args[0], kAtom);
    }
  }
  return "";
}

std::string print(const Expr& e, int min_level) {
  std::string raw = print_raw(e);
  if (level(e) < min_level) return "(" + raw + ")";
  return raw;
}

std::string print_pattern(const Pattern& p, bool nested) {
  switch (p.kind) {
    case PatternKind::Var: return p.name;
    case PatternKind::Wildcard: return "_";
    case PatternKind::Tuple: {
      std::string out;
      for (std::size_t i = 0; i < p.elems.size(); ++i) {
        if (i) out += ", ";
        out += print_pattern(p.elems[i], true);
      }
      return nested ? "(" + out + ")" : out;
    }
  }
  return "";
}

std::string print_signature_item(const Pattern& p) {
  if (p.kind == PatternKind::Tuple) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.elems.size(); ++i) {
      if (i) out += ", ";
      out += print_signature_item(p.elems[i]);
    }
    return out + ")";
  }
  std::string out = p.kind == PatternKind::Wildcard ? "_" : p.name;
  if (p.annotation) out += " : " + to_string(*p.annotation);
  return out;
}

std::string print_signature(const std::vector<Pattern>& items) {
  if (items.empty()) return "()";
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += print_signature_item(items[i]);
  }
  return out + ")";
}

std::string print_ports(const std::vector<Port>& ports) {
  if (ports.empty()) return "()";
  std::string out = "(";
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (i) out += ", ";
    out += ports[i].channel;
    if (ports[i].optional) out += "?";
  }
  return out + ")";
}

std::string print_period(const NodeDecl& n) {
  std::int64_t scale = micros_per(n.period_unit);
  if (n.period_us % scale != 0) return std::to_string(n.period_us) + "us";
  return std::to_string(n.period_us / scale) + unit_suffix(n.period_unit);
}

}  // namespace

std::string pretty(const Expr& expr) { return print(expr, kTuple); }

std::string pretty(const Pattern& pattern) { return print_pattern(pattern, false); }

std::string pretty(const Equation& eq) { return pretty(eq.lhs) + " = " + pretty(eq.rhs) + ";"; }

std::string pretty(const Program& program) {
  std::string out;
  auto section_break = [&out] {
    if (!out.empty()) out += "\n";
  };

  for (const auto& s : program.steps) {
    section_break();
    out += "step " + s.name + " " + print_signature(s.inputs) + " --> " +
           print_signature(s.outputs) + "\n";
    if (s.body) {
      out += "{\n";
      for (const auto& eq : *s.body) out += "  " + pretty(eq) + "\n";
      out += "}\n";
    }
  }

  if (!program.channels.empty()) section_break();
  for (const auto& c : program.channels) {
    out += "channel " + c.name + " : " + to_string(c.element) + "\n";
  }

  if (!program.nodes.empty()) section_break();
  for (const auto& n : program.nodes) {
    out += "node " + n.name + " implements " + n.step + " " + print_ports(n.inputs) + " --> " +
           print_ports(n.outputs) + " every " + print_period(n) + "\n";
  }
  return out;
}

}  // namespace mimosa
