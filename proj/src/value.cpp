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

#include "mimosa/value.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace mimosa {

Value Value::boolean(bool v) {
  Value out;
  out.kind = TypeKind::Bool;
  out.b = v;
  return out;
}

Value Value::integer(std::int64_t v) {
  Value out;
  out.kind = TypeKind::Int;
  out.i = v;
  return out;
}

Value Value::floating(double v) {
  Value out;
  out.kind = TypeKind::Float;
  out.f = v;
  return out;
}

Value Value::none() {
  Value out;
  out.kind = TypeKind::Option;
  return out;
}

Value Value::some(Value v) {
  Value out;
  out.kind = TypeKind::Option;
  out.elems.push_back(std::move(v));
  return out;
}

Value Value::tuple(std::vector<Value> elems) {
  Value out;
  out.kind = TypeKind::Tuple;
  out.elems = std::move(elems);
  return out;
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case TypeKind::Unit: return true;
    case TypeKind::Bool: return a.b == b.b;
    case TypeKind::Int: return a.i == b.i;
    case TypeKind::Float: return std::memcmp(&a.f, &b.f, sizeof a.f) == 0;
    default: return a.elems == b.elems;
  }
}

Value literal_value(const Literal& lit) {
  if (const auto* b = std::get_if<bool>(&lit)) return Value::boolean(*b);
  if (const auto* i = std::get_if<std::int64_t>(&lit)) return Value::integer(*i);
  if (const auto* f = std::get_if<double>(&lit)) return Value::floating(*f);
  return Value::unit();
}

Value nil_value(const Type& type) {
  switch (type.kind) {
    case TypeKind::Bool: return Value::boolean(false);
    case TypeKind::Int: return Value::integer(0);
    case TypeKind::Float: return Value::floating(0.0);
    case TypeKind::Option: return Value::none();
    case TypeKind::Tuple: {
      std::vector<Value> elems;
      for (const auto& t : type.args) elems.push_back(nil_value(t));
      return Value::tuple(std::move(elems));
    }
    default: return Value::unit();
  }
}

bool value_has_type(const Value& v, const Type& type) {
  if (type.kind == TypeKind::Var) return false;
  if (v.kind != type.kind) return false;
  if (type.kind == TypeKind::Option) {
    return v.elems.empty() || (v.elems.size() == 1 && value_has_type(v.elems[0], type.inner()));
  }
  if (type.kind == TypeKind::Tuple) {
    if (v.elems.size() != type.args.size()) return false;
    for (std::size_t i = 0; i < v.elems.size(); ++i) {
      if (!value_has_type(v.elems[i], type.args[i])) return false;
    }
  }
  return true;
}

std::string format_value(const Value& v) {
  switch (v.kind) {
    case TypeKind::Unit: return "()";
    case TypeKind::Bool: return v.b ? "true" : "false";
    case TypeKind::Int: return std::to_string(v.i);
    case TypeKind::Float: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", v.f);
      return buf;
    }
    case TypeKind::Option: return v.elems.empty() ? "None" : "Some(" + format_value(v.elems[0]) + ")";
    case TypeKind::Tuple: {
      std::string out = "(";
      for (std::size_t i = 0; i < v.elems.size(); ++i) {
        if (i) out += ",";
        out += format_value(v.elems[i]);
      }
      return out + ")";
    }
    case TypeKind::Var: break;
  }
  return "?";
}

namespace {

class ValueParser {
 public:
  explicit ValueParser(std::string_view text) : text_(text) {}

  Value value(const Type& type) {
    skip_space();
    switch (type.kind) {
      case TypeKind::Unit:
        expect("()");
        return Value::unit();
      case TypeKind::Bool:
        if (accept("true")) return Value::boolean(true);
        if (accept("false")) return Value::boolean(false);
        error("expected true or false");
      case TypeKind::Int: return Value::integer(integer());
      case TypeKind::Float: return Value::floating(floating());
      case TypeKind::Option:
        if (accept("None")) return Value::none();
        if (accept("Some")) {
          skip_space();
          expect("(");
          Value inner = value(type.inner());
          skip_space();
          expect(")");
          return Value::some(std::move(inner));
        }
        error("expected None or Some(...)");
      case TypeKind::Tuple: {
        expect("(");
        std::vector<Value> elems;
        for (std::size_t i = 0; i < type.args.size(); ++i) {
          if (i) {
            skip_space();
            expect(",");
          }
          elems.push_back(value(type.args[i]));
        }
        skip_space();
        expect(")");
        return Value::tuple(std::move(elems));
      }
      case TypeKind::Var: error("cannot parse a value of polymorphic type " + type.var);
    }
    error("unsupported type");
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  bool accept(std::string_view word) {
    if (text_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }

  void expect(std::string_view word) {
    if (!accept(word)) error("expected '" + std::string(word) + "'");
  }

  [[noreturn]] void error(const std::string& what) const {
    fail(Phase::Stimulus, {}, "malformed value '" + std::string(text_) + "': " + what);
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view number_chars() {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+') {
        ++pos_;
      } else {
        break;
      }
    }
    return text_.substr(start, pos_ - start);
  }

  std::int64_t integer() {
    std::string_view digits = number_chars();
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) error("expected an integer");
    return v;
  }

  double floating() {
    std::string digits(number_chars());
    char* end = nullptr;
    double v = std::strtod(digits.c_str(), &end);
    if (digits.empty() || end != digits.c_str() + digits.size()) error("expected a float");
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Value parse_value(std::string_view text, const Type& type) {
  ValueParser p(text);
  Value v = p.value(type);
  if (!p.at_end()) p.error("trailing characters");
  return v;
}

std::vector<Value> parse_value_list(std::string_view text, const Type& type) {
  std::vector<Value> out;
  ValueParser p(text);
  if (p.at_end()) return out;
  for (;;) {
    out.push_back(p.value(type));
    if (p.at_end()) break;
    if (!p.accept(",")) p.error("expected ','");
  }
  return out;
}

}  // namespace mimosa
