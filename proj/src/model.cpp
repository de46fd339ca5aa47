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

#include "mimosa/model.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <set>
#include <sstream>

#include "mimosa/diagnostics.hpp"

namespace mimosa {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

[[noreturn]] void model_error(int line, const std::string& msg) {
  fail(Phase::Model, {line, 1}, msg);
}

std::int64_t parse_int(std::string_view text, int line) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    model_error(line, "expected an integer, found '" + std::string(text) + "'");
  }
  return v;
}

bool valid_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

struct Section {
  enum class Kind { Channel, Node } kind;
  std::string name;
  int line;
  std::optional<std::int64_t> size, priority, stack;
};

void finish(const Section& s, DeploymentModel& model) {
  if (s.kind == Section::Kind::Channel) {
    if (!s.size) model_error(s.line, "channel '" + s.name + "' is missing 'size'");
    model.channels[s.name] = ChannelSpec{*s.size, s.line};
  } else {
    if (!s.priority) model_error(s.line, "node '" + s.name + "' is missing 'priority'");
    if (!s.stack) model_error(s.line, "node '" + s.name + "' is missing 'stack'");
    model.nodes[s.name] = NodeSpec{*s.priority, *s.stack, s.line};
  }
}

}  // namespace

DeploymentModel parse_model(std::string_view text) {
  DeploymentModel model;
  std::optional<Section> current;
  int line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') model_error(line_no, "unterminated section header");
      if (current) finish(*current, model);
      std::string_view inner = trim(line.substr(1, line.size() - 2));
      auto space = inner.find_first_of(" \t");
      if (space == std::string_view::npos) model_error(line_no, "expected '[channel <name>]' or '[node <name>]'");
      std::string_view kind = inner.substr(0, space);
      std::string name(trim(inner.substr(space)));
      if (!valid_name(name)) model_error(line_no, "invalid section name '" + name + "'");
      Section s{Section::Kind::Channel, name, line_no, {}, {}, {}};
      if (kind == "channel") {
        if (model.channels.contains(name)) model_error(line_no, "duplicate channel '" + name + "'");
      } else if (kind == "node") {
        s.kind = Section::Kind::Node;
        if (model.nodes.contains(name)) model_error(line_no, "duplicate node '" + name + "'");
      } else {
        model_error(line_no, "unknown section kind '" + std::string(kind) + "'");
      }
      current = s;
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string_view::npos) model_error(line_no, "expected 'key = value'");
    if (!current) model_error(line_no, "key outside of a section");
    std::string key(trim(line.substr(0, eq)));
    std::int64_t value = parse_int(trim(line.substr(eq + 1)), line_no);

    auto set = [&](std::optional<std::int64_t>& slot) {
      if (slot) model_error(line_no, "duplicate key '" + key + "'");
      slot = value;
    };
    if (current->kind == Section::Kind::Channel && key == "size") {
      if (value <= 0) model_error(line_no, "channel size must be positive");
      set(current->size);
    } else if (current->kind == Section::Kind::Node && key == "priority") {
      if (value < 0) model_error(line_no, "priority must be non-negative");
      set(current->priority);
    } else if (current->kind == Section::Kind::Node && key == "stack") {
      if (value <= 0) model_error(line_no, "stack size must be positive");
      set(current->stack);
    } else {
      model_error(line_no, "unknown key '" + key + "'");
    }
  }
  if (current) finish(*current, model);
  return model;
}

std::string format_model(const DeploymentModel& model) {
  std::ostringstream out;
  for (const auto& [name, c] : model.channels) {
    out << "[channel " << name << "]\nsize = " << c.capacity << "\n\n";
  }
  for (const auto& [name, n] : model.nodes) {
    out << "[node " << name << "]\npriority = " << n.priority << "\nstack = " << n.stack << "\n\n";
  }
  return out.str();
}

}  // namespace mimosa
