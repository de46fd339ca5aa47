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

#include "support.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mtest {

using mimosa::Type;
using mimosa::TypeKind;
using mimosa::Value;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string corpus_path(const std::string& file) { return std::string(MIMOSA_CORPUS_DIR) + "/" + file; }

std::string golden_path(const std::string& file) { return std::string(MIMOSA_GOLDEN_DIR) + "/" + file; }

CorpusProgram corpus_program(const std::string& name) {
  CorpusProgram p;
  p.name = name;
  p.source = read_file(corpus_path(name + ".mim"));
  if (std::filesystem::exists(corpus_path(name + ".model"))) {
    p.model = mimosa::parse_model(read_file(corpus_path(name + ".model")));
  }
  if (std::filesystem::exists(corpus_path(name + ".stim"))) {
    p.stimuli = read_file(corpus_path(name + ".stim"));
  }
  return p;
}

std::vector<CorpusProgram> corpus() {
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(MIMOSA_CORPUS_DIR)) {
    if (entry.path().extension() == ".mim") names.push_back(entry.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  std::vector<CorpusProgram> out;
  for (const auto& n : names) out.push_back(corpus_program(n));
  return out;
}

mimosa::Compilation compile(const CorpusProgram& p, const mimosa::PipelineOptions& options) {
  return mimosa::compile_source(p.source, p.model ? &*p.model : nullptr, options);
}

Value random_value(const Type& type, std::mt19937_64& rng) {
  switch (type.kind) {
    case TypeKind::Unit: return Value::unit();
    case TypeKind::Bool: return Value::boolean(rng() & 1);
    case TypeKind::Int: {
      auto roll = rng() % 20;
      if (roll == 0) return Value::integer(INT64_MAX - static_cast<std::int64_t>(rng() % 3));
      if (roll == 1) return Value::integer(INT64_MIN + static_cast<std::int64_t>(rng() % 3));
      return Value::integer(static_cast<std::int64_t>(rng() % 201) - 100);
    }
    case TypeKind::Float:
      return Value::floating(static_cast<double>(static_cast<std::int64_t>(rng() % 801) - 400) / 4.0);
    case TypeKind::Option:
      if (rng() % 3 == 0) return Value::none();
      return Value::some(random_value(type.inner(), rng));
    case TypeKind::Tuple: {
      std::vector<Value> elems;
      for (const auto& a : type.args) elems.push_back(random_value(a, rng));
      return Value::tuple(std::move(elems));
    }
    case TypeKind::Var: break;
  }
  throw std::logic_error("random_value of a type variable");
}

ScriptedExterns::ScriptedExterns(const std::vector<mimosa::Machine>& machines, std::uint64_t seed)
    : rng_(seed) {
  for (const auto& m : machines) {
    if (m.prototype) returns_[m.name] = m.out_type;
  }
}

Value ScriptedExterns::operator()(const std::string& prototype, const Value&) {
  return random_value(returns_.at(prototype), rng_);
}

std::vector<std::string> step_names(const mimosa::Compilation& c) {
  std::vector<std::string> out;
  for (const auto& m : c.machines) {
    if (!m.prototype) out.push_back(m.name);
  }
  return out;
}

std::string normalise_instants(const std::string& trace) {
  std::istringstream in(trace);
  std::vector<std::pair<std::pair<long long, std::string>, std::string>> lines;
  std::string line;
  while (std::getline(in, line)) {
    long long t = std::stoll(line.substr(2, line.find(' ') - 2));
    auto rest = line.substr(line.find(' ') + 1);
    auto kind_end = rest.find(' ');
    auto node_end = rest.find(' ', kind_end + 1);
    std::string node = rest.substr(kind_end + 1, node_end - kind_end - 1);
    lines.push_back({{t, node}, line});
  }
  std::stable_sort(lines.begin(), lines.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string out;
  for (const auto& l : lines) out += l.second + "\n";
  return out;
}

}  // namespace mtest
