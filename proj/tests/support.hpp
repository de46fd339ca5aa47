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

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mimosa/model.hpp"
#include "mimosa/pipeline.hpp"
#include "mimosa/simulator.hpp"
#include "mimosa/value.hpp"

namespace mtest {

std::string read_file(const std::string& path);
std::string corpus_path(const std::string& file);
std::string golden_path(const std::string& file);

struct CorpusProgram {
  std::string name;
  std::string source;
  std::optional<mimosa::DeploymentModel> model;
  std::string stimuli;
};

/// Every `corpus/*.mim`, sorted by name, with its `.model` and `.stim` when present.
std::vector<CorpusProgram> corpus();
CorpusProgram corpus_program(const std::string& name);

mimosa::Compilation compile(const CorpusProgram& p, const mimosa::PipelineOptions& options = {});

/// Random value of a ground type. Ints stay small with occasional extremes,
/// floats are dyadic so arithmetic is exact in both evaluators.
mimosa::Value random_value(const mimosa::Type& type, std::mt19937_64& rng);

/// Deterministic extern: hashes the call count and argument into a value of
/// the prototype's return type.
class ScriptedExterns {
 public:
  ScriptedExterns(const std::vector<mimosa::Machine>& machines, std::uint64_t seed);
  mimosa::Value operator()(const std::string& prototype, const mimosa::Value& arg);

 private:
  std::map<std::string, mimosa::Type> returns_;
  std::mt19937_64 rng_;
};

/// Steps of a compilation that are not prototypes.
std::vector<std::string> step_names(const mimosa::Compilation& c);

/// Lines of `text` sorted within each `T=<t>` group by node name, for
/// comparisons that ignore the order of events at one instant.
std::string normalise_instants(const std::string& trace);

}  // namespace mtest
