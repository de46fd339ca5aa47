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

#include "mimosa/pipeline.hpp"

#include "mimosa/parser.hpp"

namespace mimosa {

const Machine* Compilation::machine(const std::string& name) const {
  for (const auto& m : machines) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

TypedProgram analyse(Program program, const DeploymentModel* model,
                     const PipelineOptions& options) {
  TypedProgram typed = infer(std::move(program));
  for (auto& step : typed.program.steps) {
    order_equations(step);
    if (options.init_check) check_init(step);
  }
  if (auto diags = check_network(typed, model); !diags.empty()) {
    throw CompileError(std::move(diags));
  }

  std::vector<std::string> roots = options.roots;
  if (roots.empty() && typed.program.nodes.empty()) {
    for (const auto& step : typed.program.steps) {
      if (!step.is_prototype() && typed.schemes.at(step.name).is_ground()) {
        roots.push_back(step.name);
      }
    }
  }
  return monomorphise(typed, roots);
}

Compilation compile(Program program, const DeploymentModel* model,
                    const PipelineOptions& options) {
  Compilation c;
  c.typed = analyse(std::move(program), model, options);
  c.norm = normalise_program(c.typed);
  c.machines = objectify_program(c.typed, c.norm);
  return c;
}

Compilation compile_source(std::string_view source, const DeploymentModel* model,
                           const PipelineOptions& options) {
  return compile(parse_source(source), model, options);
}

}  // namespace mimosa
