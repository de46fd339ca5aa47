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
#include <string>
#include <string_view>
#include <vector>

#include "mimosa/ast.hpp"
#include "mimosa/model.hpp"
#include "mimosa/normir.hpp"
#include "mimosa/ooir.hpp"
#include "mimosa/sema.hpp"

namespace mimosa {

struct PipelineOptions {
  /// Run the initialisation check (tests of raw `pre` semantics turn it off).
  bool init_check = true;
  /// Steps kept by monomorphisation besides the node-implemented ones. When
  /// empty and the program declares no nodes, every ground step is a root.
  std::vector<std::string> roots;
};

/// Every artefact of the step and coordination layers for one program.
struct Compilation {
  TypedProgram typed;  // after ordering, checks and monomorphisation
  std::vector<NormStep> norm;
  std::vector<Machine> machines;

  const Machine* machine(const std::string& name) const;
};

/// infer, order equations, init check, network check, monomorphise.
/// Throws CompileError.
TypedProgram analyse(Program program, const DeploymentModel* model,
                     const PipelineOptions& options = {});

/// analyse, then normalise and objectify.
Compilation compile(Program program, const DeploymentModel* model,
                    const PipelineOptions& options = {});

Compilation compile_source(std::string_view source, const DeploymentModel* model = nullptr,
                           const PipelineOptions& options = {});

}  // namespace mimosa
