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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mimosa/model.hpp"
#include "mimosa/ooir.hpp"
#include "mimosa/pipeline.hpp"

namespace mimosa {

/// Generated C sources in emission order: runtime.h, types.h, one
/// `<step>.h`/`<step>.c` pair per machine (header only for prototypes),
/// network.c.
struct CProject {
  std::vector<std::pair<std::string, std::string>> files;

  const std::string* find(const std::string& name) const;
};

struct CUnit {
  std::string header;
  /// Empty for prototypes, whose implementation is external.
  std::string source;
};

/// C spelling of a type: bool, int64_t, double, unit_t, struct opt_bool,
/// struct tup2_int_bool.
std::string c_type(const Type& type);

/// Suffix used in generated type names: bool, int, opt_bool, tup2_int_bool.
std::string c_type_name(const Type& type);

/// The runtime API the generated code is written against.
std::string emit_runtime_header();

/// Option and tuple structs used anywhere in the program, each after the
/// types it contains, with constructor helpers, wrapping integer helpers and
/// (under MIMOSA_TRACE) value printers.
std::string emit_types(const Compilation& compiled);

/// State struct, reset and step function of one machine. Stateless machines
/// get a plain function; prototypes get declarations only.
CUnit emit_machine(const Machine& machine);

/// Queues, one periodic task per node and main().
std::string emit_network(const Compilation& compiled, const DeploymentModel& model);

CProject generate_c(const Compilation& compiled, const DeploymentModel& model);

/// Writes every file of the project into `dir` (created if needed).
void write_project(const CProject& project, const std::filesystem::path& dir);

}  // namespace mimosa
