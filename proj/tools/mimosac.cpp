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

// mimosac: check, compile, simulate and inspect Mimosa programs.
//
// Exit status: 0 success, 1 diagnostics, 2 usage or I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mimosa/codegen_c.hpp"
#include "mimosa/pipeline.hpp"
#include "mimosa/simulator.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kDiagnostics = 1;
constexpr int kUsage = 2;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Invocation {
  std::string source;
  std::string model;
  std::string output;
  std::string stimuli;
  std::string until;
  std::string phase;
};

// Diagnostics of the model and stimulus parsers point into their own files.
void report(const mimosa::CompileError& e, const Invocation& inv) {
  for (const auto& d : e.diagnostics()) {
    const std::string& file = d.phase == mimosa::Phase::Model      ? inv.model
                              : d.phase == mimosa::Phase::Stimulus ? inv.stimuli
                                                                   : inv.source;
    std::cerr << d.render(file) << "\n";
  }
}

std::optional<mimosa::DeploymentModel> load_model(const Invocation& inv) {
  if (inv.model.empty()) return std::nullopt;
  return mimosa::parse_model(read_file(inv.model));
}

mimosa::Compilation build(const Invocation& inv, const std::optional<mimosa::DeploymentModel>& m) {
  return mimosa::compile_source(read_file(inv.source), m ? &*m : nullptr);
}

int cmd_check(const Invocation& inv) {
  auto model = load_model(inv);
  build(inv, model);
  return kOk;
}

int cmd_compile(const Invocation& inv) {
  auto model = load_model(inv);
  auto compiled = build(inv, model);
  mimosa::write_project(mimosa::generate_c(compiled, *model), inv.output);
  return kOk;
}

int cmd_sim(const Invocation& inv, mimosa::Micros horizon) {
  auto model = load_model(inv);
  auto compiled = build(inv, model);
  auto stimuli = mimosa::parse_stimuli(read_file(inv.stimuli), compiled.machines);
  auto result = mimosa::run(compiled, *model, stimuli, horizon);
  std::cout << mimosa::format_trace(result.trace);
  return kOk;
}

int cmd_dump(const Invocation& inv) {
  auto model = load_model(inv);
  auto compiled = build(inv, model);
  bool first = true;
  if (inv.phase == "normir") {
    for (const auto& s : compiled.norm) {
      std::cout << (first ? "" : "\n") << mimosa::dump(s);
      first = false;
    }
  } else {
    for (const auto& m : compiled.machines) {
      std::cout << (first ? "" : "\n") << mimosa::dump(m);
      first = false;
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mimosa compiler and simulator", "mimosac"};
  app.require_subcommand(1);
  Invocation inv;

  auto* check = app.add_subcommand("check", "Run all static checks");
  check->add_option("source", inv.source, "Program file")->required();
  check->add_option("--model", inv.model, "Deployment model (enables coverage checks)");

  auto* compile = app.add_subcommand("compile", "Generate C sources");
  compile->add_option("source", inv.source, "Program file")->required();
  compile->add_option("--model", inv.model, "Deployment model")->required();
  compile->add_option("-o,--output", inv.output, "Output directory")->required();

  auto* sim = app.add_subcommand("sim", "Simulate the network and print its trace");
  sim->add_option("source", inv.source, "Program file")->required();
  sim->add_option("--model", inv.model, "Deployment model")->required();
  sim->add_option("--stimuli", inv.stimuli, "Extern return scripts")->required();
  sim->add_option("--until", inv.until, "Horizon, e.g. 600ms")->required();

  auto* dump = app.add_subcommand("dump-ir", "Print an intermediate representation");
  dump->add_option("source", inv.source, "Program file")->required();
  dump->add_option("--phase", inv.phase, "normir or ooir")
      ->required()
      ->check(CLI::IsMember({"normir", "ooir"}));
  dump->add_option("--model", inv.model, "Deployment model");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  mimosa::Micros horizon = 0;
  if (sim->parsed()) {
    try {
      horizon = mimosa::parse_duration(inv.until);
    } catch (const mimosa::CompileError&) {
      std::cerr << "mimosac: invalid duration '" << inv.until << "'\n";
      return kUsage;
    }
  }

  try {
    if (check->parsed()) return cmd_check(inv);
    if (compile->parsed()) return cmd_compile(inv);
    if (sim->parsed()) return cmd_sim(inv, horizon);
    return cmd_dump(inv);
  } catch (const IoError& e) {
    std::cerr << "mimosac: " << e.what() << "\n";
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "mimosac: " << e.what() << "\n";
    return kUsage;
  } catch (const mimosa::CompileError& e) {
    report(e, inv);
    return kDiagnostics;
  } catch (const mimosa::EvalError& e) {
    std::cerr << "mimosac: " << e.what() << "\n";
    return kDiagnostics;
  } catch (const std::runtime_error& e) {
    std::cerr << "mimosac: " << e.what() << "\n";
    return kUsage;
  }
}
