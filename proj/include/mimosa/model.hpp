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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace mimosa {

struct ChannelSpec {
  std::int64_t capacity = 0;
  int line = 0;
};

struct NodeSpec {
  std::int64_t priority = 0;
  std::int64_t stack = 0;
  int line = 0;
};

/// Deployment model: channel capacities plus task priority and stack size.
struct DeploymentModel {
  std::map<std::string, ChannelSpec> channels;
  std::map<std::string, NodeSpec> nodes;
};

/// INI-style model file:
///
///   # comment
///   [channel a]
///   size = 16
///   [node edge]
///   priority = 3
///   stack = 1024
///
/// Throws CompileError (Phase::Model) with the offending line on syntax errors,
/// duplicate sections or keys, unknown or missing keys, and non-positive sizes.
DeploymentModel parse_model(std::string_view text);

std::string format_model(const DeploymentModel& model);

}  // namespace mimosa
