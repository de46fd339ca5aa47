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
#include <deque>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mimosa/model.hpp"
#include "mimosa/normir.hpp"
#include "mimosa/ooir.hpp"
#include "mimosa/pipeline.hpp"
#include "mimosa/value.hpp"

namespace mimosa {

using Micros = std::int64_t;

// ---- machine interpretation ---------------------------------------------------

/// Memory cells and sub-instance states of one machine instance.
struct MachineState {
  std::map<std::string, Value> memory;
  std::map<std::string, std::unique_ptr<MachineState>> instances;
};

/// Interprets OOIR machines. Prototype calls go to the extern callback.
class MachineInterpreter {
 public:
  MachineInterpreter(const std::vector<Machine>& machines, ExternFn externs);

  const Machine& machine(const std::string& name) const;

  /// Allocates the state tree of `machine` (cells hold their reset values).
  MachineState create(const std::string& machine) const;
  /// Runs the reset instructions, recursively through sub-instances.
  void reset(const std::string& machine, MachineState& state) const;
  /// Runs the step instructions and returns the Return value.
  Value step(const std::string& machine, MachineState& state, const Value& input) const;

 private:
  struct Frame;
  bool exec(const Machine& m, const std::vector<Instr>& instrs, MachineState& state, Frame& frame,
            Value& result) const;
  Value call(const Instr& call, MachineState& state, const Value& arg) const;

  std::map<std::string, const Machine*> machines_;
  ExternFn externs_;
};

// ---- stimuli ------------------------------------------------------------------

/// Scripted return values per prototype. When a script runs out its last
/// value repeats.
struct Stimuli {
  std::map<std::string, std::vector<Value>> scripts;
};

/// `[extern <name>]` sections with `returns = v1, v2, ...`; `#` comments.
/// Values are parsed at each prototype's return type. Unknown prototypes,
/// empty scripts and ill-typed values are rejected (Phase::Stimulus).
Stimuli parse_stimuli(std::string_view text, const std::vector<Machine>& machines);

// ---- coordination ---------------------------------------------------------------

struct TimedItem {
  Value value;
  Micros stamp = 0;
};

struct TimedQueue {
  std::string channel;
  std::int64_t capacity = 0;
  std::deque<TimedItem> items;
};

/// Front item exists and its stamp is not after `now`.
bool available(const TimedQueue& queue, Micros now);

struct ChannelWrite {
  std::string channel;
  Value value;
  Micros stamp = 0;
};

struct TraceEvent {
  enum class Kind { Fire, Skip, Extern, Overflow };
  Kind kind = Kind::Fire;
  Micros time = 0;
  std::string node;
  /// Fire: values passed to the step, one per input port.
  std::vector<Value> inputs;
  std::vector<ChannelWrite> outputs;
  /// Skip: non-optional inputs without an available item.
  std::vector<std::string> missing;
  /// Extern: called prototype, argument and scripted result.
  std::string prototype;
  Value arg;
  Value ret;
  /// Overflow: the full channel.
  std::string channel;
};

using Trace = std::vector<TraceEvent>;

std::string format_event(const TraceEvent& event);
/// One line per event, each terminated by a newline.
std::string format_trace(const Trace& trace);

struct SimResult {
  Trace trace;
  std::map<std::string, TimedQueue> queues;
  bool overflowed = false;
  /// Items written and read per channel.
  std::map<std::string, std::int64_t> produced;
  std::map<std::string, std::int64_t> consumed;
};

/// Discrete-event run over releases k * period <= horizon, ascending in time,
/// ties in node declaration order. Halts at the first overflow.
SimResult run(const Compilation& compiled, const DeploymentModel& model, const Stimuli& stimuli,
              Micros horizon);

/// Parses a duration with the language's unit grammar (`600ms`, `1s`, `250us`).
Micros parse_duration(std::string_view text);

}  // namespace mimosa
