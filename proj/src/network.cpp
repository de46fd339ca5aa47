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

#include <set>

#include "mimosa/sema.hpp"

namespace mimosa {

std::vector<Type> item_types(const std::vector<Pattern>& items) {
  std::vector<Type> out;
  for (const auto& p : items) {
    if (p.type) {
      out.push_back(*p.type);
    } else if (p.annotation) {
      out.push_back(*p.annotation);
    } else {
      out.push_back(Type::variable("'?"));
    }
  }
  return out;
}

namespace {

struct PortUse {
  std::vector<std::string> writers;
  std::vector<std::string> readers;
};

class NetworkChecker {
 public:
  NetworkChecker(const TypedProgram& typed, const DeploymentModel* model)
      : typed_(typed), model_(model) {}

  std::vector<Diagnostic> run() {
    const Program& prog = typed_.program;
    std::set<std::string> names;
    for (const auto& c : prog.channels) {
      if (!names.insert(c.name).second) report(c.loc, "duplicate channel '" + c.name + "'");
      uses_[c.name];
    }
    names.clear();
    for (const auto& n : prog.nodes) {
      if (!names.insert(n.name).second) report(n.loc, "duplicate node '" + n.name + "'");
      check_node(n);
    }
    for (const auto& c : prog.channels) check_channel(c);
    if (model_) check_model();
    return std::move(diags_);
  }

 private:
  void report(SourceLoc loc, std::string message) {
    diags_.push_back({Phase::Network, loc, std::move(message)});
  }

  void check_ports(const NodeDecl& node, const std::vector<Port>& ports,
                   const std::vector<Type>& types, bool inputs) {
    const char* dir = inputs ? "input" : "output";
    if (ports.size() != types.size()) {
      report(node.loc, "node '" + node.name + "' has " + std::to_string(ports.size()) + " " +
                           dir + " port(s) but step '" + node.step + "' has " +
                           std::to_string(types.size()));
    }
    for (std::size_t i = 0; i < ports.size(); ++i) {
      const Port& port = ports[i];
      const ChannelDecl* chan = typed_.program.find_channel(port.channel);
      if (!chan) {
        report(port.loc, "node '" + node.name + "' uses unknown channel '" + port.channel + "'");
        continue;
      }
      auto& use = uses_[port.channel];
      (inputs ? use.readers : use.writers).push_back(node.name);
      if (i >= types.size()) continue;
      Type expected = port.optional ? Type::option(chan->element) : chan->element;
      if (!(types[i] == expected)) {
        report(port.loc, "type mismatch on " + std::string(dir) + " port '" + port.channel +
                             (port.optional ? "?" : "") + "' of node '" + node.name +
                             "': channel carries " + to_string(chan->element) + " (port expects " +
                             to_string(expected) + "), step '" + node.step + "' has " +
                             to_string(types[i]));
      }
    }
  }

  void check_node(const NodeDecl& node) {
    if (node.period_us <= 0) report(node.loc, "period of node '" + node.name + "' must be positive");
    const StepDecl* step = typed_.program.find_step(node.step);
    if (!step) {
      report(node.loc, "node '" + node.name + "' implements unknown step '" + node.step + "'");
      return;
    }
    check_ports(node, node.inputs, item_types(step->inputs), true);
    check_ports(node, node.outputs, item_types(step->outputs), false);
  }

  void check_channel(const ChannelDecl& c) {
    const PortUse& use = uses_[c.name];
    auto list = [](const std::vector<std::string>& v) {
      std::string s;
      for (const auto& n : v) s += (s.empty() ? "" : ", ") + n;
      return s;
    };
    if (use.writers.empty()) report(c.loc, "channel '" + c.name + "' has no writer");
    if (use.writers.size() > 1) {
      report(c.loc, "channel '" + c.name + "' has multiple writers: " + list(use.writers));
    }
    if (use.readers.empty()) report(c.loc, "channel '" + c.name + "' has no reader");
    if (use.readers.size() > 1) {
      report(c.loc, "channel '" + c.name + "' has multiple readers: " + list(use.readers));
    }
  }

  void check_model() {
    const Program& prog = typed_.program;
    for (const auto& c : prog.channels) {
      if (!model_->channels.contains(c.name)) {
        report(c.loc, "channel '" + c.name + "' is missing from the model");
      }
    }
    for (const auto& n : prog.nodes) {
      if (!model_->nodes.contains(n.name)) {
        report(n.loc, "node '" + n.name + "' is missing from the model");
      }
    }
    for (const auto& [name, spec] : model_->channels) {
      if (!prog.find_channel(name)) {
        report({}, "model line " + std::to_string(spec.line) + ": unknown channel '" + name + "'");
      }
    }
    for (const auto& [name, spec] : model_->nodes) {
      if (!prog.find_node(name)) {
        report({}, "model line " + std::to_string(spec.line) + ": unknown node '" + name + "'");
      }
    }
  }

  const TypedProgram& typed_;
  const DeploymentModel* model_;
  std::map<std::string, PortUse> uses_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

std::vector<Diagnostic> check_network(const TypedProgram& typed, const DeploymentModel* model) {
  return NetworkChecker(typed, model).run();
}

}  // namespace mimosa
