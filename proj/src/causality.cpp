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

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "mimosa/pretty.hpp"
#include "mimosa/sema.hpp"

namespace mimosa {

namespace {

// Collects the variables an expression reads at positions that order
// equations. A `pre x` read in an eager position is skipped: the cell it
// reads was written in the previous cycle and the store happens after all
// equations of the step. Inside lazy blocks the store is emitted at the end
// of that block, so the variable must already be assigned there.
void reads(const Expr& e, bool lazy, std::set<std::string>& out) {
  switch (e.kind) {
    case ExprKind::Var: out.insert(e.name); return;
    case ExprKind::Const:
    case ExprKind::NoneLit: return;
    case ExprKind::Pre:
      if (!lazy && e.args[0].kind == ExprKind::Var) return;
      reads(e.args[0], lazy, out);
      return;
    case ExprKind::Arrow:
      reads(e.args[0], true, out);
      reads(e.args[1], lazy, out);
      return;
    case ExprKind::Fby:
      reads(e.args[0], true, out);
      reads(e.args[1], true, out);
      return;
    case ExprKind::If:
      reads(e.args[0], lazy, out);
      reads(e.args[1], true, out);
      reads(e.args[2], true, out);
      return;
    case ExprKind::Either:
      reads(e.args[0], lazy, out);
      reads(e.args[1], true, out);
      return;
    case ExprKind::Tuple:
    case ExprKind::App:
    case ExprKind::SomeLit:
      for (const auto& a : e.args) reads(a, lazy, out);
      return;
  }
}

using Key = std::tuple<std::vector<std::string>, std::string, std::size_t>;

Key canonical_key(const Equation& eq, std::size_t index) {
  std::vector<std::string> names;
  pattern_vars(eq.lhs, names);
  std::sort(names.begin(), names.end());
  return {names, pretty(eq), index};
}

struct Graph {
  // deps[i]: equations that must come before equation i
  std::vector<std::set<std::size_t>> deps;
};

Graph build_graph(const std::vector<Equation>& body) {
  std::map<std::string, std::size_t> binder;
  for (std::size_t i = 0; i < body.size(); ++i) {
    std::vector<std::string> names;
    pattern_vars(body[i].lhs, names);
    for (const auto& n : names) binder.emplace(n, i);
  }
  Graph g;
  g.deps.resize(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    std::set<std::string> used;
    reads(body[i].rhs, false, used);
    for (const auto& v : used) {
      auto it = binder.find(v);
      if (it != binder.end()) g.deps[i].insert(it->second);
    }
  }
  return g;
}

// One cycle among the unscheduled equations, as a list of indices.
std::vector<std::size_t> find_cycle(const Graph& g, const std::vector<bool>& done) {
  std::vector<int> state(g.deps.size(), 0);
  std::vector<std::size_t> stack;
  std::vector<std::size_t> cycle;

  auto dfs = [&](auto&& self, std::size_t i) -> bool {
    state[i] = 1;
    stack.push_back(i);
    for (std::size_t d : g.deps[i]) {
      if (done[d]) continue;
      if (state[d] == 1) {
        auto from = std::find(stack.begin(), stack.end(), d);
        cycle.assign(from, stack.end());
        return true;
      }
      if (state[d] == 0 && self(self, d)) return true;
    }
    stack.pop_back();
    state[i] = 2;
    return false;
  };
  for (std::size_t i = 0; i < g.deps.size(); ++i) {
    if (!done[i] && state[i] == 0 && dfs(dfs, i)) break;
  }
  return cycle;
}

}  // namespace

std::vector<std::size_t> causal_order(const std::vector<Equation>& body) {
  Graph g = build_graph(body);
  std::vector<std::size_t> pending(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) pending[i] = g.deps[i].size();

  std::vector<std::set<std::size_t>> users(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    for (std::size_t d : g.deps[i]) users[d].insert(i);
  }

  std::map<Key, std::size_t> ready;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (pending[i] == 0) ready.emplace(canonical_key(body[i], i), i);
  }

  std::vector<std::size_t> order;
  std::vector<bool> done(body.size(), false);
  while (!ready.empty()) {
    std::size_t i = ready.begin()->second;
    ready.erase(ready.begin());
    order.push_back(i);
    done[i] = true;
    for (std::size_t u : users[i]) {
      if (--pending[u] == 0) ready.emplace(canonical_key(body[u], u), u);
    }
  }

  if (order.size() != body.size()) {
    std::vector<std::size_t> cycle = find_cycle(g, done);
    std::sort(cycle.begin(), cycle.end());
    std::vector<std::string> names;
    for (std::size_t i : cycle) pattern_vars(body[i].lhs, names);
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    fail(Phase::Causality, body[cycle.front()].loc, "non-causal cycle: [" + list + "]");
  }
  return order;
}

void order_equations(StepDecl& step) {
  if (!step.body) return;
  std::vector<std::size_t> order = causal_order(*step.body);
  std::vector<Equation> sorted;
  sorted.reserve(order.size());
  for (std::size_t i : order) sorted.push_back(std::move((*step.body)[i]));
  *step.body = std::move(sorted);
}

}  // namespace mimosa
