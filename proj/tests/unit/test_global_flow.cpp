// Copyright (c) 2026 The privflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <set>

#include "doctest.h"
#include "privflow/global_flow.hpp"
#include "support/harness.hpp"
#include "support/synthetic.hpp"

using namespace privflow;
using namespace privflow::testing;

namespace {

constexpr std::size_t kPathBudget = 2'000'000;
constexpr std::size_t kUnbounded = 1'000'000;

struct Built {
  Diagnostics diag;
  std::unique_ptr<Program> program;
  Catalog catalog = synthetic_catalog();
};

std::unique_ptr<Built> build(const SynProgram& syn) {
  auto b = std::make_unique<Built>();
  b->program = program_from_bytes(syn.class_files, b->diag);
  return b;
}

template <typename T>
std::set<T> as_set(const std::vector<T>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("hand-built chain: source, return chain, call chain, sink") {
  // m0 calls m1 which reads; m0 then passes the data to m2, which writes it.
  SynProgram syn;
  for (std::uint64_t seed = 1;; ++seed) {
    syn = generate_program(seed, {3, 3, 2, 3});
    const auto& m = syn.methods;
    if (m[0].actions.size() == 2 && m[0].actions[0].kind == SynKind::call && m[0].actions[0].callee == 1 &&
        m[0].actions[1].kind == SynKind::call && m[0].actions[1].callee == 2 && m[1].actions.size() == 1 &&
        m[1].actions[0].kind == SynKind::source && m[2].actions.size() == 1 && m[2].actions[0].kind == SynKind::sink_io)
      break;
    REQUIRE(seed < 200000);
  }
  auto b = build(syn);
  FlowEngine engine(*b->program, b->catalog);
  auto flows = engine.build_all();
  REQUIRE(flows.size() == 1);
  const auto& g = flows[0];
  CHECK(g.id == "O1");
  CHECK(g.source_method == synthetic_read());
  std::vector<MethodRef> expected{synthetic_read(), syn.methods[1].ref(), syn.methods[0].ref(), syn.methods[2].ref(),
                                  synthetic_write()};
  CHECK(g.nodes == expected);
  REQUIRE(g.sinks.size() == 1);
  CHECK(g.sinks[0].category == Category::io);
  std::set<ChainRule> rules;
  for (const auto& s : g.steps) rules.insert(s.rule);
  CHECK(rules == std::set<ChainRule>{ChainRule::return_chain, ChainRule::call_chain});
  CHECK(g.edges.front().first != g.edges.front().second);
  CHECK_FALSE(g.truncated);

  // The call chain into m2 is the second hop from the root group.
  auto shallow = engine.build_all(1);
  REQUIRE(shallow.size() == 1);
  CHECK(shallow[0].truncated);
  CHECK_FALSE(shallow[0].has_node(syn.methods[2].ref()));
  CHECK_FALSE(shallow[0].has_node(synthetic_write()));
}

TEST_CASE("depth bound: results grow monotonically and converge once untruncated") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    CAPTURE(seed);
    auto syn = generate_program(seed);
    auto b = build(syn);
    FlowEngine engine(*b->program, b->catalog);
    auto full = engine.build_all(kUnbounded);
    std::vector<GlobalFlow> previous;
    for (std::size_t depth = 0; depth <= 8; ++depth) {
      auto bounded = engine.build_all(depth);
      REQUIRE(bounded.size() == full.size());  // roots never depend on depth
      for (std::size_t i = 0; i < bounded.size(); ++i) {
        auto steps = as_set(bounded[i].steps), all = as_set(full[i].steps);
        CHECK(std::includes(all.begin(), all.end(), steps.begin(), steps.end()));
        if (!previous.empty()) {
          auto before = as_set(previous[i].steps);
          CHECK(std::includes(steps.begin(), steps.end(), before.begin(), before.end()));
        }
        if (!bounded[i].truncated) CHECK(steps == all);
        if (steps != all) CHECK(bounded[i].truncated);
      }
      previous = std::move(bounded);
    }
  }
}

TEST_CASE("synthetic programs agree with brute-force path enumeration") {
  std::size_t total_flows = 0, total_paths = 0, with_sinks = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    CAPTURE(seed);
    auto syn = generate_program(seed);
    auto b = build(syn);
    REQUIRE(b->diag.empty());
    auto expected = brute_force_flows(syn, *b->program, kPathBudget);
    REQUIRE_FALSE(expected.exhausted);
    total_paths += expected.paths;

    FlowEngine engine(*b->program, b->catalog);
    auto actual = engine.build_all(kUnbounded);
    REQUIRE(actual.size() == expected.flows.size());
    for (std::size_t i = 0; i < actual.size(); ++i) {
      const auto& g = actual[i];
      const auto& e = expected.flows[i];
      CHECK(g.id == "O" + std::to_string(i + 1));
      CHECK(g.source == e.source);
      CHECK_FALSE(g.truncated);
      CHECK(as_set(g.flows) == e.flows);
      CHECK(as_set(g.steps) == e.steps);
      CHECK(as_set(g.nodes) == e.nodes);
      CHECK(g.nodes.size() == e.nodes.size());
      CHECK(as_set(g.edges) == e.edges);
      std::set<MethodRef> sinks;
      for (const auto& s : g.sinks) sinks.insert(s.method);
      CHECK(sinks == e.sinks);
      REQUIRE(g.nodes.size() >= 2);
      CHECK(g.nodes[0] == synthetic_read());
      CHECK(g.nodes[1] == g.source.method);
      with_sinks += e.sinks.empty() ? 0 : 1;
    }
    total_flows += actual.size();
  }
  MESSAGE("flows: " << total_flows << ", with sinks: " << with_sinks << ", paths: " << total_paths);
  CHECK(total_flows > 200);
  CHECK(with_sinks > 50);
}
