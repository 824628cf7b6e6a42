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

// Chaining local flows into privacy flows.
//
// A privacy flow starts at one source invocation site whose result reaches a
// return of the enclosing method. It grows by two rules:
//  - return_chain: a flow ending at a return of m continues in every caller
//    of m, beginning at the invoke of m;
//  - call_chain: a flow ending at an invoke continues in every CHA callee
//    with code, beginning at start.
// Output primitives end a chain.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "privflow/call_graph.hpp"
#include "privflow/local_flow.hpp"

namespace privflow {

inline constexpr std::size_t kDefaultMaxDepth = 64;

enum class ChainRule { return_chain, call_chain };

std::string_view to_string(ChainRule rule);

struct FlowStep {
  LocalFlow from;
  LocalFlow to;
  ChainRule rule = ChainRule::return_chain;

  auto operator<=>(const FlowStep&) const = default;
  bool operator==(const FlowStep&) const = default;
};

struct SourceSite {
  MethodRef method;
  StmtId site = 0;

  auto operator<=>(const SourceSite&) const = default;
  bool operator==(const SourceSite&) const = default;
};

/// Tainted data written to `field` by flow `from_flow` and read by `reader`.
struct FieldLink {
  std::string from_flow;
  FieldKey field;
  MethodRef writer;
  MethodRef reader;

  auto operator<=>(const FieldLink&) const = default;
  bool operator==(const FieldLink&) const = default;
};

using MethodEdge = std::pair<MethodRef, MethodRef>;

struct SinkUse {
  MethodRef method;
  Category category = Category::other;

  bool operator==(const SinkUse&) const = default;
};

struct GlobalFlow {
  std::string id;
  SourceSite source;
  MethodRef source_method;  // the catalogued method invoked at the site
  Category source_category = Category::other;
  LocalFlow root;
  std::vector<LocalFlow> roots;  // every source flow from the site; root is the first
  std::vector<LocalFlow> flows;  // all local flows of the privacy flow, sorted
  std::vector<FlowStep> steps;   // sorted
  /// Source method first, then the methods in chain order (depth-first by
  /// site), each sink right after the method that calls it.
  std::vector<MethodRef> nodes;
  /// Callee to caller, sorted.
  std::vector<MethodEdge> edges;
  std::vector<SinkUse> sinks;  // in node order
  std::vector<FieldLink> field_links;
  std::vector<FieldTaint> field_taints;
  std::vector<TypeChange> type_changes;
  bool truncated = false;

  bool has_node(const MethodRef& m) const;
};

struct PrivacyFlowGraph {
  std::set<MethodRef> nodes;
  std::set<MethodEdge> edges;
};

/// Per-program flow machinery: call graph plus one memoizing local-flow
/// analyzer per lowered method.
class FlowEngine {
 public:
  FlowEngine(const Program& program, const Catalog& catalog, RichTypePolicy policy = RichTypePolicy::strict,
             unsigned jobs = 1);

  const Program& program() const { return program_; }
  const Catalog& catalog() const { return catalog_; }
  const CallGraph& call_graph() const { return graph_; }
  const MethodFlowAnalyzer* analyzer(const MethodRef& m) const;

  /// Invocation sites matched as sources in lowered methods, sorted.
  std::vector<SourceSite> source_sites() const;

  /// nullopt when the site's result never reaches a return.
  std::optional<GlobalFlow> build_privacy_flow(const SourceSite& site, std::size_t max_depth = kDefaultMaxDepth) const;

  /// All privacy flows, ids assigned in source-site order, field links added.
  std::vector<GlobalFlow> build_all(std::size_t max_depth = kDefaultMaxDepth, unsigned jobs = 1) const;

 private:
  const Program& program_;
  const Catalog& catalog_;
  CallGraph graph_;
  std::map<MethodRef, std::unique_ptr<MethodFlowAnalyzer>> analyzers_;
};

/// Adds field links between (and within) flows. Readers are flow nodes whose
/// code loads the field.
void link_field_flows(std::vector<GlobalFlow>& flows, const Program& program);

PrivacyFlowGraph union_graph(const std::vector<GlobalFlow>& flows);

}  // namespace privflow
