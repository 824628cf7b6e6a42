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

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "privflow/catalog.hpp"
#include "privflow/program.hpp"

namespace privflow {

struct CallEdge {
  MethodRef caller;
  StmtId site = 0;
  MethodRef callee;

  auto operator<=>(const CallEdge&) const = default;
  bool operator==(const CallEdge&) const = default;
};

struct CallSite {
  MethodRef caller;
  StmtId site = 0;

  auto operator<=>(const CallSite&) const = default;
  bool operator==(const CallSite&) const = default;
};

/// Whole-program call graph under class-hierarchy analysis. Sites are IR
/// statement ids of the caller's CFG.
class CallGraph {
 public:
  void add_node(const MethodRef& m) { nodes_.insert(m); }
  void add_edge(CallEdge edge);

  const std::set<MethodRef>& nodes() const { return nodes_; }
  const std::vector<CallEdge>& edges() const { return edges_; }

  const std::vector<MethodRef>& callees(const MethodRef& caller, StmtId site) const;
  const std::vector<CallSite>& callers(const MethodRef& callee) const;

 private:
  std::set<MethodRef> nodes_;
  std::vector<CallEdge> edges_;  // sorted
  std::map<CallSite, std::vector<MethodRef>> by_site_;
  std::map<MethodRef, std::vector<CallSite>> by_callee_;
};

/// CHA targets of one invocation. Static and special calls bind to the named
/// method, found by walking up the supertypes; virtual and interface calls
/// add every override declared in a loaded subtype. Only methods with code
/// are returned.
std::vector<MethodRef> resolve_call(const Program& program, const InvokeInfo& invoke);

/// Callees with code become internal edges; a site with none gets one edge
/// to its (external) target as a leaf. Dynamic call sites get no edges.
CallGraph build_call_graph(const Program& program);

/// Classes with at least one invocation of a catalogued source.
std::set<std::string> find_coi(const std::vector<ClassArtifact>& classes, const Catalog& catalog,
                               const ClassHierarchy& hierarchy);

}  // namespace privflow
