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

#include "privflow/call_graph.hpp"

#include <algorithm>

namespace privflow {

namespace {

const std::vector<MethodRef> kNoMethods;
const std::vector<CallSite> kNoSites;

const MethodBody* declared(const Program& program, const std::string& cls, const MethodRef& target) {
  const auto* c = program.find_class(cls);
  if (!c) return nullptr;
  const auto* m = c->find_method(target.name, target.param_types);
  if (m && m->ref.return_type != target.return_type) return nullptr;
  return m;
}

}  // namespace

void CallGraph::add_edge(CallEdge edge) {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), edge);
  if (it != edges_.end() && *it == edge) return;
  nodes_.insert(edge.caller);
  nodes_.insert(edge.callee);
  by_site_[{edge.caller, edge.site}].push_back(edge.callee);
  by_callee_[edge.callee].push_back({edge.caller, edge.site});
  edges_.insert(it, std::move(edge));
}

const std::vector<MethodRef>& CallGraph::callees(const MethodRef& caller, StmtId site) const {
  auto it = by_site_.find({caller, site});
  return it == by_site_.end() ? kNoMethods : it->second;
}

const std::vector<CallSite>& CallGraph::callers(const MethodRef& callee) const {
  auto it = by_callee_.find(callee);
  return it == by_callee_.end() ? kNoSites : it->second;
}

std::vector<MethodRef> resolve_call(const Program& program, const InvokeInfo& invoke) {
  std::vector<MethodRef> out;
  if (invoke.kind == InvokeKind::dynamic_call) return out;
  const auto& target = invoke.target;
  const auto& hierarchy = program.hierarchy();

  const MethodBody* named = nullptr;
  for (const auto& cls : hierarchy.ancestors(target.declaring_class)) {
    if ((named = declared(program, cls, target))) break;
  }
  if (named && named->has_code) out.push_back(named->ref);

  bool dispatch = invoke.kind == InvokeKind::virtual_call || invoke.kind == InvokeKind::interface_call;
  if (dispatch && !target.is_constructor()) {
    for (const auto& sub : hierarchy.descendants(target.declaring_class)) {
      if (sub == target.declaring_class) continue;
      const auto* m = declared(program, sub, target);
      if (m && m->has_code && !m->is_static()) out.push_back(m->ref);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CallGraph build_call_graph(const Program& program) {
  CallGraph graph;
  for (const auto& c : program.classes())
    for (const auto& m : c.methods) graph.add_node(m.ref);
  for (const auto& caller : program.analyzable_methods()) {
    const Cfg* cfg = program.cfg(caller);
    for (const auto& s : cfg->statements) {
      if (!s.invoke || s.invoke->kind == InvokeKind::dynamic_call) continue;
      auto targets = resolve_call(program, *s.invoke);
      if (targets.empty()) targets.push_back(s.invoke->target);
      for (auto& t : targets) graph.add_edge({caller, s.id, std::move(t)});
    }
  }
  return graph;
}

std::set<std::string> find_coi(const std::vector<ClassArtifact>& classes, const Catalog& catalog,
                               const ClassHierarchy& hierarchy) {
  std::set<std::string> out;
  Diagnostics ignored;
  for (const auto& c : classes) {
    for (const auto& m : c.methods) {
      bool hit = false;
      for (const auto& site : invocation_sites(m, ignored)) {
        if (site.kind == InvokeKind::dynamic_call) continue;
        auto match = catalog.match(site.target, hierarchy);
        if (match && match->kind == EntryKind::source) {
          hit = true;
          break;
        }
      }
      if (hit) {
        out.insert(c.name);
        break;
      }
    }
  }
  return out;
}

}  // namespace privflow
