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

#include "privflow/global_flow.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <tuple>

#include "privflow/parallel.hpp"

namespace privflow {

std::string_view to_string(ChainRule rule) {
  return rule == ChainRule::return_chain ? "return_chain" : "call_chain";
}

bool GlobalFlow::has_node(const MethodRef& m) const {
  return std::find(nodes.begin(), nodes.end(), m) != nodes.end();
}

FlowEngine::FlowEngine(const Program& program, const Catalog& catalog, RichTypePolicy policy, unsigned jobs)
    : program_(program), catalog_(catalog), graph_(build_call_graph(program)) {
  const auto& methods = program.analyzable_methods();
  std::vector<std::unique_ptr<MethodFlowAnalyzer>> built(methods.size());
  parallel_for(methods.size(), jobs, [&](std::size_t i) {
    const Cfg& cfg = *program.cfg(methods[i]);
    auto internal = [&](StmtId site, const InvokeInfo&) {
      const auto& callees = graph_.callees(cfg.method, site);
      return std::any_of(callees.begin(), callees.end(),
                         [&](const MethodRef& c) { return program.cfg(c) != nullptr; });
    };
    auto roles = classify_sites(cfg, catalog, program.hierarchy(), internal);
    built[i] = std::make_unique<MethodFlowAnalyzer>(cfg, std::move(roles), policy);
  });
  for (std::size_t i = 0; i < methods.size(); ++i) analyzers_.emplace(methods[i], std::move(built[i]));
}

const MethodFlowAnalyzer* FlowEngine::analyzer(const MethodRef& m) const {
  auto it = analyzers_.find(m);
  return it == analyzers_.end() ? nullptr : it->second.get();
}

std::vector<SourceSite> FlowEngine::source_sites() const {
  std::vector<SourceSite> out;
  for (const auto& [method, a] : analyzers_)
    for (const auto& p : a->points())
      if (p.kind == PointKind::input_primitive) out.push_back({method, *p.site});
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

using GroupKey = std::pair<MethodRef, FlowPoint>;

struct Expansion {
  std::map<GroupKey, std::vector<LocalFlow>> groups;  // visited groups with their flows
  std::set<GroupKey> reached;                         // including groups without flows
  std::set<FlowStep> steps;
  bool truncated = false;
};

}  // namespace

std::optional<GlobalFlow> FlowEngine::build_privacy_flow(const SourceSite& site, std::size_t max_depth) const {
  const auto* a = analyzer(site.method);
  if (!a) return std::nullopt;
  auto begin = a->point_at(site.site);
  if (!begin || begin->kind != PointKind::input_primitive) return std::nullopt;
  auto root_run = a->flows_from(*begin);

  GlobalFlow g;
  g.source = site;
  g.source_method = *begin->target;
  if (const auto& role = a->roles()[site.site]; role && role->entry) g.source_category = role->entry->category;
  for (const auto& f : root_run->flows)
    if (f.kind == FlowKind::source_flow) g.roots.push_back(f);
  if (g.roots.empty()) return std::nullopt;
  g.root = g.roots.front();

  Expansion ex;
  GroupKey root_key{site.method, *begin};
  ex.groups[root_key] = g.roots;
  ex.reached.insert(root_key);
  std::deque<std::pair<GroupKey, std::size_t>> queue{{root_key, 0}};

  while (!queue.empty()) {
    auto [key, depth] = queue.front();
    queue.pop_front();
    const auto flows = ex.groups[key];
    for (const auto& f : flows) {
      std::vector<std::pair<GroupKey, ChainRule>> next;
      if (f.end.kind == PointKind::return_point) {
        for (const auto& caller : graph_.callers(f.method)) {
          const auto* ca = analyzer(caller.caller);
          if (!ca) continue;
          auto p = ca->point_at(caller.site);
          if (p && p->kind == PointKind::invoke) next.push_back({{caller.caller, *p}, ChainRule::return_chain});
        }
      } else if (f.end.kind == PointKind::invoke) {
        for (const auto& callee : graph_.callees(f.method, *f.end.site))
          if (analyzer(callee)) next.push_back({{callee, start_point()}, ChainRule::call_chain});
      }
      for (const auto& [target, rule] : next) {
        if (depth + 1 > max_depth) {
          ex.truncated = true;
          continue;
        }
        ex.reached.insert(target);
        auto run = analyzer(target.first)->flows_from(target.second);
        if (run->flows.empty()) continue;
        for (const auto& t : run->flows) ex.steps.insert({f, t, rule});
        if (!ex.groups.contains(target)) {
          ex.groups.emplace(target, run->flows);
          queue.push_back({target, depth + 1});
        }
      }
    }
  }

  g.truncated = ex.truncated;
  g.steps.assign(ex.steps.begin(), ex.steps.end());
  std::set<LocalFlow> all(g.roots.begin(), g.roots.end());
  for (const auto& s : ex.steps) all.insert(s.to);
  g.flows.assign(all.begin(), all.end());

  std::set<FieldTaint> taints;
  std::set<TypeChange> changes;
  for (const auto& key : ex.reached) {
    auto run = analyzer(key.first)->flows_from(key.second);
    taints.insert(run->field_taints.begin(), run->field_taints.end());
    changes.insert(run->type_changes.begin(), run->type_changes.end());
  }
  g.field_taints.assign(taints.begin(), taints.end());
  // One observation per statement, whichever begin point saw it.
  for (const auto& c : changes) {
    bool dup = std::any_of(g.type_changes.begin(), g.type_changes.end(), [&](const TypeChange& o) {
      return o.method == c.method && o.site == c.site;
    });
    if (!dup) g.type_changes.push_back(c);
  }

  // Node order: depth-first over groups, steps taken in end-site order.
  std::set<MethodRef> seen;
  auto emit = [&](const MethodRef& m) {
    if (seen.insert(m).second) g.nodes.push_back(m);
  };
  std::map<LocalFlow, std::vector<const FlowStep*>> out_steps;
  for (const auto& s : g.steps) out_steps[s.from].push_back(&s);
  std::set<GroupKey> dfs_seen;
  auto end_order = [](const LocalFlow& x, const LocalFlow& y) {
    return std::tie(x.end.site, x.end) < std::tie(y.end.site, y.end);
  };
  std::function<void(const GroupKey&)> visit = [&](const GroupKey& key) {
    if (!dfs_seen.insert(key).second) return;
    emit(key.first);
    auto flows = ex.groups[key];
    std::sort(flows.begin(), flows.end(), end_order);
    for (const auto& f : flows) {
      if (f.end.kind == PointKind::output_primitive) {
        emit(*f.end.target);
        const auto& role = analyzer(f.method)->roles()[*f.end.site];
        SinkUse use{*f.end.target, role && role->entry ? role->entry->category : Category::other};
        if (std::find(g.sinks.begin(), g.sinks.end(), use) == g.sinks.end()) g.sinks.push_back(use);
        continue;
      }
      for (const auto* s : out_steps[f]) visit({s->to.method, s->to.begin});
    }
  };
  emit(g.source_method);
  visit(root_key);

  std::set<MethodEdge> edges{{g.source_method, site.method}};
  for (const auto& s : g.steps) {
    if (s.rule == ChainRule::return_chain)
      edges.insert({s.from.method, s.to.method});
    else
      edges.insert({s.to.method, s.from.method});
  }
  for (const auto& f : g.flows)
    if (f.end.kind == PointKind::output_primitive) edges.insert({*f.end.target, f.method});
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

std::vector<GlobalFlow> FlowEngine::build_all(std::size_t max_depth, unsigned jobs) const {
  auto sites = source_sites();
  std::vector<std::optional<GlobalFlow>> built(sites.size());
  parallel_for(sites.size(), jobs, [&](std::size_t i) { built[i] = build_privacy_flow(sites[i], max_depth); });
  std::vector<GlobalFlow> out;
  for (auto& b : built) {
    if (!b) continue;
    b->id = "O" + std::to_string(out.size() + 1);
    out.push_back(std::move(*b));
  }
  link_field_flows(out, program_);
  return out;
}

void link_field_flows(std::vector<GlobalFlow>& flows, const Program& program) {
  // Fields loaded by each method, computed once.
  std::map<MethodRef, std::set<FieldKey>> reads;
  auto reads_of = [&](const MethodRef& m) -> const std::set<FieldKey>& {
    auto it = reads.find(m);
    if (it != reads.end()) return it->second;
    std::set<FieldKey> keys;
    if (const Cfg* cfg = program.cfg(m))
      for (const auto& s : cfg->statements)
        if (s.kind == StmtKind::field_load) keys.insert(s.field->field);
    return reads.emplace(m, std::move(keys)).first->second;
  };

  for (auto& b : flows) {
    std::set<FieldLink> links;
    for (const auto& a : flows) {
      for (const auto& t : a.field_taints)
        for (const auto& n : b.nodes)
          if (reads_of(n).contains(t.field)) links.insert({a.id, t.field, t.method, n});
    }
    b.field_links.assign(links.begin(), links.end());
  }
}

PrivacyFlowGraph union_graph(const std::vector<GlobalFlow>& flows) {
  PrivacyFlowGraph g;
  for (const auto& f : flows) {
    g.nodes.insert(f.nodes.begin(), f.nodes.end());
    g.edges.insert(f.edges.begin(), f.edges.end());
  }
  return g;
}

}  // namespace privflow
