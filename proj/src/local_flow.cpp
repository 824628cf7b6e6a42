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

#include "privflow/local_flow.hpp"

#include <algorithm>
#include <deque>

namespace privflow {

std::optional<RichTypePolicy> parse_rich_type_policy(std::string_view text) {
  if (text == "strict") return RichTypePolicy::strict;
  if (text == "extended") return RichTypePolicy::extended;
  return std::nullopt;
}

bool is_rich_type(std::string_view d, RichTypePolicy policy) {
  if (d.empty()) return false;
  switch (d[0]) {
    case 'I': case 'B': return d.size() == 1;
    case 'L': return d.size() > 2 && d.back() == ';';
    case '[': return is_rich_type(d.substr(1), policy);
    case 'C': case 'S': case 'J': case 'F': case 'D':
      return d.size() == 1 && policy == RichTypePolicy::extended;
    default: return false;
  }
}

std::string_view to_string(PointKind kind) {
  switch (kind) {
    case PointKind::start: return "start";
    case PointKind::invoke: return "invoke";
    case PointKind::input_primitive: return "input_primitive";
    case PointKind::output_primitive: return "output_primitive";
    case PointKind::return_point: return "return";
  }
  return "?";
}

std::string_view to_string(FlowKind kind) {
  switch (kind) {
    case FlowKind::source_flow: return "source_flow";
    case FlowKind::sink_flow: return "sink_flow";
    case FlowKind::process_flow: return "process_flow";
  }
  return "?";
}

std::string FlowPoint::describe() const {
  std::string out(to_string(kind));
  if (site) out += "@" + std::to_string(*site);
  if (target) out += " " + target->java_signature();
  return out;
}

FlowPoint start_point() { return FlowPoint{}; }

RoleTable classify_sites(const Cfg& cfg, const Catalog& catalog, const ClassHierarchy& hierarchy,
                         const InternalPredicate& internal) {
  RoleTable roles(cfg.statements.size());
  for (const auto& s : cfg.statements) {
    if (!s.invoke) continue;
    SiteRole role;
    if (s.invoke->kind != InvokeKind::dynamic_call) {
      if (auto m = catalog.match(s.invoke->target, hierarchy)) {
        role.kind = m->kind == EntryKind::source ? PointKind::input_primitive : PointKind::output_primitive;
        role.entry = m->entry;
        role.opaque = false;
      }
    }
    if (role.kind == PointKind::invoke && internal && internal(s.id, *s.invoke)) role.opaque = false;
    roles[s.id] = role;
  }
  return roles;
}

std::vector<FlowPoint> points_from_roles(const Cfg& cfg, const RoleTable& roles) {
  std::vector<FlowPoint> out{start_point()};
  for (const auto& s : cfg.statements) {
    if (s.kind == StmtKind::return_value) out.push_back({PointKind::return_point, s.id, std::nullopt});
    if (s.invoke && roles[s.id]) out.push_back({roles[s.id]->kind, s.id, s.invoke->target});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FlowPoint> collect_points(const Cfg& cfg, const Catalog& catalog, const ClassHierarchy& hierarchy) {
  return points_from_roles(cfg, classify_sites(cfg, catalog, hierarchy));
}

std::vector<Slot> seed_slots(const Cfg& cfg, const RoleTable& roles, const FlowPoint& begin) {
  std::vector<Slot> out;
  if (begin.kind == PointKind::start) {
    for (const auto& [slot, type] : cfg.params) out.push_back(slot);
  } else if (begin.site && *begin.site < cfg.statements.size()) {
    const auto& s = cfg.statements[*begin.site];
    if (s.invoke) {
      if (auto p = s.invoke->produced()) out.push_back(*p);
      const auto& role = roles[s.id];
      if (begin.kind == PointKind::input_primitive && role && role->entry && role->entry->result_via_param) {
        const auto& params = s.invoke->target.param_types;
        for (std::size_t k = 0; k < params.size() && k < s.invoke->args.size(); ++k)
          if (params[k].starts_with("[")) out.push_back(s.invoke->args[k]);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Taint state: one bit per IR slot followed by one bit per field key.
class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }
  bool merge(const Bits& other) {
    bool changed = false;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      auto next = words_[k] | other.words_[k];
      changed |= next != words_[k];
      words_[k] = next;
    }
    return changed;
  }

 private:
  std::vector<std::uint64_t> words_;
};

class Propagator {
 public:
  Propagator(const Cfg& cfg, const RoleTable& roles, RichTypePolicy policy)
      : cfg_(cfg), roles_(roles), policy_(policy) {
    for (const auto& s : cfg.statements)
      if (s.field) fields_.push_back(s.field->field);
    std::sort(fields_.begin(), fields_.end());
    fields_.erase(std::unique(fields_.begin(), fields_.end()), fields_.end());
    width_ = cfg.slot_count + fields_.size();
  }

  TaintRun run(const FlowPoint& begin) {
    TaintRun result;
    const std::size_t n = cfg_.statements.size();
    if (n == 0 || !begin.can_begin()) return result;
    if (begin.kind != PointKind::start && (!begin.site || *begin.site >= n)) return result;

    std::vector<Bits> in(n, Bits(width_));
    std::vector<bool> queued(n, false);
    std::deque<StmtId> work;
    auto enqueue = [&](StmtId id) {
      if (!queued[id]) {
        queued[id] = true;
        work.push_back(id);
      }
    };
    auto seeds = seed_slots(cfg_, roles_, begin);
    std::optional<StmtId> seed_at;
    if (begin.kind == PointKind::start) {
      for (auto s : seeds) in[cfg_.entry].set(s);
      enqueue(cfg_.entry);
    } else {
      seed_at = *begin.site;
      enqueue(*begin.site);
    }

    auto succ = cfg_.successor_table();
    while (!work.empty()) {
      StmtId id = work.front();
      work.pop_front();
      queued[id] = false;
      Bits out = in[id];
      transfer(cfg_.statements[id], out);
      if (seed_at && *seed_at == id)
        for (auto s : seeds) out.set(s);
      for (auto t : succ[id])
        if (in[t].merge(out)) enqueue(t);
    }
    collect(begin, in, result);
    return result;
  }

 private:
  std::size_t field_bit(const FieldKey& key) const {
    return cfg_.slot_count +
           static_cast<std::size_t>(std::lower_bound(fields_.begin(), fields_.end(), key) - fields_.begin());
  }

  bool any_use(const Statement& s, const Bits& b) const {
    return std::any_of(s.uses.begin(), s.uses.end(), [&](Slot u) { return b.test(u); });
  }

  bool any_arg(const InvokeInfo& inv, const Bits& b) const {
    return std::any_of(inv.args.begin(), inv.args.end(), [&](Slot u) { return b.test(u); });
  }

  bool opaque(const Statement& s) const {
    const auto& role = roles_[s.id];
    return !role || (role->kind == PointKind::invoke && role->opaque);
  }

  void transfer(const Statement& s, Bits& b) const {
    switch (s.kind) {
      case StmtKind::assign: {
        bool t = any_use(s, b);
        for (auto d : s.defs) b.assign(d, t);
        break;
      }
      case StmtKind::field_load: {
        bool t = any_use(s, b) || b.test(field_bit(s.field->field));
        for (auto d : s.defs) b.assign(d, t);
        break;
      }
      case StmtKind::field_store:
        if (s.stored_value && b.test(*s.stored_value)) {
          b.set(field_bit(s.field->field));
          if (s.weak_def) b.set(*s.weak_def);
        }
        break;
      case StmtKind::invoke: {
        const auto& inv = *s.invoke;
        if (opaque(s)) {
          bool args = any_arg(inv, b);
          bool t = args || (inv.receiver && b.test(*inv.receiver));
          if (inv.result) b.assign(*inv.result, t);
          if (args && inv.receiver) b.set(*inv.receiver);
        } else if (inv.result) {
          b.reset(*inv.result);
        }
        break;
      }
      case StmtKind::other:
        if (s.weak_def && s.stored_value && b.test(*s.stored_value)) b.set(*s.weak_def);
        break;
      case StmtKind::return_value:
        break;
    }
  }

  std::optional<TypeDescriptor> end_type(const Statement& s, const Bits& b) const {
    const auto& inv = *s.invoke;
    if (inv.receiver && b.test(*inv.receiver)) {
      auto t = object_descriptor(inv.target.declaring_class);
      if (is_rich_type(t, policy_)) return t;
    }
    for (std::size_t k = 0; k < inv.args.size(); ++k) {
      if (!b.test(inv.args[k])) continue;
      const auto& t = inv.target.param_types[k];
      if (is_rich_type(t, policy_)) return t;
    }
    return std::nullopt;
  }

  void collect(const FlowPoint& begin, const std::vector<Bits>& in, TaintRun& result) const {
    auto add_flow = [&](const FlowPoint& end, TypeDescriptor type) {
      if (!is_rich_type(type, policy_)) return;
      FlowKind kind = FlowKind::process_flow;
      if (begin.kind == PointKind::input_primitive && end.kind == PointKind::return_point)
        kind = FlowKind::source_flow;
      else if (begin.kind == PointKind::start && end.kind == PointKind::output_primitive)
        kind = FlowKind::sink_flow;
      result.flows.push_back({cfg_.method, begin, end, kind, std::move(type)});
    };

    for (const auto& s : cfg_.statements) {
      const Bits& b = in[s.id];
      switch (s.kind) {
        case StmtKind::return_value:
          if (!s.uses.empty() && b.test(s.uses.front()))
            add_flow({PointKind::return_point, s.id, std::nullopt}, s.value_type);
          break;
        case StmtKind::invoke: {
          const auto& role = roles_[s.id];
          PointKind kind = role ? role->kind : PointKind::invoke;
          if (kind != PointKind::input_primitive) {
            if (auto t = end_type(s, b)) add_flow({kind, s.id, s.invoke->target}, *t);
          }
          if (opaque(s)) record_call_change(s, b, result);
          break;
        }
        case StmtKind::field_store:
          if (s.stored_value && b.test(*s.stored_value))
            result.field_taints.push_back({s.field->field, cfg_.method, begin, s.id});
          break;
        case StmtKind::assign:
          if ((s.detail == StmtDetail::conversion || s.detail == StmtDetail::cast) && !s.uses.empty() &&
              b.test(s.uses.front()) && s.use_types.front() != s.value_type)
            result.type_changes.push_back({cfg_.method, s.id, s.offset, s.use_types.front(), s.value_type,
                                           s.detail == StmtDetail::conversion ? "conversion" : "cast"});
          break;
        default:
          break;
      }
    }
    std::sort(result.flows.begin(), result.flows.end());
    result.flows.erase(std::unique(result.flows.begin(), result.flows.end()), result.flows.end());
    std::sort(result.field_taints.begin(), result.field_taints.end());
    std::sort(result.type_changes.begin(), result.type_changes.end());
  }

  // A library call that hands back tainted data under a different type.
  void record_call_change(const Statement& s, const Bits& b, TaintRun& result) const {
    const auto& inv = *s.invoke;
    if (!inv.result) return;
    std::optional<TypeDescriptor> from;
    if (inv.receiver && b.test(*inv.receiver)) from = object_descriptor(inv.target.declaring_class);
    for (std::size_t k = 0; !from && k < inv.args.size(); ++k)
      if (b.test(inv.args[k])) from = inv.target.param_types[k];
    if (!from || *from == inv.target.return_type) return;
    result.type_changes.push_back(
        {cfg_.method, s.id, s.offset, *from, inv.target.return_type, inv.target.java_signature()});
  }

  const Cfg& cfg_;
  const RoleTable& roles_;
  RichTypePolicy policy_;
  std::vector<FieldKey> fields_;
  std::size_t width_ = 0;
};

}  // namespace

TaintRun propagate(const Cfg& cfg, const RoleTable& roles, const FlowPoint& begin, RichTypePolicy policy) {
  return Propagator(cfg, roles, policy).run(begin);
}

std::vector<LocalFlow> compute_local_flows(const Cfg& cfg, const RoleTable& roles,
                                           const std::vector<FlowPoint>& points, RichTypePolicy policy) {
  Propagator p(cfg, roles, policy);
  std::vector<LocalFlow> out;
  for (const auto& begin : points) {
    if (!begin.can_begin()) continue;
    auto run = p.run(begin);
    out.insert(out.end(), run.flows.begin(), run.flows.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MethodFlowAnalyzer::MethodFlowAnalyzer(const Cfg& cfg, RoleTable roles, RichTypePolicy policy)
    : cfg_(cfg), roles_(std::move(roles)), policy_(policy), points_(points_from_roles(cfg_, roles_)) {}

std::optional<FlowPoint> MethodFlowAnalyzer::point_at(StmtId site) const {
  for (const auto& p : points_)
    if (p.site && *p.site == site && p.kind != PointKind::return_point) return p;
  return std::nullopt;
}

std::shared_ptr<const TaintRun> MethodFlowAnalyzer::flows_from(const FlowPoint& begin) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(begin); it != memo_.end()) return it->second;
  }
  auto run = std::make_shared<const TaintRun>(propagate(cfg_, roles_, begin, policy_));
  std::lock_guard lock(mutex_);
  return memo_.emplace(begin, std::move(run)).first->second;
}

}  // namespace privflow
