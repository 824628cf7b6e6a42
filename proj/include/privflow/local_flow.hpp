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

// Per-method data-flow points and the local flows between them.
//
// Taint semantics (forward, may):
//  - assignments and phis strongly update their definition: tainted iff some
//    used slot is tainted; field loads are also tainted by their field key;
//  - field stores taint the (receiver-insensitive) field key and weakly the
//    receiver object; array stores weakly taint the array;
//  - calls into library code that is neither catalogued nor loaded pass
//    taint from receiver/arguments to the result, and from arguments to the
//    receiver; calls that resolve to loaded code, sources and sinks produce
//    untainted results (the global chaining rules take over there).

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "privflow/catalog.hpp"
#include "privflow/ir.hpp"
#include "privflow/rich_type.hpp"

namespace privflow {

enum class PointKind { start, invoke, input_primitive, output_primitive, return_point };

std::string_view to_string(PointKind kind);

struct FlowPoint {
  PointKind kind = PointKind::start;
  std::optional<StmtId> site;       // absent only for start
  std::optional<MethodRef> target;  // invoked method, for the three call kinds

  bool can_begin() const {
    return kind == PointKind::start || kind == PointKind::invoke || kind == PointKind::input_primitive;
  }
  bool can_end() const {
    return kind == PointKind::invoke || kind == PointKind::output_primitive || kind == PointKind::return_point;
  }
  std::string describe() const;

  auto operator<=>(const FlowPoint&) const = default;
  bool operator==(const FlowPoint&) const = default;
};

FlowPoint start_point();

enum class FlowKind { source_flow, sink_flow, process_flow };

std::string_view to_string(FlowKind kind);

struct LocalFlow {
  MethodRef method;
  FlowPoint begin;
  FlowPoint end;
  FlowKind kind = FlowKind::process_flow;
  TypeDescriptor value_type;

  auto operator<=>(const LocalFlow&) const = default;
  bool operator==(const LocalFlow&) const = default;
};

/// A tainted value stored into a field while propagating from `begin`.
struct FieldTaint {
  FieldKey field;
  MethodRef method;
  FlowPoint begin;
  StmtId site = 0;

  auto operator<=>(const FieldTaint&) const = default;
  bool operator==(const FieldTaint&) const = default;
};

/// A statement where tainted data changes its type descriptor.
struct TypeChange {
  MethodRef method;
  StmtId site = 0;
  std::uint32_t offset = 0;
  TypeDescriptor from;
  TypeDescriptor to;
  std::string via;  // "conversion", "cast", or the library call signature

  auto operator<=>(const TypeChange&) const = default;
  bool operator==(const TypeChange&) const = default;
};

/// What an invocation statement is, as far as flow points are concerned.
struct SiteRole {
  PointKind kind = PointKind::invoke;
  const CatalogEntry* entry = nullptr;  // for input/output primitives
  /// Library call with no loaded code: passes taint through.
  bool opaque = true;
};

/// Indexed by statement id; set for invoke statements only.
using RoleTable = std::vector<std::optional<SiteRole>>;

/// Reports whether an invoke site resolves to at least one loaded method
/// with code.
using InternalPredicate = std::function<bool(StmtId, const InvokeInfo&)>;

/// Dynamic-call sites are never matched against the catalog.
RoleTable classify_sites(const Cfg& cfg, const Catalog& catalog, const ClassHierarchy& hierarchy,
                         const InternalPredicate& internal = {});

std::vector<FlowPoint> points_from_roles(const Cfg& cfg, const RoleTable& roles);
std::vector<FlowPoint> collect_points(const Cfg& cfg, const Catalog& catalog, const ClassHierarchy& hierarchy);

struct TaintRun {
  std::vector<LocalFlow> flows;           // sorted
  std::vector<FieldTaint> field_taints;   // sorted
  std::vector<TypeChange> type_changes;   // sorted
};

/// Propagates taint seeded at `begin` to a fixpoint and reports every rich
/// flow ending at a return, invoke or output primitive.
TaintRun propagate(const Cfg& cfg, const RoleTable& roles, const FlowPoint& begin,
                   RichTypePolicy policy = RichTypePolicy::strict);

/// Flows from every candidate begin point in `points`.
std::vector<LocalFlow> compute_local_flows(const Cfg& cfg, const RoleTable& roles,
                                           const std::vector<FlowPoint>& points,
                                           RichTypePolicy policy = RichTypePolicy::strict);

/// Slots seeded by `begin` (parameters for start, the produced value and
/// by-reference array arguments for calls).
std::vector<Slot> seed_slots(const Cfg& cfg, const RoleTable& roles, const FlowPoint& begin);

/// Memoizing front end over one method. Flows from start and from input
/// primitives are what callers ask for first; flows from plain invoke points
/// are computed only when a chaining rule reaches them.
class MethodFlowAnalyzer {
 public:
  MethodFlowAnalyzer(const Cfg& cfg, RoleTable roles, RichTypePolicy policy);

  const Cfg& cfg() const { return cfg_; }
  const RoleTable& roles() const { return roles_; }
  const std::vector<FlowPoint>& points() const { return points_; }
  std::optional<FlowPoint> point_at(StmtId site) const;

  /// Thread-safe.
  std::shared_ptr<const TaintRun> flows_from(const FlowPoint& begin) const;

 private:
  const Cfg& cfg_;
  RoleTable roles_;
  RichTypePolicy policy_;
  std::vector<FlowPoint> points_;
  mutable std::mutex mutex_;
  mutable std::map<FlowPoint, std::shared_ptr<const TaintRun>> memo_;
};

}  // namespace privflow
