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

// Three-address IR over local-variable slots, lowered from stack bytecode.
//
// Slots [0, max_locals) are the method's JVM locals; 64-bit values use the
// slot of their first JVM word. Slots >= max_locals are synthesized operand
// stack temporaries, each defined by exactly one statement. Values flowing
// into a block with a non-empty operand stack are merged by phi statements
// at the block entry.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "privflow/classfile.hpp"
#include "privflow/diagnostics.hpp"
#include "privflow/method_ref.hpp"

namespace privflow {

using Slot = std::uint32_t;
using StmtId = std::uint32_t;

enum class StmtKind { assign, invoke, return_value, field_load, field_store, other };

/// Finer classification, mostly for dumps and type-change reporting.
enum class StmtDetail {
  copy,
  constant,
  arithmetic,
  conversion,
  compare,
  cast,
  instance_of,
  new_object,
  new_array,
  array_length,
  array_load,
  array_store,
  phi,
  caught_exception,
  branch,
  switch_jump,
  jump,
  throw_value,
  monitor,
  nop,
  call,
  return_stmt,
  field_access,
};

std::string_view to_string(StmtKind kind);
std::string_view to_string(StmtDetail detail);

struct InvokeInfo {
  MethodRef target;
  InvokeKind kind = InvokeKind::static_call;
  std::optional<Slot> receiver;
  std::vector<Slot> args;  // in parameter order
  std::optional<Slot> result;
  std::string bootstrap;

  /// The value a caller observes after the call: its result, or the
  /// constructed object for constructor invocations.
  std::optional<Slot> produced() const {
    if (result) return result;
    if (target.is_constructor()) return receiver;
    return std::nullopt;
  }
};

struct FieldAccess {
  FieldKey field;
  TypeDescriptor type;
  std::optional<Slot> object;  // absent for static fields
};

struct Statement {
  StmtId id = 0;
  StmtKind kind = StmtKind::other;
  StmtDetail detail = StmtDetail::nop;
  std::vector<Slot> defs;  // sorted, unique
  std::vector<Slot> uses;  // sorted, unique
  /// Type of every used slot at this statement, parallel to `uses`.
  std::vector<TypeDescriptor> use_types;
  /// Array or object whose summary cell absorbs `stored_value` (array and
  /// instance-field stores). Not a definition: the slot keeps its value.
  std::optional<Slot> weak_def;
  std::optional<Slot> stored_value;
  std::optional<InvokeInfo> invoke;
  std::optional<FieldAccess> field;
  TypeDescriptor value_type;  // type of the defined value, empty when none
  std::uint32_t offset = 0;   // originating bytecode offset
  std::string text;           // constant literal, cast target, ...

  bool defines(Slot s) const;
  bool uses_slot(Slot s) const;
  std::optional<TypeDescriptor> type_of_use(Slot s) const;
};

struct CfgEdge {
  StmtId from = 0;
  StmtId to = 0;
  bool exceptional = false;

  auto operator<=>(const CfgEdge&) const = default;
};

struct Cfg {
  MethodRef method;
  bool is_static = false;
  std::uint16_t max_locals = 0;
  std::size_t slot_count = 0;
  std::vector<Statement> statements;
  std::vector<CfgEdge> edges;  // sorted, unique
  StmtId entry = 0;
  /// Parameter slots in declaration order, receiver first for instance
  /// methods.
  std::vector<std::pair<Slot, TypeDescriptor>> params;

  std::vector<StmtId> successors(StmtId id) const;
  std::vector<StmtId> predecessors(StmtId id) const;
  bool is_temp(Slot s) const { return s >= max_locals; }
  /// No branches, switches, or exception edges.
  bool is_straight_line() const;

  /// Successor lists indexed by statement id.
  std::vector<std::vector<StmtId>> successor_table() const;
};

/// Thrown when a method body cannot be lowered (inconsistent stack shapes at
/// a join, subroutines, unresolved references, ...).
class LoweringError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lowers a method with code to its CFG. Throws LoweringError.
Cfg lower_method(const MethodBody& body);

/// lower_method, but reports failures as a warning and returns nullopt.
std::optional<Cfg> try_lower_method(const MethodBody& body, Diagnostics& diag);

std::string slot_name(const Cfg& cfg, Slot s);

/// One statement per line.
std::string dump_ir(const Cfg& cfg);

}  // namespace privflow
