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

#include <optional>
#include <string>
#include <vector>

#include "privflow/catalog.hpp"
#include "privflow/global_flow.hpp"

namespace privflow {

enum class Symbol {
  start_source,     // ▲
  nonstart_source,  // △
  process,          // ○
  security,         // ⊗
  end_sink,         // ▼
  mid_sink,         // ▽
  end_process,      // ●
  auth,             // ◇
  init,             // ⊙
};

/// SRC_START, SRC_MID, PROC, SEC, SINK_END, SINK_MID, PROC_END, AUTH, INIT.
std::string_view token(Symbol s);
std::string_view glyph(Symbol s);
std::optional<Symbol> parse_token(std::string_view text);

enum class Position { first, interior, last };

struct SymbolNode {
  Symbol symbol = Symbol::process;
  std::vector<MethodRef> members;  // more than one only for grouped processes
  std::string label;

  bool operator==(const SymbolNode&) const = default;
};

struct AbstractEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  bool operator==(const AbstractEdge&) const = default;
};

/// Dashed edge from another flow (or the same one) into node `to`.
struct AbstractFieldEdge {
  std::string from_flow;
  std::string field;
  std::size_t to = 0;
  bool operator==(const AbstractFieldEdge&) const = default;
};

struct AbstractFlow {
  std::string flow_id;
  std::vector<SymbolNode> nodes;
  std::vector<AbstractEdge> edges;  // successor pairs
  std::vector<AbstractFieldEdge> field_edges;

  /// "▲ ○ △ ⊗ ○ ▼".
  std::string glyph_string() const;
  /// "SRC_START PROC ...".
  std::string token_string() const;

  bool operator==(const AbstractFlow&) const = default;
};

/// Extra facts about a node that classification needs.
struct NodeContext {
  const Catalog* catalog = nullptr;
  const ClassHierarchy* hierarchy = nullptr;
  /// Node reads a field written by a different flow.
  bool cross_flow_field_target = false;
};

/// Security facet ("cryptography", "database", "network", "security") when
/// the method name or package hints at one, else empty.
std::string security_facet(const MethodRef& node);

Symbol classify_node(const MethodRef& node, Position position, const NodeContext& context);

std::string label_for(Symbol symbol, const MethodRef& node, const NodeContext& context);

/// Collapses maximal runs of consecutive ○ nodes from one package. Edges
/// are rebuilt as successor pairs; field edges are remapped.
AbstractFlow group_processes(const AbstractFlow& flow);

/// Classification, labelling and grouping for one flow.
AbstractFlow abstract_flow(const GlobalFlow& flow, const Catalog& catalog, const ClassHierarchy& hierarchy);

}  // namespace privflow
