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

// DPIA evidence and the machine-readable summary.

#pragma once

#include <string>
#include <vector>

#include "privflow/abstraction.hpp"
#include "privflow/global_flow.hpp"
#include "privflow/program.hpp"
#include "json.hpp"

namespace privflow {

inline constexpr std::string_view kHumanInput = "REQUIRES HUMAN INPUT";
inline constexpr std::string_view kNoEgress = "no egress detected on this flow";

struct SourceEvidence {
  std::string method;  // java signature
  std::string category;
  std::string location;

  bool operator==(const SourceEvidence&) const = default;
};

struct ProcessEvidence {
  Symbol symbol = Symbol::process;
  std::string package;
  std::vector<std::string> methods;

  bool operator==(const ProcessEvidence&) const = default;
};

struct TransformEvidence {
  std::string method;
  std::string from;  // java type names
  std::string to;
  std::string via;
  std::string location;

  bool operator==(const TransformEvidence&) const = default;
};

struct EgressEvidence {
  std::string method;
  std::string category;

  bool operator==(const EgressEvidence&) const = default;
};

struct SecurityEvidence {
  Symbol symbol = Symbol::security;
  std::string label;
  std::vector<std::string> methods;

  bool operator==(const SecurityEvidence&) const = default;
};

struct DpiaEvidence {
  std::string flow_id;
  std::vector<SourceEvidence> q1_sources;
  std::vector<ProcessEvidence> q2_processes;
  std::vector<TransformEvidence> q3_transformations;
  std::vector<EgressEvidence> q4_egress;
  std::string q5_sensitivity{kHumanInput};
  std::vector<std::string> q5_hints;
  std::vector<SecurityEvidence> q6_security;

  bool operator==(const DpiaEvidence&) const = default;
};

/// "Main.java:12" style location of a statement, falling back to the
/// bytecode offset when there is no line table.
std::string statement_location(const Program& program, const MethodRef& method, std::uint32_t offset);

/// Evidence for `flow`. `all` is the full flow list, used to describe
/// data arriving through fields written by other flows.
DpiaEvidence collect_dpia(const GlobalFlow& flow, const AbstractFlow& abstract, const Program& program,
                          const std::vector<GlobalFlow>& all);

/// Markdown document with one section per flow, in the given order.
std::string render_dpia_markdown(const std::vector<DpiaEvidence>& evidence);

nlohmann::json to_json(const DpiaEvidence& evidence);
nlohmann::json to_json(const AbstractFlow& flow);

/// { flow_count, flows: [ { id, root, nodes, edges, symbols, truncated,
///   field_links, type_changes, dpia } ] }
nlohmann::json summary_json(const std::vector<GlobalFlow>& flows, const std::vector<AbstractFlow>& abstractions,
                            const std::vector<DpiaEvidence>& evidence);

}  // namespace privflow
