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

#include "privflow/dot.hpp"

#include <map>
#include <set>
#include <sstream>

namespace privflow {

std::string dot_quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '"';
  return out;
}

void emit_dot(const GlobalFlow& flow, std::ostream& out) {
  std::map<MethodRef, std::size_t> index;
  for (std::size_t i = 0; i < flow.nodes.size(); ++i) index.emplace(flow.nodes[i], i);

  out << "digraph " << dot_quote(flow.id) << " {\n";
  out << "  label=" << dot_quote("privacy flow " + flow.id) << ";\n";
  out << "  labelloc=t;\n";
  out << "  node [shape=box];\n";
  for (std::size_t i = 0; i < flow.nodes.size(); ++i) {
    out << "  n" << i << " [label=" << dot_quote(flow.nodes[i].java_signature());
    if (i == 0) out << ", peripheries=2";
    out << "];\n";
  }
  for (const auto& [from, to] : flow.edges)
    out << "  n" << index.at(from) << " -> n" << index.at(to) << ";\n";

  // Field links: from the writing node when it is part of this flow, else
  // from a stand-in node for the writing flow.
  std::set<std::string> stand_ins;
  for (const auto& l : flow.field_links) {
    bool local = l.from_flow == flow.id && index.contains(l.writer);
    if (!local) stand_ins.insert(l.from_flow);
  }
  for (const auto& id : stand_ins)
    out << "  " << dot_quote("flow " + id) << " [shape=plaintext, label=" << dot_quote(id) << "];\n";
  for (const auto& l : flow.field_links) {
    bool local = l.from_flow == flow.id && index.contains(l.writer);
    std::string from = local ? "n" + std::to_string(index.at(l.writer)) : dot_quote("flow " + l.from_flow);
    out << "  " << from << " -> n" << index.at(l.reader) << " [style=dashed, label="
        << dot_quote(l.field.qualified_name()) << "];\n";
  }
  out << "}\n";
}

void emit_dot(const AbstractFlow& flow, std::ostream& out) {
  if (flow.flow_id.empty()) {
    out << "digraph {\n";
  } else {
    out << "digraph " << dot_quote(flow.flow_id) << " {\n";
  }
  if (!flow.flow_id.empty()) out << "  label=" << dot_quote("abstract flow " + flow.flow_id) << ";\n";
  out << "  labelloc=t;\n";
  if (flow.nodes.empty()) {
    out << "}\n";
    return;
  }
  out << "  rankdir=LR;\n";
  out << "  node [shape=plaintext];\n";
  for (std::size_t i = 0; i < flow.nodes.size(); ++i) {
    const auto& n = flow.nodes[i];
    std::string label(glyph(n.symbol));
    if (!n.label.empty()) label += ": " + n.label;
    std::string members;
    for (const auto& m : n.members) members += (members.empty() ? "" : "\n") + m.java_signature();
    out << "  a" << i << " [label=" << dot_quote(label) << ", symbol=" << token(n.symbol)
        << ", tooltip=" << dot_quote(members) << "];\n";
  }
  for (const auto& e : flow.edges) out << "  a" << e.from << " -> a" << e.to << ";\n";
  std::set<std::string> stand_ins;
  for (const auto& e : flow.field_edges) stand_ins.insert(e.from_flow);
  for (const auto& id : stand_ins)
    out << "  " << dot_quote("flow " + id) << " [label=" << dot_quote(id) << "];\n";
  for (const auto& e : flow.field_edges)
    out << "  " << dot_quote("flow " + e.from_flow) << " -> a" << e.to << " [style=dashed, label="
        << dot_quote(e.field) << "];\n";
  out << "}\n";
}

std::string to_dot(const GlobalFlow& flow) {
  std::ostringstream os;
  emit_dot(flow, os);
  return os.str();
}

std::string to_dot(const AbstractFlow& flow) {
  std::ostringstream os;
  emit_dot(flow, os);
  return os.str();
}

}  // namespace privflow
