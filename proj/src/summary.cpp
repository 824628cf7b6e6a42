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

#include "privflow/report.hpp"

namespace privflow {

using nlohmann::json;

json to_json(const DpiaEvidence& ev) {
  json q1 = json::array(), q2 = json::array(), q3 = json::array(), q4 = json::array(), q6 = json::array();
  for (const auto& s : ev.q1_sources) q1.push_back({{"method", s.method}, {"category", s.category}, {"location", s.location}});
  for (const auto& p : ev.q2_processes)
    q2.push_back({{"symbol", token(p.symbol)}, {"package", p.package}, {"methods", p.methods}});
  for (const auto& t : ev.q3_transformations)
    q3.push_back({{"method", t.method}, {"from", t.from}, {"to", t.to}, {"via", t.via}, {"location", t.location}});
  for (const auto& e : ev.q4_egress) q4.push_back({{"method", e.method}, {"category", e.category}});
  for (const auto& s : ev.q6_security)
    q6.push_back({{"symbol", token(s.symbol)}, {"label", s.label}, {"methods", s.methods}});
  return {
      {"q1_sources", q1},
      {"q2_processes", q2},
      {"q3_transformations", q3},
      {"q4_egress", q4},
      {"q5_sensitivity", {{"marker", ev.q5_sensitivity}, {"hints", ev.q5_hints}}},
      {"q6_security", q6},
  };
}

json to_json(const AbstractFlow& flow) {
  json symbols = json::array();
  for (const auto& n : flow.nodes) {
    json members = json::array();
    for (const auto& m : n.members) members.push_back(m.java_signature());
    symbols.push_back({{"symbol", token(n.symbol)}, {"glyph", glyph(n.symbol)}, {"label", n.label}, {"members", members}});
  }
  return symbols;
}

json summary_json(const std::vector<GlobalFlow>& flows, const std::vector<AbstractFlow>& abstractions,
                  const std::vector<DpiaEvidence>& evidence) {
  json out_flows = json::array();
  for (std::size_t i = 0; i < flows.size(); ++i) {
    const auto& f = flows[i];
    json nodes = json::array(), edges = json::array(), links = json::array();
    for (const auto& n : f.nodes) nodes.push_back(n.java_signature());
    for (const auto& [from, to] : f.edges) edges.push_back({from.java_signature(), to.java_signature()});
    for (const auto& l : f.field_links)
      links.push_back({{"from_flow", l.from_flow},
                       {"field", l.field.qualified_name()},
                       {"writer", l.writer.java_signature()},
                       {"reader", l.reader.java_signature()}});
    json entry = {
        {"id", f.id},
        {"root",
         {{"method", f.source_method.java_signature()},
          {"category", to_string(f.source_category)},
          {"site", f.source.method.java_signature()}}},
        {"nodes", nodes},
        {"edges", edges},
        {"symbols", i < abstractions.size() ? to_json(abstractions[i]) : json::array()},
        {"abstraction", i < abstractions.size() ? abstractions[i].glyph_string() : ""},
        {"truncated", f.truncated},
        {"field_links", links},
    };
    if (i < evidence.size()) entry["dpia"] = to_json(evidence[i]);
    out_flows.push_back(std::move(entry));
  }
  return {{"flow_count", flows.size()}, {"flows", out_flows}};
}

}  // namespace privflow
