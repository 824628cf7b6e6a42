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

#include <algorithm>
#include <sstream>

#include "privflow/report.hpp"

namespace privflow {

namespace {

const GlobalFlow* find_flow(const std::vector<GlobalFlow>& all, const std::string& id) {
  auto it = std::find_if(all.begin(), all.end(), [&](const GlobalFlow& f) { return f.id == id; });
  return it == all.end() ? nullptr : &*it;
}

std::string package_label(const std::string& pkg) { return pkg.empty() ? "(default package)" : pkg; }

std::vector<std::string> signatures(const std::vector<MethodRef>& methods) {
  std::vector<std::string> out;
  for (const auto& m : methods) out.push_back(m.java_signature());
  return out;
}

bool is_process_symbol(Symbol s) {
  return s == Symbol::process || s == Symbol::end_process || s == Symbol::security || s == Symbol::auth ||
         s == Symbol::init;
}

}  // namespace

std::string statement_location(const Program& program, const MethodRef& method, std::uint32_t offset) {
  std::string file;
  if (const auto* cls = program.find_class(method.declaring_class)) file = cls->source_file;
  if (file.empty()) file = method.simple_class_name() + ".class";
  std::optional<std::uint32_t> line;
  if (const auto* body = program.find_body(method)) line = body->line_of(offset);
  std::string where = file + (line ? ":" + std::to_string(*line) : " offset " + std::to_string(offset));
  return where + " in " + method.java_signature();
}

DpiaEvidence collect_dpia(const GlobalFlow& flow, const AbstractFlow& abstract, const Program& program,
                          const std::vector<GlobalFlow>& all) {
  DpiaEvidence ev;
  ev.flow_id = flow.id;

  std::uint32_t offset = 0;
  if (const Cfg* cfg = program.cfg(flow.source.method); cfg && flow.source.site < cfg->statements.size())
    offset = cfg->statements[flow.source.site].offset;
  ev.q1_sources.push_back({flow.source_method.java_signature(), std::string(to_string(flow.source_category)),
                           statement_location(program, flow.source.method, offset)});
  for (const auto& l : flow.field_links) {
    if (l.from_flow == flow.id) continue;
    const auto* other = find_flow(all, l.from_flow);
    SourceEvidence s{other ? other->source_method.java_signature() : l.from_flow,
                     other ? std::string(to_string(other->source_category)) : "",
                     "field " + l.field.qualified_name() + " written by flow " + l.from_flow + " in " +
                         l.writer.java_signature() + ", read in " + l.reader.java_signature()};
    if (std::find(ev.q1_sources.begin(), ev.q1_sources.end(), s) == ev.q1_sources.end())
      ev.q1_sources.push_back(std::move(s));
  }

  for (const auto& n : abstract.nodes) {
    if (is_process_symbol(n.symbol))
      ev.q2_processes.push_back({n.symbol, n.members.empty() ? "" : n.members.front().package(), signatures(n.members)});
    if (n.symbol == Symbol::security || n.symbol == Symbol::auth)
      ev.q6_security.push_back({n.symbol, n.label, signatures(n.members)});
  }

  for (const auto& c : flow.type_changes)
    ev.q3_transformations.push_back({c.method.java_signature(), descriptor_to_java(c.from), descriptor_to_java(c.to),
                                     c.via, statement_location(program, c.method, c.offset)});

  for (const auto& s : flow.sinks) ev.q4_egress.push_back({s.method.java_signature(), std::string(to_string(s.category))});

  std::vector<std::string> categories;
  for (const auto& s : ev.q1_sources)
    if (!s.category.empty() && std::find(categories.begin(), categories.end(), s.category) == categories.end())
      categories.push_back(s.category);
  for (const auto& c : categories) ev.q5_hints.push_back("source category " + c);
  return ev;
}

std::string render_dpia_markdown(const std::vector<DpiaEvidence>& evidence) {
  std::ostringstream md;
  md << "# Privacy flow evidence\n\n";
  md << evidence.size() << " privacy flows detected.\n";
  for (const auto& ev : evidence) {
    md << "\n## Flow " << ev.flow_id << "\n";

    md << "\n### Q1 Sources\n\n";
    for (const auto& s : ev.q1_sources) {
      md << "- `" << s.method << "`";
      if (!s.category.empty()) md << " (" << s.category << ")";
      md << ", " << s.location << "\n";
    }

    md << "\n### Q2 Processing\n\n";
    if (ev.q2_processes.empty()) md << "- none\n";
    for (const auto& p : ev.q2_processes) {
      md << "- " << glyph(p.symbol) << " " << package_label(p.package) << ":";
      for (std::size_t i = 0; i < p.methods.size(); ++i) md << (i ? ", `" : " `") << p.methods[i] << "`";
      md << "\n";
    }

    md << "\n### Q3 Transformations\n\n";
    if (ev.q3_transformations.empty()) md << "- no type changes observed\n";
    for (const auto& t : ev.q3_transformations)
      md << "- " << t.from << " to " << t.to << " via " << t.via << ", " << t.location << "\n";

    md << "\n### Q4 Egress\n\n";
    if (ev.q4_egress.empty()) md << "- " << kNoEgress << "\n";
    for (const auto& e : ev.q4_egress) md << "- `" << e.method << "` (" << e.category << ")\n";

    md << "\n### Q5 Sensitivity\n\n";
    md << ev.q5_sensitivity << "\n";
    for (const auto& h : ev.q5_hints) md << "- hint: " << h << "\n";

    md << "\n### Q6 Security measures\n\n";
    if (ev.q6_security.empty()) md << "- none detected\n";
    for (const auto& s : ev.q6_security) {
      md << "- " << glyph(s.symbol) << " " << s.label << ":";
      for (std::size_t i = 0; i < s.methods.size(); ++i) md << (i ? ", `" : " `") << s.methods[i] << "`";
      md << "\n";
    }
  }
  return md.str();
}

}  // namespace privflow
