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

#include "privflow/abstraction.hpp"

#include <algorithm>
#include <map>

namespace privflow {

namespace {

struct SymbolInfo {
  Symbol symbol;
  std::string_view token;
  std::string_view glyph;
};

constexpr SymbolInfo kSymbols[] = {
    {Symbol::start_source, "SRC_START", "▲"},  {Symbol::nonstart_source, "SRC_MID", "△"},
    {Symbol::process, "PROC", "○"},            {Symbol::security, "SEC", "⊗"},
    {Symbol::end_sink, "SINK_END", "▼"},       {Symbol::mid_sink, "SINK_MID", "▽"},
    {Symbol::end_process, "PROC_END", "●"},    {Symbol::auth, "AUTH", "◇"},
    {Symbol::init, "INIT", "⊙"},
};

bool contains(std::string_view haystack, std::string_view needle) {
  return haystack.find(needle) != std::string_view::npos;
}

struct PackageHint {
  std::string package;
  std::string facet;
};

// Library packages whose code is security-relevant: the network and
// database packages of the starter catalog plus the JDK crypto packages.
const std::vector<PackageHint>& package_hints() {
  static const std::vector<PackageHint> hints = [] {
    std::vector<PackageHint> out = {
        {"javax.crypto", "cryptography"},
        {"java.security", "security"},
        {"javax.security", "security"},
        {"javax.net.ssl", "security"},
    };
    for (const auto& e : starter_catalog().entries()) {
      std::string facet = e.category == Category::network    ? "network"
                          : e.category == Category::database ? "database"
                                                             : "";
      auto pkg = e.signature.package();
      if (facet.empty() || pkg.empty()) continue;
      bool dup = std::any_of(out.begin(), out.end(), [&](const PackageHint& h) { return h.package == pkg; });
      if (!dup) out.push_back({pkg, facet});
    }
    return out;
  }();
  return hints;
}

bool in_package(std::string_view pkg, std::string_view hint) {
  return pkg == hint || (pkg.size() > hint.size() && pkg.starts_with(hint) && pkg[hint.size()] == '.');
}

bool has_segment(std::string_view pkg, std::string_view segment) {
  std::size_t at = 0;
  while (at <= pkg.size()) {
    auto dot = pkg.find('.', at);
    auto piece = pkg.substr(at, dot == std::string_view::npos ? std::string_view::npos : dot - at);
    if (piece == segment) return true;
    if (dot == std::string_view::npos) break;
    at = dot + 1;
  }
  return false;
}

std::optional<CatalogMatch> match(const MethodRef& node, const NodeContext& ctx) {
  if (!ctx.catalog) return std::nullopt;
  static const ClassHierarchy kEmpty;
  return ctx.catalog->match(node, ctx.hierarchy ? *ctx.hierarchy : kEmpty);
}

}  // namespace

std::string_view token(Symbol s) {
  for (const auto& i : kSymbols)
    if (i.symbol == s) return i.token;
  return "?";
}

std::string_view glyph(Symbol s) {
  for (const auto& i : kSymbols)
    if (i.symbol == s) return i.glyph;
  return "?";
}

std::optional<Symbol> parse_token(std::string_view text) {
  for (const auto& i : kSymbols)
    if (i.token == text) return i.symbol;
  return std::nullopt;
}

std::string security_facet(const MethodRef& node) {
  const auto pkg = node.package();
  const std::string_view name = node.name;
  if (contains(name, "encrypt") || contains(pkg, "encrypt")) return "cryptography";
  if (contains(name, "db") || contains(pkg, "db")) return "database";
  if (contains(name, "send") || contains(pkg, "send") || contains(name, "connect") || contains(pkg, "connect"))
    return "network";
  for (const auto& h : package_hints())
    if (in_package(pkg, h.package)) return h.facet;
  if (has_segment(pkg, "crypto")) return "cryptography";
  if (has_segment(pkg, "security")) return "security";
  return "";
}

Symbol classify_node(const MethodRef& node, Position position, const NodeContext& ctx) {
  auto m = match(node, ctx);
  bool source = m && m->kind == EntryKind::source;
  bool sink = m && m->kind == EntryKind::sink;

  // The tail is always ▼ or ●, so endpoints decide before any name rule.
  if (position == Position::last) return sink ? Symbol::end_sink : Symbol::end_process;
  if (position == Position::first && source) return Symbol::start_source;
  if (source || (position != Position::first && ctx.cross_flow_field_target)) return Symbol::nonstart_source;
  if (sink) return Symbol::mid_sink;

  const auto pkg = node.package();
  if (contains(node.name, "auth") || contains(pkg, "auth")) return Symbol::auth;
  if (node.is_constructor() || node.is_static_initializer() || contains(node.name, "init")) return Symbol::init;
  if (!security_facet(node).empty()) return Symbol::security;
  return Symbol::process;
}

std::string label_for(Symbol symbol, const MethodRef& node, const NodeContext& ctx) {
  switch (symbol) {
    case Symbol::start_source:
    case Symbol::nonstart_source:
    case Symbol::end_sink:
    case Symbol::mid_sink: {
      auto m = match(node, ctx);
      return m ? std::string(to_string(m->entry->category)) : "";
    }
    case Symbol::security: return security_facet(node);
    case Symbol::init: return node.simple_class_name();
    case Symbol::auth: return "authentication";
    case Symbol::process:
    case Symbol::end_process: return "";
  }
  return "";
}

std::string AbstractFlow::glyph_string() const {
  std::string out;
  for (const auto& n : nodes) {
    if (!out.empty()) out += ' ';
    out += glyph(n.symbol);
  }
  return out;
}

std::string AbstractFlow::token_string() const {
  std::string out;
  for (const auto& n : nodes) {
    if (!out.empty()) out += ' ';
    out += token(n.symbol);
  }
  return out;
}

AbstractFlow group_processes(const AbstractFlow& flow) {
  AbstractFlow out;
  out.flow_id = flow.flow_id;
  std::vector<std::size_t> remap(flow.nodes.size());
  for (std::size_t i = 0; i < flow.nodes.size(); ++i) {
    const auto& n = flow.nodes[i];
    bool joins = !out.nodes.empty() && n.symbol == Symbol::process && out.nodes.back().symbol == Symbol::process &&
                 !n.members.empty() && !out.nodes.back().members.empty() &&
                 n.members.front().package() == out.nodes.back().members.front().package();
    if (joins) {
      auto& back = out.nodes.back().members;
      back.insert(back.end(), n.members.begin(), n.members.end());
    } else {
      out.nodes.push_back(n);
    }
    remap[i] = out.nodes.size() - 1;
  }
  for (std::size_t i = 0; i + 1 < out.nodes.size(); ++i) out.edges.push_back({i, i + 1});
  for (const auto& e : flow.field_edges) {
    AbstractFieldEdge moved{e.from_flow, e.field, remap.empty() ? 0 : remap[e.to]};
    if (std::find(out.field_edges.begin(), out.field_edges.end(), moved) == out.field_edges.end())
      out.field_edges.push_back(moved);
  }
  return out;
}

AbstractFlow abstract_flow(const GlobalFlow& flow, const Catalog& catalog, const ClassHierarchy& hierarchy) {
  AbstractFlow raw;
  raw.flow_id = flow.id;
  std::map<MethodRef, std::size_t> index;
  for (std::size_t i = 0; i < flow.nodes.size(); ++i) index.emplace(flow.nodes[i], i);

  for (std::size_t i = 0; i < flow.nodes.size(); ++i) {
    const auto& node = flow.nodes[i];
    NodeContext ctx{&catalog, &hierarchy, false};
    for (const auto& l : flow.field_links)
      if (l.reader == node && l.from_flow != flow.id) ctx.cross_flow_field_target = true;
    Position pos = i == 0 ? Position::first : i + 1 == flow.nodes.size() ? Position::last : Position::interior;
    SymbolNode n;
    n.symbol = classify_node(node, pos, ctx);
    n.members = {node};
    n.label = label_for(n.symbol, node, ctx);
    if (n.symbol == Symbol::nonstart_source && n.label.empty()) {
      for (const auto& l : flow.field_links)
        if (l.reader == node && l.from_flow != flow.id && !contains(n.label, l.from_flow))
          n.label += (n.label.empty() ? "field from " : ",") + l.from_flow;
    }
    raw.nodes.push_back(std::move(n));
  }
  for (const auto& l : flow.field_links) {
    if (l.from_flow == flow.id) continue;
    auto it = index.find(l.reader);
    if (it == index.end()) continue;
    AbstractFieldEdge e{l.from_flow, l.field.qualified_name(), it->second};
    if (std::find(raw.field_edges.begin(), raw.field_edges.end(), e) == raw.field_edges.end())
      raw.field_edges.push_back(e);
  }
  return group_processes(raw);
}

}  // namespace privflow
