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

#include "privflow/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "privflow/rich_type.hpp"

namespace privflow {

std::string_view to_string(EntryKind kind) { return kind == EntryKind::source ? "source" : "sink"; }

std::string_view to_string(Category category) {
  switch (category) {
    case Category::io: return "I/O";
    case Category::network: return "Network";
    case Category::database: return "Database";
    case Category::log: return "Log";
    case Category::other: return "Other";
  }
  return "Other";
}

std::optional<EntryKind> parse_entry_kind(std::string_view text) {
  if (text == "source") return EntryKind::source;
  if (text == "sink") return EntryKind::sink;
  return std::nullopt;
}

std::optional<Category> parse_category(std::string_view text) {
  for (auto c : {Category::io, Category::network, Category::database, Category::log, Category::other})
    if (text == to_string(c)) return c;
  return std::nullopt;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool is_identifier_path(std::string_view s) {
  if (s.empty() || s.front() == '.' || s.back() == '.') return false;
  for (char c : s)
    if (c == ' ' || c == '(' || c == ')' || c == ',' || c == '/' || c == ';') return false;
  return s.find("..") == std::string_view::npos;
}

}  // namespace

std::optional<MethodRef> parse_signature(std::string_view text) {
  text = trim(text);
  auto space = text.find(' ');
  auto open = text.find('(');
  if (space == std::string_view::npos || open == std::string_view::npos || space > open) return std::nullopt;
  if (text.back() != ')') return std::nullopt;
  auto ret = java_to_descriptor(trim(text.substr(0, space)));
  if (!ret) return std::nullopt;
  auto qualified = trim(text.substr(space + 1, open - space - 1));
  auto dot = qualified.rfind('.');
  if (dot == std::string_view::npos) return std::nullopt;
  MethodRef ref;
  ref.declaring_class = std::string(qualified.substr(0, dot));
  ref.name = std::string(qualified.substr(dot + 1));
  ref.return_type = *ret;
  if (!is_identifier_path(ref.declaring_class) || ref.name.empty() ||
      !is_identifier_path(ref.name))
    return std::nullopt;
  auto params = text.substr(open + 1, text.size() - open - 2);
  if (!trim(params).empty()) {
    std::size_t at = 0;
    while (true) {
      auto comma = params.find(',', at);
      auto piece = trim(params.substr(at, comma == std::string_view::npos ? comma : comma - at));
      auto t = java_to_descriptor(piece);
      if (piece.empty() || !t || *t == "V") return std::nullopt;
      ref.param_types.push_back(*t);
      if (comma == std::string_view::npos) break;
      at = comma + 1;
    }
  }
  return ref;
}

std::string CatalogEntry::to_line() const {
  std::string line(to_string(kind));
  line += '\t';
  line += signature.java_signature();
  line += '\t';
  line += to_string(category);
  return line;
}

bool Catalog::add(CatalogEntry entry, Diagnostics& diag, const std::string& where) {
  if (contains(entry.kind, entry.signature)) {
    diag.warn(where, "duplicate catalog entry " + entry.to_line() + " ignored (first wins)");
    return false;
  }
  if (entry.kind == EntryKind::source) {
    entry.result_via_param = std::any_of(entry.signature.param_types.begin(), entry.signature.param_types.end(),
                                         [](const TypeDescriptor& t) { return t.starts_with("["); });
    if (!is_rich_type(entry.signature.return_type, RichTypePolicy::extended) && !entry.result_via_param)
      diag.warn(where, "source " + entry.signature.java_signature() +
                           " returns a non-rich type and takes no array argument; it cannot start a flow");
  }
  by_name_[entry.signature.name].push_back(entries_.size());
  entries_.push_back(std::move(entry));
  return true;
}

// Entries were already vetted when `other` was built; only duplicates are reported here.
void Catalog::merge(const Catalog& other, Diagnostics& diag) {
  for (const auto& e : other.entries_) {
    if (contains(e.kind, e.signature)) {
      diag.warn({}, "duplicate catalog entry " + e.to_line() + " ignored (first wins)");
      continue;
    }
    by_name_[e.signature.name].push_back(entries_.size());
    entries_.push_back(e);
  }
}

std::vector<const CatalogEntry*> Catalog::sources() const {
  std::vector<const CatalogEntry*> out;
  for (const auto& e : entries_)
    if (e.kind == EntryKind::source) out.push_back(&e);
  return out;
}

std::vector<const CatalogEntry*> Catalog::sinks() const {
  std::vector<const CatalogEntry*> out;
  for (const auto& e : entries_)
    if (e.kind == EntryKind::sink) out.push_back(&e);
  return out;
}

bool Catalog::contains(EntryKind kind, const MethodRef& signature) const {
  auto it = by_name_.find(signature.name);
  if (it == by_name_.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(), [&](std::size_t i) {
    return entries_[i].kind == kind && entries_[i].signature == signature;
  });
}

std::optional<CatalogMatch> Catalog::match(const MethodRef& target, const ClassHierarchy& hierarchy) const {
  auto it = by_name_.find(target.name);
  if (it == by_name_.end()) return std::nullopt;
  std::vector<std::string> owners;
  for (auto kind : {EntryKind::source, EntryKind::sink}) {
    for (auto i : it->second) {
      const auto& e = entries_[i];
      if (e.kind != kind || e.signature.param_types != target.param_types) continue;
      if (owners.empty()) owners = hierarchy.ancestors(target.declaring_class);
      if (std::find(owners.begin(), owners.end(), e.signature.declaring_class) != owners.end())
        return CatalogMatch{kind, &e};
    }
  }
  return std::nullopt;
}

std::string Catalog::to_text() const {
  std::string out;
  for (const auto& e : entries_) {
    out += e.to_line();
    out += '\n';
  }
  return out;
}

Catalog parse_catalog(std::string_view text, Diagnostics& diag, const std::string& origin) {
  Catalog catalog;
  std::size_t line_no = 0;
  std::size_t at = 0;
  while (at <= text.size()) {
    auto nl = text.find('\n', at);
    auto raw = text.substr(at, nl == std::string_view::npos ? std::string_view::npos : nl - at);
    at = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto where = origin + ":" + std::to_string(line_no);
    auto fail = [&](const std::string& what) -> CatalogError {
      return CatalogError(where + ": " + what + ": " + std::string(line));
    };
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos || line.find('\t', t2 + 1) != std::string_view::npos)
      throw fail("expected three tab-separated fields");
    auto kind = parse_entry_kind(trim(line.substr(0, t1)));
    if (!kind) throw fail("unknown kind (expected source or sink)");
    auto sig = parse_signature(line.substr(t1 + 1, t2 - t1 - 1));
    if (!sig) throw fail("malformed method signature");
    auto category = parse_category(trim(line.substr(t2 + 1)));
    if (!category) throw fail("unknown category (expected I/O, Network, Database, Log or Other)");
    catalog.add(CatalogEntry{*kind, std::move(*sig), *category, false}, diag, where);
  }
  return catalog;
}

Catalog load_catalog(const std::string& path, Diagnostics& diag, bool with_builtin) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open catalog " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  Catalog file = parse_catalog(buffer.str(), diag, path);
  if (!with_builtin) return file;
  Catalog merged = starter_catalog();
  merged.merge(file, diag);
  return merged;
}

const Catalog& starter_catalog() {
  static const Catalog catalog = [] {
    Diagnostics ignored;
    return parse_catalog(starter_catalog_text(), ignored, "<builtin>");
  }();
  return catalog;
}

std::optional<CatalogMatch> match_invocation(const Catalog& catalog, const MethodRef& target,
                                             const ClassHierarchy& hierarchy) {
  return catalog.match(target, hierarchy);
}

}  // namespace privflow
