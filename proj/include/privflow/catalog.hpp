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

// Source and sink method catalogs.
//
// File format, one entry per line, UTF-8:
//
//   kind<TAB>signature<TAB>category
//
// where kind is "source" or "sink", signature is "ret owner.name(p1,p2)" in
// Java notation and category is one of I/O, Network, Database, Log, Other.
// Lines starting with '#' and blank lines are ignored.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "privflow/diagnostics.hpp"
#include "privflow/hierarchy.hpp"
#include "privflow/method_ref.hpp"

namespace privflow {

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EntryKind { source, sink };
enum class Category { io, network, database, log, other };

std::string_view to_string(EntryKind kind);
std::string_view to_string(Category category);
std::optional<EntryKind> parse_entry_kind(std::string_view text);
std::optional<Category> parse_category(std::string_view text);

/// Parses "int java.io.DataInputStream.read(byte[])".
std::optional<MethodRef> parse_signature(std::string_view text);

struct CatalogEntry {
  EntryKind kind = EntryKind::source;
  MethodRef signature;
  Category category = Category::other;
  /// Source that delivers data through an array argument (read(byte[])).
  bool result_via_param = false;

  std::string to_line() const;
  bool operator==(const CatalogEntry&) const = default;
};

struct CatalogMatch {
  EntryKind kind;
  const CatalogEntry* entry;
};

class Catalog {
 public:
  /// Adds an entry; a duplicate (kind, signature) is reported and dropped.
  bool add(CatalogEntry entry, Diagnostics& diag, const std::string& where = {});
  void merge(const Catalog& other, Diagnostics& diag);

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  std::vector<const CatalogEntry*> sources() const;
  std::vector<const CatalogEntry*> sinks() const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool contains(EntryKind kind, const MethodRef& signature) const;

  /// Sources are tried before sinks; within a kind, catalog order decides.
  std::optional<CatalogMatch> match(const MethodRef& target, const ClassHierarchy& hierarchy) const;

  /// Serialized form accepted by parse_catalog.
  std::string to_text() const;

  bool operator==(const Catalog& other) const { return entries_ == other.entries_; }

 private:
  std::vector<CatalogEntry> entries_;
  // name -> entry indices, in catalog order
  std::unordered_map<std::string, std::vector<std::size_t>> by_name_;
};

/// Parses catalog text. Throws CatalogError naming the offending line.
Catalog parse_catalog(std::string_view text, Diagnostics& diag, const std::string& origin = "<catalog>");

/// Reads a catalog file; unless `with_builtin` is false the starter catalog
/// comes first and the file's entries are merged after it.
Catalog load_catalog(const std::string& path, Diagnostics& diag, bool with_builtin = true);

/// The built-in starter catalog.
std::string_view starter_catalog_text();
const Catalog& starter_catalog();

std::optional<CatalogMatch> match_invocation(const Catalog& catalog, const MethodRef& target,
                                             const ClassHierarchy& hierarchy);

}  // namespace privflow
