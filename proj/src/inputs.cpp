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

#include "privflow/inputs.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <set>

#include "privflow/archive.hpp"
#include "privflow/parallel.hpp"

namespace fs = std::filesystem;

namespace privflow {

namespace {

struct Unit {
  std::string origin;
  std::vector<std::uint8_t> bytes;
};

bool has_extension(const fs::path& p, std::string_view ext) {
  auto e = p.extension().string();
  std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return std::tolower(c); });
  return e == ext;
}

std::vector<std::uint8_t> read_or_throw(const fs::path& p) {
  try {
    return read_file_bytes(p.string());
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

void add_archive(const fs::path& jar, std::vector<Unit>& units, Diagnostics& diag) {
  auto bytes = read_or_throw(jar);
  std::vector<std::string> bad;
  std::vector<ArchiveEntry> entries;
  try {
    entries = read_zip(bytes, &bad);
  } catch (const ArchiveError& e) {
    throw InputError(jar.string() + ": not a readable JAR (" + e.what() + ")");
  }
  for (const auto& b : bad) diag.warn(jar.string(), "skipped archive entry " + b);
  std::sort(entries.begin(), entries.end(),
            [](const ArchiveEntry& a, const ArchiveEntry& b) { return a.name < b.name; });
  for (auto& entry : entries) {
    if (entry.name.size() < 6 || entry.name.compare(entry.name.size() - 6, 6, ".class") != 0)
      continue;
    if (entry.name.starts_with("META-INF/") || entry.name.ends_with("module-info.class")) continue;
    units.push_back({jar.string() + "!/" + entry.name, std::move(entry.data)});
  }
}

void add_path(const fs::path& p, std::vector<Unit>& units, Diagnostics& diag) {
  std::error_code ec;
  auto status = fs::status(p, ec);
  if (ec || !fs::exists(status)) throw InputError(p.string() + ": no such file or directory");
  if (fs::is_directory(status)) {
    std::vector<fs::path> files;
    fs::recursive_directory_iterator it(p, fs::directory_options::follow_directory_symlink, ec);
    if (ec) throw InputError(p.string() + ": cannot read directory (" + ec.message() + ")");
    for (auto end = fs::recursive_directory_iterator(); it != end; it.increment(ec)) {
      if (ec) throw InputError(p.string() + ": cannot read directory (" + ec.message() + ")");
      if (it->is_regular_file() && (has_extension(it->path(), ".class") || has_extension(it->path(), ".jar")))
        files.push_back(it->path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      if (has_extension(f, ".jar"))
        add_archive(f, units, diag);
      else
        units.push_back({f.string(), read_or_throw(f)});
    }
  } else if (has_extension(p, ".class")) {
    units.push_back({p.string(), read_or_throw(p)});
  } else {
    add_archive(p, units, diag);
  }
}

}  // namespace

std::vector<ClassArtifact> load_inputs(const std::vector<std::string>& paths, Diagnostics& diag,
                                       unsigned jobs) {
  std::vector<Unit> units;
  for (const auto& p : paths) add_path(fs::path(p), units, diag);

  std::vector<std::optional<ClassArtifact>> parsed(units.size());
  std::vector<Diagnostics> local(units.size());
  parallel_for(units.size(), jobs, [&](std::size_t i) {
    try {
      parsed[i] = parse_class_file(units[i].bytes, local[i], units[i].origin);
    } catch (const ClassFormatError& e) {
      local[i].warn(units[i].origin, std::string("malformed class file skipped: ") + e.what());
    }
  });

  std::vector<ClassArtifact> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < units.size(); ++i) {
    diag.append(local[i]);
    if (!parsed[i]) continue;
    if (!seen.insert(parsed[i]->name).second) {
      diag.warn(units[i].origin, "duplicate class " + parsed[i]->name + " ignored (first definition wins)");
      continue;
    }
    out.push_back(std::move(*parsed[i]));
  }
  std::sort(out.begin(), out.end(),
            [](const ClassArtifact& a, const ClassArtifact& b) { return a.name < b.name; });
  return out;
}

}  // namespace privflow
