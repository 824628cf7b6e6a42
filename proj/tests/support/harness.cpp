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

#include "support/harness.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "privflow/classfile.hpp"
#include "privflow/inputs.hpp"

namespace privflow::testing {

std::string fixture_dir() { return PRIVFLOW_FIXTURE_DIR; }
std::string fixture_path(const std::string& relative) { return fixture_dir() + "/" + relative; }
std::string schema_path() { return PRIVFLOW_SCHEMA_FILE; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::unique_ptr<Program> program_from_bytes(const std::vector<std::pair<std::string, Bytes>>& classes,
                                            Diagnostics& diag) {
  std::vector<ClassArtifact> artifacts;
  for (const auto& [name, bytes] : classes) artifacts.push_back(parse_class_file(bytes, diag, name + ".class"));
  return std::make_unique<Program>(std::move(artifacts), diag);
}

std::unique_ptr<Loaded> load_case(const ManifestCase& c) {
  auto out = std::make_unique<Loaded>();
  std::vector<std::string> paths;
  for (const auto& in : c.inputs) paths.push_back(fixture_path(c.dir + "/" + in));
  out->program = std::make_unique<Program>(load_inputs(paths, out->diag), out->diag);
  return out;
}

Catalog case_catalog(const ManifestCase& c, Diagnostics& diag) {
  std::vector<std::string> files;
  if (c.sources) files.push_back(fixture_path(c.dir + "/" + *c.sources));
  if (c.sinks) files.push_back(fixture_path(c.dir + "/" + *c.sinks));
  return assemble_catalog(files, true, diag);
}

AnalysisOptions case_options(const ManifestCase& c) {
  AnalysisOptions o;
  o.policy = *parse_rich_type_policy(c.rich);
  return o;
}

const std::vector<ManifestCase>& manifest() {
  static const std::vector<ManifestCase> cases = load_manifest(fixture_path("MANIFEST"));
  return cases;
}

}  // namespace privflow::testing
