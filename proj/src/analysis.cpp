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

#include "privflow/analysis.hpp"

#include <filesystem>
#include <fstream>

#include "privflow/call_graph.hpp"
#include "privflow/dot.hpp"

namespace privflow {

namespace fs = std::filesystem;

AnalysisResult analyze(const Program& program, const Catalog& catalog, const AnalysisOptions& options) {
  AnalysisResult r;
  FlowEngine engine(program, catalog, options.policy, options.jobs);
  r.flows = engine.build_all(options.max_depth, options.jobs);
  for (const auto& f : r.flows) r.abstractions.push_back(abstract_flow(f, catalog, program.hierarchy()));
  for (std::size_t i = 0; i < r.flows.size(); ++i)
    r.evidence.push_back(collect_dpia(r.flows[i], r.abstractions[i], program, r.flows));
  r.classes_of_interest = find_coi(program.classes(), catalog, program.hierarchy());
  r.graph = union_graph(r.flows);
  return r;
}

Catalog assemble_catalog(const std::vector<std::string>& files, bool with_builtin, Diagnostics& diag) {
  Catalog out = with_builtin ? starter_catalog() : Catalog{};
  for (const auto& f : files) out.merge(load_catalog(f, diag, false), diag);
  return out;
}

std::string ir_file_name(const MethodRef& method) {
  std::string name = method.declaring_class + "." + method.name + method.descriptor();
  for (char& c : name)
    if (c == '/' || c == '<' || c == '>' || c == ';' || c == '(' || c == ')' || c == '[') c = '_';
  return name + ".txt";
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot write " + path.string());
  out << content;
  out.close();
  if (!out) throw OutputError("write failed: " + path.string());
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw OutputError("cannot create directory " + dir.string());
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && (entry.path().extension() == ".dot" || entry.path().extension() == ".txt"))
      fs::remove(entry.path());
}

}  // namespace

void write_outputs(const AnalysisResult& result, const Program& program, const std::string& out_dir,
                   bool debug_ir) {
  const fs::path root(out_dir);
  prepare_dir(root / "flows");
  prepare_dir(root / "abstract");
  for (std::size_t i = 0; i < result.flows.size(); ++i) {
    const auto& id = result.flows[i].id;
    write_file(root / "flows" / (id + ".dot"), to_dot(result.flows[i]));
    write_file(root / "abstract" / (id + ".dot"), to_dot(result.abstractions[i]));
  }
  write_file(root / "report.md", render_dpia_markdown(result.evidence));
  write_file(root / "summary.json", summary_json(result.flows, result.abstractions, result.evidence).dump(2) + "\n");
  if (debug_ir) {
    prepare_dir(root / "ir");
    for (const auto& m : program.analyzable_methods())
      write_file(root / "ir" / ir_file_name(m), dump_ir(*program.cfg(m)));
  }
}

}  // namespace privflow
