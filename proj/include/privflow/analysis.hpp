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

#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "privflow/abstraction.hpp"
#include "privflow/catalog.hpp"
#include "privflow/global_flow.hpp"
#include "privflow/program.hpp"
#include "privflow/report.hpp"

namespace privflow {

/// An output file or directory could not be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AnalysisOptions {
  std::size_t max_depth = kDefaultMaxDepth;
  RichTypePolicy policy = RichTypePolicy::strict;
  unsigned jobs = 1;
};

struct AnalysisResult {
  std::vector<GlobalFlow> flows;
  std::vector<AbstractFlow> abstractions;  // parallel to flows
  std::vector<DpiaEvidence> evidence;      // parallel to flows
  std::set<std::string> classes_of_interest;
  PrivacyFlowGraph graph;
};

AnalysisResult analyze(const Program& program, const Catalog& catalog, const AnalysisOptions& options = {});

/// Catalog from the starter entries (unless disabled) and the given files.
Catalog assemble_catalog(const std::vector<std::string>& files, bool with_builtin, Diagnostics& diag);

/// Writes flows/<id>.dot, abstract/<id>.dot, report.md and summary.json
/// under `out_dir`; with `debug_ir` also ir/<method>.txt. Stale DOT files
/// from an earlier run are removed first.
void write_outputs(const AnalysisResult& result, const Program& program, const std::string& out_dir,
                   bool debug_ir = false);

/// File name for a method's IR dump.
std::string ir_file_name(const MethodRef& method);

}  // namespace privflow
