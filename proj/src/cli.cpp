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

#include "privflow/cli.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "CLI11.hpp"
#include "privflow/analysis.hpp"
#include "privflow/archive.hpp"
#include "privflow/inputs.hpp"

namespace privflow {

namespace {

struct AnalyzeArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> sources;
  std::vector<std::string> sinks;
  bool no_builtin = false;
  std::string out_dir;
  std::size_t max_depth = kDefaultMaxDepth;
  std::string rich = "strict";
  unsigned jobs = 1;
  bool debug_ir = false;
};

void print_warnings(const Diagnostics& diag, std::ostream& err) {
  for (const auto& w : diag.warnings()) err << w.to_string() << "\n";
}

int run_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  Diagnostics diag;
  std::vector<std::string> catalogs = a.sources;
  catalogs.insert(catalogs.end(), a.sinks.begin(), a.sinks.end());
  Catalog catalog = assemble_catalog(catalogs, !a.no_builtin, diag);
  if (catalog.empty()) throw InputError("catalog is empty");

  AnalysisOptions options;
  options.max_depth = a.max_depth;
  options.policy = *parse_rich_type_policy(a.rich);
  options.jobs = a.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : a.jobs;

  Program program(load_inputs(a.inputs, diag, options.jobs), diag, options.jobs);
  AnalysisResult result = analyze(program, catalog, options);
  if (!a.out_dir.empty()) write_outputs(result, program, a.out_dir, a.debug_ir);

  print_warnings(diag, err);
  for (std::size_t i = 0; i < result.flows.size(); ++i) {
    const auto& f = result.flows[i];
    out << f.id << "  " << result.abstractions[i].glyph_string() << "  " << f.source_method.java_signature()
        << " in " << f.source.method.java_signature() << (f.truncated ? "  (truncated)" : "") << "\n";
  }
  out << result.flows.size() << " privacy flows detected\n";
  return kExitOk;
}

int run_check(const std::vector<std::string>& files, std::ostream& out, std::ostream& err) {
  int status = kExitOk;
  for (const auto& f : files) {
    Diagnostics diag;
    try {
      Catalog c = load_catalog(f, diag, false);
      out << f << ": " << c.sources().size() << " sources, " << c.sinks().size() << " sinks, " << diag.size()
          << " warnings\n";
    } catch (const CatalogError& e) {
      err << "error: " << e.what() << "\n";
      status = kExitInput;
    }
    print_warnings(diag, err);
  }
  return status;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Privacy data flow analysis for JVM bytecode", "privflow"};
  app.require_subcommand(1);

  AnalyzeArgs a;
  auto* analyze_cmd = app.add_subcommand("analyze", "Detect privacy flows in class files, directories or JARs");
  analyze_cmd->add_option("--input", a.inputs, "Class file, directory or JAR")->required()->expected(1, -1);
  analyze_cmd->add_option("--sources", a.sources, "Additional source catalog file");
  analyze_cmd->add_option("--sinks", a.sinks, "Additional sink catalog file");
  analyze_cmd->add_flag("--no-builtin-catalog", a.no_builtin, "Do not load the starter catalog");
  analyze_cmd->add_option("--out", a.out_dir, "Output directory");
  analyze_cmd->add_option("--max-depth", a.max_depth, "Maximum chaining depth")->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--rich-types", a.rich, "Rich type policy")->check(CLI::IsMember({"strict", "extended"}));
  analyze_cmd->add_option("--jobs", a.jobs, "Worker threads, 0 for one per core");
  analyze_cmd->add_flag("--debug-ir", a.debug_ir, "Write the lowered IR of every method");

  auto* catalog_cmd = app.add_subcommand("catalog", "Starter catalog tools");
  catalog_cmd->require_subcommand(1);
  catalog_cmd->add_subcommand("export", "Print the starter catalog");
  std::vector<std::string> check_files;
  auto* check_cmd = catalog_cmd->add_subcommand("check", "Validate catalog files");
  check_cmd->add_option("files", check_files, "Catalog files")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInput;
  }

  try {
    if (analyze_cmd->parsed()) return run_analyze(a, out, err);
    if (check_cmd->parsed()) return run_check(check_files, out, err);
    out << starter_catalog().to_text();
    return kExitOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CatalogError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ArchiveError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const OutputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace privflow
