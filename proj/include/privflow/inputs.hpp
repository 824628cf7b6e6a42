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

#include <string>
#include <vector>

#include "privflow/classfile.hpp"
#include "privflow/diagnostics.hpp"

namespace privflow {

/// Loads every class file reachable from `paths`. Each path may be a JAR
/// (any ZIP container), a directory (scanned recursively for .class and .jar
/// files) or a single .class file.
///
/// Returns classes sorted by name. When two inputs define the same class the
/// first one in input order wins and a warning is recorded. Malformed class
/// files are skipped with a warning. Throws InputError for paths that do not
/// exist or cannot be read.
std::vector<ClassArtifact> load_inputs(const std::vector<std::string>& paths, Diagnostics& diag,
                                       unsigned jobs = 1);

}  // namespace privflow
