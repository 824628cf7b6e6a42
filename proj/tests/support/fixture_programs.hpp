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

// Bytecode for the committed fixtures. Each case mirrors the Java sources
// under tests/fixtures/<case>/src, line numbers included.

#pragma once

#include <string>
#include <vector>

#include "support/class_writer.hpp"

namespace privflow::testing {

struct FixtureFile {
  std::string path;  // relative to the case directory
  Bytes data;
};

std::vector<std::string> fixture_case_names();

/// Binary artifacts (class files, JARs) of one case.
std::vector<FixtureFile> build_fixture_case(const std::string& name);

}  // namespace privflow::testing
