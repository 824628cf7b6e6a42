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

#include <stdexcept>
#include <string>
#include <vector>

namespace privflow {

/// Fatal problem with the analysis inputs (unreadable path, malformed
/// catalog). The CLI maps it to exit status 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A single class file could not be decoded.
class ClassFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Diagnostic {
  std::string where;
  std::string message;

  std::string to_string() const;
  bool operator==(const Diagnostic&) const = default;
};

/// Accumulates non-fatal warnings. Not synchronized: parallel phases use one
/// instance per task and append() the results afterwards.
class Diagnostics {
 public:
  void warn(std::string where, std::string message);
  void append(const Diagnostics& other);

  const std::vector<Diagnostic>& warnings() const { return warnings_; }
  bool empty() const { return warnings_.empty(); }
  std::size_t size() const { return warnings_.size(); }

  /// Number of warnings whose message contains `needle`.
  std::size_t count_containing(const std::string& needle) const;

 private:
  std::vector<Diagnostic> warnings_;
};

}  // namespace privflow
