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

#include "privflow/diagnostics.hpp"

namespace privflow {

std::string Diagnostic::to_string() const {
  if (where.empty()) return "warning: " + message;
  return "warning: " + where + ": " + message;
}

void Diagnostics::warn(std::string where, std::string message) {
  warnings_.push_back({std::move(where), std::move(message)});
}

void Diagnostics::append(const Diagnostics& other) {
  warnings_.insert(warnings_.end(), other.warnings_.begin(), other.warnings_.end());
}

std::size_t Diagnostics::count_containing(const std::string& needle) const {
  std::size_t n = 0;
  for (const auto& w : warnings_) {
    if (w.message.find(needle) != std::string::npos) ++n;
  }
  return n;
}

}  // namespace privflow
