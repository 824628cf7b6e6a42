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

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace privflow {

class ArchiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ArchiveEntry {
  std::string name;
  std::vector<std::uint8_t> data;
};

/// Reads every file entry of a ZIP container (stored or deflated) by walking
/// the central directory. Throws ArchiveError when the container itself is
/// unreadable; an entry that fails to inflate is reported through `bad` and
/// skipped.
std::vector<ArchiveEntry> read_zip(std::span<const std::uint8_t> bytes,
                                   std::vector<std::string>* bad = nullptr);

std::vector<std::uint8_t> read_file_bytes(const std::string& path);

}  // namespace privflow
