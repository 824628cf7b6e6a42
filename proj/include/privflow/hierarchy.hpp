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

#include <map>
#include <string>
#include <vector>

#include "privflow/classfile.hpp"

namespace privflow {

/// Subtype relation over class names. Loaded classes contribute their
/// declared super class and interfaces; an optional table of common JDK
/// stream/reader/writer relationships fills in the library side.
class ClassHierarchy {
 public:
  ClassHierarchy() = default;
  explicit ClassHierarchy(const std::vector<ClassArtifact>& classes, bool with_jdk_table = true);

  /// Records `cls` with its direct supertypes. Later calls for the same class
  /// are ignored, so loaded classes added first take precedence.
  void add(const std::string& cls, const std::vector<std::string>& supertypes);
  void add_jdk_table();

  bool known(const std::string& cls) const { return supers_.contains(cls); }
  const std::vector<std::string>& direct_supertypes(const std::string& cls) const;
  const std::vector<std::string>& direct_subtypes(const std::string& cls) const;

  /// Reflexive: every class is a subtype of itself.
  bool is_subtype(const std::string& sub, const std::string& super) const;

  /// `cls` followed by all transitive supertypes, breadth-first.
  std::vector<std::string> ancestors(const std::string& cls) const;

  /// `cls` and all transitive subtypes, sorted.
  std::vector<std::string> descendants(const std::string& cls) const;

 private:
  std::map<std::string, std::vector<std::string>> supers_;
  std::map<std::string, std::vector<std::string>> subs_;
};

}  // namespace privflow
