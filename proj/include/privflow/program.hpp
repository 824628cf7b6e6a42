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
#include <memory>
#include <string>
#include <vector>

#include "privflow/classfile.hpp"
#include "privflow/hierarchy.hpp"
#include "privflow/ir.hpp"

namespace privflow {

/// The loaded classes together with their hierarchy and lowered method
/// bodies. Immutable after construction.
class Program {
 public:
  Program(std::vector<ClassArtifact> classes, Diagnostics& diag, unsigned jobs = 1);

  const std::vector<ClassArtifact>& classes() const { return classes_; }
  const ClassHierarchy& hierarchy() const { return hierarchy_; }

  const ClassArtifact* find_class(const std::string& name) const;
  const MethodBody* find_body(const MethodRef& ref) const;

  /// Null when the method is unknown, has no code, or could not be lowered.
  const Cfg* cfg(const MethodRef& ref) const;

  /// Lowered methods, sorted.
  const std::vector<MethodRef>& analyzable_methods() const { return analyzable_; }

 private:
  std::vector<ClassArtifact> classes_;
  ClassHierarchy hierarchy_;
  std::map<std::string, std::size_t> class_index_;
  std::map<MethodRef, const MethodBody*> bodies_;
  std::map<MethodRef, std::unique_ptr<Cfg>> cfgs_;
  std::vector<MethodRef> analyzable_;
};

}  // namespace privflow
