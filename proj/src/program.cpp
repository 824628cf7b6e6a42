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

#include "privflow/program.hpp"

#include <algorithm>

#include "privflow/parallel.hpp"

namespace privflow {

Program::Program(std::vector<ClassArtifact> classes, Diagnostics& diag, unsigned jobs)
    : classes_(std::move(classes)), hierarchy_(classes_) {
  std::vector<const MethodBody*> todo;
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    class_index_.emplace(classes_[i].name, i);
    for (const auto& m : classes_[i].methods) {
      bodies_.emplace(m.ref, &m);
      if (m.has_code) todo.push_back(&m);
    }
  }

  std::vector<std::unique_ptr<Cfg>> lowered(todo.size());
  std::vector<Diagnostics> local(todo.size());
  parallel_for(todo.size(), jobs, [&](std::size_t i) {
    if (auto cfg = try_lower_method(*todo[i], local[i])) lowered[i] = std::make_unique<Cfg>(std::move(*cfg));
  });
  for (std::size_t i = 0; i < todo.size(); ++i) {
    diag.append(local[i]);
    if (!lowered[i]) continue;
    analyzable_.push_back(todo[i]->ref);
    cfgs_.emplace(todo[i]->ref, std::move(lowered[i]));
  }
  std::sort(analyzable_.begin(), analyzable_.end());
}

const ClassArtifact* Program::find_class(const std::string& name) const {
  auto it = class_index_.find(name);
  return it == class_index_.end() ? nullptr : &classes_[it->second];
}

const MethodBody* Program::find_body(const MethodRef& ref) const {
  auto it = bodies_.find(ref);
  return it == bodies_.end() ? nullptr : it->second;
}

const Cfg* Program::cfg(const MethodRef& ref) const {
  auto it = cfgs_.find(ref);
  return it == cfgs_.end() ? nullptr : it->second.get();
}

}  // namespace privflow
