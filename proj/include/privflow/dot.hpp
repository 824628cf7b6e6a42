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

#include <ostream>
#include <string>

#include "privflow/abstraction.hpp"
#include "privflow/global_flow.hpp"

namespace privflow {

/// Quoted DOT string literal.
std::string dot_quote(std::string_view text);

/// Concrete flow: one box per method labelled with its full signature,
/// edges from callee to caller, field links dashed.
void emit_dot(const GlobalFlow& flow, std::ostream& out);

/// Abstract flow: one node per symbol in flow order.
void emit_dot(const AbstractFlow& flow, std::ostream& out);

std::string to_dot(const GlobalFlow& flow);
std::string to_dot(const AbstractFlow& flow);

}  // namespace privflow
