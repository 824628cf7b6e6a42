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

// Validator for the subset of JSON Schema used by the summary schema:
// type, enum, const, properties, required, additionalProperties, items,
// minItems, maxItems, minLength, pattern, minimum, maximum, and local $ref
// into $defs.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace privflow::testing {

/// Violations as "<json pointer>: <reason>"; empty when `doc` conforms.
std::vector<std::string> validate_schema(const nlohmann::json& schema, const nlohmann::json& doc);

}  // namespace privflow::testing
