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

#include <optional>
#include <string_view>

namespace privflow {

/// strict: int, byte and reference types only. extended: also char, short,
/// long, float and double. boolean is never rich.
enum class RichTypePolicy { strict, extended };

std::optional<RichTypePolicy> parse_rich_type_policy(std::string_view text);

/// True when a value of this type can carry privacy-relevant content.
bool is_rich_type(std::string_view descriptor, RichTypePolicy policy = RichTypePolicy::strict);

}  // namespace privflow
