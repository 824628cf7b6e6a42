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

#include "privflow/method_ref.hpp"

#include <algorithm>

namespace privflow {

namespace {

struct Primitive {
  char code;
  std::string_view keyword;
};

constexpr Primitive kPrimitives[] = {
    {'B', "byte"}, {'C', "char"},  {'D', "double"}, {'F', "float"}, {'I', "int"},
    {'J', "long"}, {'S', "short"}, {'Z', "boolean"}, {'V', "void"},
};

std::optional<std::string_view> primitive_keyword(char code) {
  for (const auto& p : kPrimitives) {
    if (p.code == code) return p.keyword;
  }
  return std::nullopt;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

std::size_t field_descriptor_length(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && text[i] == '[') ++i;
  if (i >= text.size()) return 0;
  char c = text[i];
  if (c == 'L') {
    auto end = text.find(';', i);
    if (end == std::string_view::npos || end == i + 1) return 0;
    return end + 1;
  }
  if (c == 'V') return 0;
  return primitive_keyword(c) ? i + 1 : 0;
}

bool is_valid_field_descriptor(std::string_view text) {
  return !text.empty() && field_descriptor_length(text) == text.size();
}

std::optional<MethodDescriptor> parse_method_descriptor(std::string_view text) {
  if (text.empty() || text.front() != '(') return std::nullopt;
  MethodDescriptor out;
  std::size_t pos = 1;
  while (pos < text.size() && text[pos] != ')') {
    auto len = field_descriptor_length(text.substr(pos));
    if (len == 0) return std::nullopt;
    out.params.emplace_back(text.substr(pos, len));
    pos += len;
  }
  if (pos >= text.size()) return std::nullopt;
  ++pos;
  auto rest = text.substr(pos);
  if (rest == "V") {
    out.result = "V";
  } else if (is_valid_field_descriptor(rest)) {
    out.result = std::string(rest);
  } else {
    return std::nullopt;
  }
  return out;
}

std::string dotted_name(std::string_view internal_name) {
  std::string out(internal_name);
  std::replace(out.begin(), out.end(), '/', '.');
  return out;
}

TypeDescriptor object_descriptor(std::string_view dotted_class) {
  std::string out = "L";
  out.reserve(dotted_class.size() + 2);
  for (char c : dotted_class) out.push_back(c == '.' ? '/' : c);
  out.push_back(';');
  return out;
}

std::string descriptor_to_java(std::string_view descriptor) {
  std::size_t dims = 0;
  while (dims < descriptor.size() && descriptor[dims] == '[') ++dims;
  auto base = descriptor.substr(dims);
  std::string out;
  if (base.size() >= 2 && base.front() == 'L' && base.back() == ';') {
    out = dotted_name(base.substr(1, base.size() - 2));
  } else if (base.size() == 1 && primitive_keyword(base[0])) {
    out = std::string(*primitive_keyword(base[0]));
  } else {
    out = std::string(base);
  }
  for (std::size_t i = 0; i < dims; ++i) out += "[]";
  return out;
}

std::optional<TypeDescriptor> java_to_descriptor(std::string_view java_type) {
  auto text = trim(java_type);
  std::size_t dims = 0;
  while (text.size() >= 2 && text.substr(text.size() - 2) == "[]") {
    ++dims;
    text = trim(text.substr(0, text.size() - 2));
  }
  if (text.empty()) return std::nullopt;
  std::string base;
  for (const auto& p : kPrimitives) {
    if (p.keyword == text) base = std::string(1, p.code);
  }
  if (base == "V" && dims > 0) return std::nullopt;
  if (base.empty()) {
    for (char c : text) {
      if (c == ' ' || c == '\t' || c == '(' || c == ')' || c == ',' || c == ';' || c == '/' ||
          c == '[' || c == ']')
        return std::nullopt;
    }
    base = object_descriptor(text);
  }
  return std::string(dims, '[') + base;
}

std::string package_of(std::string_view dotted_class) {
  auto dot = dotted_class.rfind('.');
  if (dot == std::string_view::npos) return {};
  return std::string(dotted_class.substr(0, dot));
}

std::string simple_name_of(std::string_view dotted_class) {
  auto dot = dotted_class.rfind('.');
  if (dot == std::string_view::npos) return std::string(dotted_class);
  return std::string(dotted_class.substr(dot + 1));
}

std::string MethodRef::descriptor() const {
  std::string out = "(";
  for (const auto& p : param_types) out += p;
  out += ")";
  out += return_type;
  return out;
}

std::string MethodRef::qualified_name() const {
  std::string out = declaring_class + "." + name + "(";
  for (std::size_t i = 0; i < param_types.size(); ++i) {
    if (i) out += ",";
    out += descriptor_to_java(param_types[i]);
  }
  out += ")";
  return out;
}

std::string MethodRef::java_signature() const {
  return descriptor_to_java(return_type) + " " + qualified_name();
}

std::optional<MethodRef> make_method_ref(std::string_view owner, std::string_view name,
                                         std::string_view descriptor) {
  auto parsed = parse_method_descriptor(descriptor);
  if (!parsed || owner.empty() || name.empty()) return std::nullopt;
  return MethodRef{dotted_name(owner), std::string(name), std::move(parsed->params),
                   std::move(parsed->result)};
}

}  // namespace privflow

std::size_t std::hash<privflow::MethodRef>::operator()(
    const privflow::MethodRef& ref) const noexcept {
  std::size_t seed = std::hash<std::string>{}(ref.declaring_class);
  privflow::hash_combine(seed, std::hash<std::string>{}(ref.name));
  for (const auto& p : ref.param_types) privflow::hash_combine(seed, std::hash<std::string>{}(p));
  privflow::hash_combine(seed, std::hash<std::string>{}(ref.return_type));
  return seed;
}

std::size_t std::hash<privflow::FieldKey>::operator()(
    const privflow::FieldKey& key) const noexcept {
  std::size_t seed = std::hash<std::string>{}(key.owner);
  privflow::hash_combine(seed, std::hash<std::string>{}(key.name));
  return seed;
}
