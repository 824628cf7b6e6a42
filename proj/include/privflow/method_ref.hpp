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

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace privflow {

/// A JVM field/method type descriptor in its class-file encoding, e.g. "I",
/// "[B" or "Ljava/lang/String;". Class names inside descriptors keep the
/// '/' separators of the class-file format; every other class name in the
/// pipeline is dotted.
using TypeDescriptor = std::string;

struct MethodDescriptor {
  std::vector<TypeDescriptor> params;
  TypeDescriptor result;
};

/// Parses "(I[BLjava/lang/String;)V". Returns nullopt on malformed input.
std::optional<MethodDescriptor> parse_method_descriptor(std::string_view text);

/// Length of the single field descriptor starting at text[0], or 0.
std::size_t field_descriptor_length(std::string_view text);
bool is_valid_field_descriptor(std::string_view text);

/// "[B" -> "byte[]", "Ljava/lang/String;" -> "java.lang.String".
std::string descriptor_to_java(std::string_view descriptor);

/// Inverse of descriptor_to_java: "byte[]" -> "[B". Unqualified names that
/// are not primitive keywords are taken as class names.
std::optional<TypeDescriptor> java_to_descriptor(std::string_view java_type);

/// "java/lang/String" -> "java.lang.String".
std::string dotted_name(std::string_view internal_name);

/// "Ljava/lang/String;" for a dotted class name.
TypeDescriptor object_descriptor(std::string_view dotted_class);

/// Package part of a dotted class name ("" for the default package).
std::string package_of(std::string_view dotted_class);
std::string simple_name_of(std::string_view dotted_class);

/// Fully qualified method identity.
struct MethodRef {
  std::string declaring_class;
  std::string name;
  std::vector<TypeDescriptor> param_types;
  TypeDescriptor return_type;

  std::string descriptor() const;

  /// "int java.io.DataInputStream.read(byte[])", the notation used by catalog
  /// files and DOT node labels.
  std::string java_signature() const;

  /// "java.io.DataInputStream.read(byte[])".
  std::string qualified_name() const;

  std::string package() const { return package_of(declaring_class); }
  std::string simple_class_name() const { return simple_name_of(declaring_class); }

  bool is_constructor() const { return name == "<init>"; }
  bool is_static_initializer() const { return name == "<clinit>"; }

  /// Same class, name and parameter list; the return type is ignored.
  bool same_signature(const MethodRef& other) const {
    return declaring_class == other.declaring_class && name == other.name &&
           param_types == other.param_types;
  }

  auto operator<=>(const MethodRef&) const = default;
  bool operator==(const MethodRef&) const = default;
};

/// Builds a MethodRef from a class-file internal (or dotted) owner name and a
/// method descriptor.
std::optional<MethodRef> make_method_ref(std::string_view owner, std::string_view name,
                                         std::string_view descriptor);

/// Receiver-insensitive field identity.
struct FieldKey {
  std::string owner;
  std::string name;

  std::string qualified_name() const { return owner + "." + name; }

  auto operator<=>(const FieldKey&) const = default;
  bool operator==(const FieldKey&) const = default;
};

}  // namespace privflow

template <>
struct std::hash<privflow::MethodRef> {
  std::size_t operator()(const privflow::MethodRef& ref) const noexcept;
};

template <>
struct std::hash<privflow::FieldKey> {
  std::size_t operator()(const privflow::FieldKey& key) const noexcept;
};
