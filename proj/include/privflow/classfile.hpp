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

// In-memory model of decoded JVM class files.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "privflow/diagnostics.hpp"
#include "privflow/method_ref.hpp"

namespace privflow {

/// Highest class-file major version covered by the test corpus (Java 8).
/// Newer versions are decoded best-effort.
inline constexpr std::uint16_t kBaselineMajorVersion = 52;

namespace access {
inline constexpr std::uint16_t kPublic = 0x0001;
inline constexpr std::uint16_t kPrivate = 0x0002;
inline constexpr std::uint16_t kProtected = 0x0004;
inline constexpr std::uint16_t kStatic = 0x0008;
inline constexpr std::uint16_t kFinal = 0x0010;
inline constexpr std::uint16_t kSuper = 0x0020;
inline constexpr std::uint16_t kNative = 0x0100;
inline constexpr std::uint16_t kInterface = 0x0200;
inline constexpr std::uint16_t kAbstract = 0x0400;
}  // namespace access

enum class InvokeKind { virtual_call, static_call, special_call, interface_call, dynamic_call };

std::string_view to_string(InvokeKind kind);

/// invokevirtual/invokestatic/invokespecial/invokeinterface target.
struct MethodOperand {
  MethodRef target;
  InvokeKind kind;
};

/// invokedynamic call site. `target` carries the bootstrap method's owner as
/// declaring class and the call-site name/descriptor; it is never matched
/// against a catalog.
struct DynamicOperand {
  MethodRef target;
  std::string bootstrap;  // "java.lang.invoke.LambdaMetafactory.metafactory", or "" if unknown
};

struct FieldOperand {
  FieldKey field;
  TypeDescriptor type;
};

/// Class operand of new/checkcast/instanceof/anewarray/multianewarray, kept
/// as a field descriptor ("Ljava/lang/String;", "[I").
struct TypeOperand {
  TypeDescriptor type;
};

/// ldc operand; `type` is the descriptor of the pushed value.
struct ConstantOperand {
  TypeDescriptor type;
  std::string text;  // string literal contents, or the decimal value
};

struct UnresolvedOperand {
  std::uint16_t cp_index;
  std::string reason;
};

using Operand = std::variant<std::monostate, MethodOperand, DynamicOperand, FieldOperand,
                             TypeOperand, ConstantOperand, UnresolvedOperand>;

struct Instruction {
  std::uint32_t offset = 0;
  std::uint8_t opcode = 0;
  std::uint8_t length = 0;
  bool wide = false;
  /// Local index, immediate value, or absolute branch target depending on
  /// the opcode's operand format.
  std::int32_t value = 0;
  /// iinc delta, multianewarray dimensions, invokeinterface count.
  std::int32_t extra = 0;
  /// Index into MethodBody::operands for constant-pool backed instructions.
  std::int32_t operand = -1;
  /// tableswitch/lookupswitch: absolute targets, matching keys, default.
  std::vector<std::uint32_t> switch_targets;
  std::vector<std::int32_t> switch_keys;
  std::uint32_t switch_default = 0;

  bool operator==(const Instruction&) const = default;
};

struct ExceptionHandler {
  std::uint32_t start_pc = 0;
  std::uint32_t end_pc = 0;
  std::uint32_t handler_pc = 0;
  std::optional<std::string> catch_type;  // dotted; nullopt catches everything

  bool covers(std::uint32_t pc) const { return pc >= start_pc && pc < end_pc; }
  bool operator==(const ExceptionHandler&) const = default;
};

struct MethodBody {
  MethodRef ref;
  std::uint16_t access_flags = 0;
  bool has_code = false;
  std::uint16_t max_stack = 0;
  std::uint16_t max_locals = 0;
  std::uint32_t code_length = 0;
  std::vector<Instruction> bytecode;
  std::vector<Operand> operands;
  std::vector<ExceptionHandler> exception_table;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> line_numbers;  // (start pc, line)

  bool is_static() const { return (access_flags & access::kStatic) != 0; }
  bool is_abstract() const { return (access_flags & access::kAbstract) != 0; }
  bool is_native() const { return (access_flags & access::kNative) != 0; }

  /// Index into bytecode of the instruction starting at `offset`, if any.
  std::optional<std::size_t> index_of(std::uint32_t offset) const;
  const Operand& operand_of(const Instruction& insn) const;
  std::optional<std::uint32_t> line_of(std::uint32_t offset) const;

  bool operator==(const MethodBody&) const = default;
};

struct FieldInfo {
  std::string name;
  TypeDescriptor type;
  std::uint16_t access_flags = 0;

  auto operator<=>(const FieldInfo&) const = default;
};

struct ClassArtifact {
  std::string name;
  std::optional<std::string> super_name;
  std::vector<std::string> interfaces;  // sorted, unique
  std::uint16_t access_flags = 0;
  std::uint16_t major_version = 0;
  std::uint16_t minor_version = 0;
  std::string source_file;
  std::vector<MethodBody> methods;
  std::vector<FieldInfo> fields;  // sorted by name

  bool is_interface() const { return (access_flags & access::kInterface) != 0; }
  const MethodBody* find_method(std::string_view name,
                                const std::vector<TypeDescriptor>& params) const;

  bool operator==(const ClassArtifact&) const = default;
};

/// Decodes one class file. Throws ClassFormatError when the structure is
/// malformed. Unknown attributes are skipped by length.
ClassArtifact parse_class_file(std::span<const std::uint8_t> bytes, Diagnostics& diag,
                               const std::string& origin = {});

struct InvocationSite {
  std::uint32_t offset;
  MethodRef target;
  InvokeKind kind;
  std::string bootstrap;  // dynamic sites only

  bool operator==(const InvocationSite&) const = default;
};

/// One entry per invoke-family instruction, in offset order. Sites whose
/// constant-pool reference could not be resolved are reported to `diag` and
/// omitted.
std::vector<InvocationSite> invocation_sites(const MethodBody& body, Diagnostics& diag);

/// Text disassembly, one instruction per line.
std::string disassemble(const MethodBody& body);

}  // namespace privflow
