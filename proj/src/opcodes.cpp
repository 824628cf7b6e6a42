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

#include "privflow/opcodes.hpp"

#include <array>

namespace privflow::op {

namespace {

constexpr std::string_view kNames[] = {
    "nop", "aconst_null", "iconst_m1", "iconst_0", "iconst_1", "iconst_2", "iconst_3",
    "iconst_4", "iconst_5", "lconst_0", "lconst_1", "fconst_0", "fconst_1", "fconst_2",
    "dconst_0", "dconst_1", "bipush", "sipush", "ldc", "ldc_w", "ldc2_w", "iload", "lload",
    "fload", "dload", "aload", "iload_0", "iload_1", "iload_2", "iload_3", "lload_0",
    "lload_1", "lload_2", "lload_3", "fload_0", "fload_1", "fload_2", "fload_3", "dload_0",
    "dload_1", "dload_2", "dload_3", "aload_0", "aload_1", "aload_2", "aload_3", "iaload",
    "laload", "faload", "daload", "aaload", "baload", "caload", "saload", "istore", "lstore",
    "fstore", "dstore", "astore", "istore_0", "istore_1", "istore_2", "istore_3", "lstore_0",
    "lstore_1", "lstore_2", "lstore_3", "fstore_0", "fstore_1", "fstore_2", "fstore_3",
    "dstore_0", "dstore_1", "dstore_2", "dstore_3", "astore_0", "astore_1", "astore_2",
    "astore_3", "iastore", "lastore", "fastore", "dastore", "aastore", "bastore", "castore",
    "sastore", "pop", "pop2", "dup", "dup_x1", "dup_x2", "dup2", "dup2_x1", "dup2_x2", "swap",
    "iadd", "ladd", "fadd", "dadd", "isub", "lsub", "fsub", "dsub", "imul", "lmul", "fmul",
    "dmul", "idiv", "ldiv", "fdiv", "ddiv", "irem", "lrem", "frem", "drem", "ineg", "lneg",
    "fneg", "dneg", "ishl", "lshl", "ishr", "lshr", "iushr", "lushr", "iand", "land", "ior",
    "lor", "ixor", "lxor", "iinc", "i2l", "i2f", "i2d", "l2i", "l2f", "l2d", "f2i", "f2l",
    "f2d", "d2i", "d2l", "d2f", "i2b", "i2c", "i2s", "lcmp", "fcmpl", "fcmpg", "dcmpl",
    "dcmpg", "ifeq", "ifne", "iflt", "ifge", "ifgt", "ifle", "if_icmpeq", "if_icmpne",
    "if_icmplt", "if_icmpge", "if_icmpgt", "if_icmple", "if_acmpeq", "if_acmpne", "goto",
    "jsr", "ret", "tableswitch", "lookupswitch", "ireturn", "lreturn", "freturn", "dreturn",
    "areturn", "return", "getstatic", "putstatic", "getfield", "putfield", "invokevirtual",
    "invokespecial", "invokestatic", "invokeinterface", "invokedynamic", "new", "newarray",
    "anewarray", "arraylength", "athrow", "checkcast", "instanceof", "monitorenter",
    "monitorexit", "wide", "multianewarray", "ifnull", "ifnonnull", "goto_w", "jsr_w",
};

static_assert(std::size(kNames) == jsr_w + 1);

constexpr OpcodeInfo make(std::uint8_t opcode) {
  std::string_view name = opcode <= jsr_w ? kNames[opcode] : std::string_view{"<invalid>"};
  auto fixed = [&](OperandFormat f, std::uint8_t len) { return OpcodeInfo{name, f, len}; };
  if (opcode > jsr_w) return fixed(OperandFormat::invalid, 0);
  switch (opcode) {
    case bipush:
    case newarray:
      return fixed(OperandFormat::byte_imm, 2);
    case sipush:
      return fixed(OperandFormat::short_imm, 3);
    case ldc:
      return fixed(OperandFormat::cp_u1, 2);
    case ldc_w:
    case ldc2_w:
    case getstatic:
    case putstatic:
    case getfield:
    case putfield:
    case invokevirtual:
    case invokespecial:
    case invokestatic:
    case new_:
    case anewarray:
    case checkcast:
    case instanceof:
      return fixed(OperandFormat::cp_u2, 3);
    case iload:
    case lload:
    case fload:
    case dload:
    case aload:
    case istore:
    case lstore:
    case fstore:
    case dstore:
    case astore:
    case ret:
      return fixed(OperandFormat::local, 2);
    case iinc:
      return fixed(OperandFormat::iinc, 3);
    case goto_w:
    case jsr_w:
      return fixed(OperandFormat::branch32, 5);
    case tableswitch:
      return fixed(OperandFormat::tableswitch, 0);
    case lookupswitch:
      return fixed(OperandFormat::lookupswitch, 0);
    case invokeinterface:
      return fixed(OperandFormat::invokeinterface, 5);
    case invokedynamic:
      return fixed(OperandFormat::invokedynamic, 5);
    case multianewarray:
      return fixed(OperandFormat::multianewarray, 4);
    case wide:
      return fixed(OperandFormat::wide, 0);
    case ifnull:
    case ifnonnull:
      return fixed(OperandFormat::branch16, 3);
    default:
      break;
  }
  if (opcode >= ifeq && opcode <= jsr) return fixed(OperandFormat::branch16, 3);
  return fixed(OperandFormat::none, 1);
}

constexpr auto build_table() {
  std::array<OpcodeInfo, 256> table{};
  for (int i = 0; i < 256; ++i) table[i] = make(static_cast<std::uint8_t>(i));
  return table;
}

constexpr auto kTable = build_table();

}  // namespace

const OpcodeInfo& info(std::uint8_t opcode) { return kTable[opcode]; }

}  // namespace privflow::op
