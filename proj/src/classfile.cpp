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

#include "privflow/classfile.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <set>
#include <sstream>

#include "privflow/opcodes.hpp"

namespace privflow {

namespace {

enum CpTag : std::uint8_t {
  kUtf8 = 1,
  kInteger = 3,
  kFloat = 4,
  kLong = 5,
  kDouble = 6,
  kClass = 7,
  kString = 8,
  kFieldref = 9,
  kMethodref = 10,
  kInterfaceMethodref = 11,
  kNameAndType = 12,
  kMethodHandle = 15,
  kMethodType = 16,
  kDynamic = 17,
  kInvokeDynamic = 18,
  kModule = 19,
  kPackage = 20,
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u1() {
    need(1);
    return data_[pos_++];
  }
  std::uint16_t u2() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>(data_[pos_] << 8 | data_[pos_ + 1]);
    pos_ += 2;
    return v;
  }
  std::uint32_t u4() {
    need(4);
    std::uint32_t v = static_cast<std::uint32_t>(data_[pos_]) << 24 |
                      static_cast<std::uint32_t>(data_[pos_ + 1]) << 16 |
                      static_cast<std::uint32_t>(data_[pos_ + 2]) << 8 | data_[pos_ + 3];
    pos_ += 4;
    return v;
  }
  std::int8_t s1() { return static_cast<std::int8_t>(u1()); }
  std::int16_t s2() { return static_cast<std::int16_t>(u2()); }
  std::int32_t s4() { return static_cast<std::int32_t>(u4()); }

  std::span<const std::uint8_t> bytes(std::size_t n) {
    need(n);
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  void skip(std::size_t n) { bytes(n); }
  void seek(std::size_t pos) {
    if (pos > data_.size()) fail("seek past end");
    pos_ = pos;
  }

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ClassFormatError(what + " at byte " + std::to_string(pos_));
  }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) fail("unexpected end of class file");
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

// Modified UTF-8 (JVMS 4.4.7) to standard UTF-8.
std::string decode_modified_utf8(std::span<const std::uint8_t> in) {
  std::string out;
  out.reserve(in.size());
  std::size_t i = 0;
  auto read3 = [&](std::size_t at) -> std::uint32_t {
    return (in[at] & 0x0f) << 12 | (in[at + 1] & 0x3f) << 6 | (in[at + 2] & 0x3f);
  };
  auto put = [&](std::uint32_t cp) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xc0 | cp >> 6));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xe0 | cp >> 12));
      out.push_back(static_cast<char>(0x80 | (cp >> 6 & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
      out.push_back(static_cast<char>(0xf0 | cp >> 18));
      out.push_back(static_cast<char>(0x80 | (cp >> 12 & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp >> 6 & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
  };
  while (i < in.size()) {
    std::uint8_t b = in[i];
    if (b < 0x80) {
      out.push_back(static_cast<char>(b));
      ++i;
    } else if ((b & 0xe0) == 0xc0 && i + 1 < in.size()) {
      put((b & 0x1f) << 6 | (in[i + 1] & 0x3f));
      i += 2;
    } else if ((b & 0xf0) == 0xe0 && i + 2 < in.size()) {
      std::uint32_t cp = read3(i);
      if (cp >= 0xd800 && cp <= 0xdbff && i + 5 < in.size() && (in[i + 3] & 0xf0) == 0xe0) {
        std::uint32_t low = read3(i + 3);
        if (low >= 0xdc00 && low <= 0xdfff) {
          put(0x10000 + ((cp - 0xd800) << 10) + (low - 0xdc00));
          i += 6;
          continue;
        }
      }
      put(cp);
      i += 3;
    } else {
      throw ClassFormatError("invalid modified UTF-8 in constant pool");
    }
  }
  return out;
}

struct CpEntry {
  std::uint8_t tag = 0;
  std::uint16_t a = 0;
  std::uint16_t b = 0;
  std::uint64_t bits = 0;
  std::string utf8;
};

class ConstantPool {
 public:
  explicit ConstantPool(std::vector<CpEntry> entries) : entries_(std::move(entries)) {}

  const CpEntry* get(std::uint16_t index, std::uint8_t tag) const {
    if (index == 0 || index >= entries_.size() || entries_[index].tag != tag) return nullptr;
    return &entries_[index];
  }
  const CpEntry* get_any(std::uint16_t index) const {
    if (index == 0 || index >= entries_.size() || entries_[index].tag == 0) return nullptr;
    return &entries_[index];
  }

  const std::string* utf8(std::uint16_t index) const {
    auto* e = get(index, kUtf8);
    return e ? &e->utf8 : nullptr;
  }
  const std::string* class_name(std::uint16_t index) const {
    auto* e = get(index, kClass);
    return e ? utf8(e->a) : nullptr;
  }
  bool name_and_type(std::uint16_t index, std::string& name, std::string& desc) const {
    auto* e = get(index, kNameAndType);
    if (!e) return false;
    auto* n = utf8(e->a);
    auto* d = utf8(e->b);
    if (!n || !d) return false;
    name = *n;
    desc = *d;
    return true;
  }

 private:
  std::vector<CpEntry> entries_;
};

ConstantPool read_constant_pool(ByteReader& in) {
  std::uint16_t count = in.u2();
  if (count == 0) in.fail("constant pool count is zero");
  std::vector<CpEntry> entries(count);
  for (std::uint16_t i = 1; i < count; ++i) {
    CpEntry& e = entries[i];
    e.tag = in.u1();
    switch (e.tag) {
      case kUtf8: {
        auto len = in.u2();
        e.utf8 = decode_modified_utf8(in.bytes(len));
        break;
      }
      case kInteger:
      case kFloat:
        e.bits = in.u4();
        break;
      case kLong:
      case kDouble: {
        std::uint64_t hi = in.u4();
        e.bits = hi << 32 | in.u4();
        ++i;  // eight-byte constants occupy two slots
        if (i >= count) in.fail("eight-byte constant overruns pool");
        break;
      }
      case kClass:
      case kString:
      case kMethodType:
      case kModule:
      case kPackage:
        e.a = in.u2();
        break;
      case kFieldref:
      case kMethodref:
      case kInterfaceMethodref:
      case kNameAndType:
      case kDynamic:
      case kInvokeDynamic:
        e.a = in.u2();
        e.b = in.u2();
        break;
      case kMethodHandle:
        e.a = in.u1();
        e.b = in.u2();
        break;
      default:
        in.fail("unknown constant pool tag " + std::to_string(e.tag));
    }
  }
  return ConstantPool(std::move(entries));
}

TypeDescriptor class_operand_descriptor(const std::string& internal_name) {
  if (!internal_name.empty() && internal_name.front() == '[') return internal_name;
  return "L" + internal_name + ";";
}

struct BootstrapMethod {
  std::uint16_t method_handle = 0;
};

class OperandResolver {
 public:
  OperandResolver(const ConstantPool& cp, const std::vector<BootstrapMethod>& bootstraps)
      : cp_(cp), bootstraps_(bootstraps) {}

  Operand member(std::uint8_t opcode, std::uint16_t index) const {
    if (opcode == op::getstatic || opcode == op::putstatic || opcode == op::getfield ||
        opcode == op::putfield) {
      auto* e = cp_.get(index, kFieldref);
      if (!e) return unresolved(index, "expected Fieldref");
      auto* owner = cp_.class_name(e->a);
      std::string name, desc;
      if (!owner || !cp_.name_and_type(e->b, name, desc) || !is_valid_field_descriptor(desc))
        return unresolved(index, "malformed Fieldref");
      return FieldOperand{FieldKey{dotted_name(*owner), name}, desc};
    }
    if (opcode == op::invokedynamic) return dynamic(index);
    if (op::is_invoke(opcode)) {
      auto* e = cp_.get_any(index);
      if (!e || (e->tag != kMethodref && e->tag != kInterfaceMethodref))
        return unresolved(index, "expected Methodref");
      if (opcode == op::invokeinterface && e->tag != kInterfaceMethodref)
        return unresolved(index, "invokeinterface needs InterfaceMethodref");
      auto* owner = cp_.class_name(e->a);
      std::string name, desc;
      if (!owner || !cp_.name_and_type(e->b, name, desc))
        return unresolved(index, "malformed Methodref");
      auto ref = make_method_ref(*owner, name, desc);
      if (!ref) return unresolved(index, "bad method descriptor " + desc);
      InvokeKind kind = opcode == op::invokevirtual     ? InvokeKind::virtual_call
                        : opcode == op::invokestatic    ? InvokeKind::static_call
                        : opcode == op::invokespecial   ? InvokeKind::special_call
                                                        : InvokeKind::interface_call;
      return MethodOperand{std::move(*ref), kind};
    }
    // new, anewarray, checkcast, instanceof, multianewarray
    auto* name = cp_.class_name(index);
    if (!name) return unresolved(index, "expected Class");
    return TypeOperand{class_operand_descriptor(*name)};
  }

  Operand constant(std::uint16_t index) const {
    auto* e = cp_.get_any(index);
    if (!e) return unresolved(index, "bad ldc index");
    switch (e->tag) {
      case kInteger:
        return ConstantOperand{"I", std::to_string(static_cast<std::int32_t>(e->bits))};
      case kFloat: {
        float f = std::bit_cast<float>(static_cast<std::uint32_t>(e->bits));
        std::ostringstream os;
        os << f;
        return ConstantOperand{"F", os.str()};
      }
      case kLong:
        return ConstantOperand{"J", std::to_string(static_cast<std::int64_t>(e->bits))};
      case kDouble: {
        double d = std::bit_cast<double>(e->bits);
        std::ostringstream os;
        os << d;
        return ConstantOperand{"D", os.str()};
      }
      case kString: {
        auto* s = cp_.utf8(e->a);
        if (!s) return unresolved(index, "malformed String constant");
        return ConstantOperand{"Ljava/lang/String;", *s};
      }
      case kClass: {
        auto* s = cp_.utf8(e->a);
        return ConstantOperand{"Ljava/lang/Class;", s ? dotted_name(*s) : ""};
      }
      case kMethodType:
        return ConstantOperand{"Ljava/lang/invoke/MethodType;", ""};
      case kMethodHandle:
        return ConstantOperand{"Ljava/lang/invoke/MethodHandle;", ""};
      case kDynamic: {
        std::string name, desc;
        if (!cp_.name_and_type(e->b, name, desc) || !is_valid_field_descriptor(desc))
          return unresolved(index, "malformed Dynamic constant");
        return ConstantOperand{desc, name};
      }
      default:
        return unresolved(index, "constant of tag " + std::to_string(e->tag) + " is not loadable");
    }
  }

 private:
  Operand dynamic(std::uint16_t index) const {
    auto* e = cp_.get(index, kInvokeDynamic);
    if (!e) return unresolved(index, "expected InvokeDynamic");
    std::string name, desc;
    if (!cp_.name_and_type(e->b, name, desc)) return unresolved(index, "malformed InvokeDynamic");
    std::string owner = "java.lang.invoke.CallSite";
    std::string bootstrap;
    if (e->a < bootstraps_.size()) {
      auto* handle = cp_.get(bootstraps_[e->a].method_handle, kMethodHandle);
      if (handle) {
        auto* target = cp_.get_any(handle->b);
        std::string bname, bdesc;
        if (target && (target->tag == kMethodref || target->tag == kInterfaceMethodref)) {
          auto* bowner = cp_.class_name(target->a);
          if (bowner && cp_.name_and_type(target->b, bname, bdesc)) {
            owner = dotted_name(*bowner);
            bootstrap = owner + "." + bname;
          }
        }
      }
    }
    auto ref = make_method_ref(owner, name, desc);
    if (!ref) return unresolved(index, "bad invokedynamic descriptor " + desc);
    return DynamicOperand{std::move(*ref), std::move(bootstrap)};
  }

  static Operand unresolved(std::uint16_t index, std::string reason) {
    return UnresolvedOperand{index, std::move(reason)};
  }

  const ConstantPool& cp_;
  const std::vector<BootstrapMethod>& bootstraps_;
};

void decode_code(MethodBody& body, std::span<const std::uint8_t> code,
                 const OperandResolver& resolver) {
  ByteReader in(code);
  auto fail = [&](const std::string& what, std::size_t at) -> void {
    throw ClassFormatError(body.ref.qualified_name() + ": " + what + " at bytecode offset " +
                           std::to_string(at));
  };
  while (in.remaining() > 0) {
    Instruction insn;
    insn.offset = static_cast<std::uint32_t>(in.position());
    insn.opcode = in.u1();
    const auto& meta = op::info(insn.opcode);
    auto add_operand = [&](Operand o) {
      insn.operand = static_cast<std::int32_t>(body.operands.size());
      body.operands.push_back(std::move(o));
    };
    auto branch = [&](std::int32_t delta) {
      std::int64_t target = static_cast<std::int64_t>(insn.offset) + delta;
      if (target < 0 || target >= static_cast<std::int64_t>(code.size()))
        fail("branch target out of range", insn.offset);
      return static_cast<std::uint32_t>(target);
    };
    switch (meta.format) {
      case op::OperandFormat::none:
        break;
      case op::OperandFormat::local:
        insn.value = in.u1();
        break;
      case op::OperandFormat::byte_imm:
        insn.value = insn.opcode == op::newarray ? in.u1() : in.s1();
        break;
      case op::OperandFormat::short_imm:
        insn.value = in.s2();
        break;
      case op::OperandFormat::cp_u1:
        insn.value = in.u1();
        add_operand(resolver.constant(static_cast<std::uint16_t>(insn.value)));
        break;
      case op::OperandFormat::cp_u2:
        insn.value = in.u2();
        if (insn.opcode == op::ldc_w || insn.opcode == op::ldc2_w)
          add_operand(resolver.constant(static_cast<std::uint16_t>(insn.value)));
        else
          add_operand(resolver.member(insn.opcode, static_cast<std::uint16_t>(insn.value)));
        break;
      case op::OperandFormat::iinc:
        insn.value = in.u1();
        insn.extra = in.s1();
        break;
      case op::OperandFormat::branch16:
        insn.value = static_cast<std::int32_t>(branch(in.s2()));
        break;
      case op::OperandFormat::branch32:
        insn.value = static_cast<std::int32_t>(branch(in.s4()));
        break;
      case op::OperandFormat::tableswitch:
      case op::OperandFormat::lookupswitch: {
        while (in.position() % 4 != 0) in.u1();
        insn.switch_default = branch(in.s4());
        if (meta.format == op::OperandFormat::tableswitch) {
          std::int32_t low = in.s4();
          std::int32_t high = in.s4();
          if (high < low) fail("tableswitch with high < low", insn.offset);
          std::int64_t n = static_cast<std::int64_t>(high) - low + 1;
          if (n > static_cast<std::int64_t>(in.remaining() / 4)) fail("tableswitch overruns code", insn.offset);
          for (std::int64_t k = 0; k < n; ++k) {
            insn.switch_keys.push_back(static_cast<std::int32_t>(low + k));
            insn.switch_targets.push_back(branch(in.s4()));
          }
        } else {
          std::int32_t npairs = in.s4();
          if (npairs < 0 || npairs > static_cast<std::int64_t>(in.remaining() / 8))
            fail("lookupswitch overruns code", insn.offset);
          for (std::int32_t k = 0; k < npairs; ++k) {
            insn.switch_keys.push_back(in.s4());
            insn.switch_targets.push_back(branch(in.s4()));
          }
        }
        break;
      }
      case op::OperandFormat::invokeinterface:
        insn.value = in.u2();
        insn.extra = in.u1();
        in.u1();
        add_operand(resolver.member(insn.opcode, static_cast<std::uint16_t>(insn.value)));
        break;
      case op::OperandFormat::invokedynamic:
        insn.value = in.u2();
        in.u2();
        add_operand(resolver.member(insn.opcode, static_cast<std::uint16_t>(insn.value)));
        break;
      case op::OperandFormat::multianewarray:
        insn.value = in.u2();
        insn.extra = in.u1();
        add_operand(resolver.member(insn.opcode, static_cast<std::uint16_t>(insn.value)));
        break;
      case op::OperandFormat::wide: {
        insn.wide = true;
        insn.opcode = in.u1();
        const auto& inner = op::info(insn.opcode);
        if (inner.format == op::OperandFormat::local) {
          insn.value = in.u2();
        } else if (inner.format == op::OperandFormat::iinc) {
          insn.value = in.u2();
          insn.extra = in.s2();
        } else {
          fail("invalid opcode after wide", insn.offset);
        }
        break;
      }
      case op::OperandFormat::invalid:
        fail("invalid opcode " + std::to_string(insn.opcode), insn.offset);
    }
    insn.length = static_cast<std::uint8_t>(
        std::min<std::size_t>(in.position() - insn.offset, 255));
    body.bytecode.push_back(std::move(insn));
  }

  // Every branch target must be the start of an instruction.
  auto valid = [&](std::uint32_t target) { return body.index_of(target).has_value(); };
  for (const auto& insn : body.bytecode) {
    const auto fmt = op::info(insn.opcode).format;
    if (fmt == op::OperandFormat::branch16 || fmt == op::OperandFormat::branch32) {
      if (!valid(static_cast<std::uint32_t>(insn.value)))
        fail("branch into the middle of an instruction", insn.offset);
    }
    if (op::is_switch(insn.opcode)) {
      if (!valid(insn.switch_default)) fail("switch default not an instruction", insn.offset);
      for (auto t : insn.switch_targets)
        if (!valid(t)) fail("switch target not an instruction", insn.offset);
    }
  }
}

struct PendingCode {
  std::size_t method_index;
  std::span<const std::uint8_t> code;
};

}  // namespace

std::string_view to_string(InvokeKind kind) {
  switch (kind) {
    case InvokeKind::virtual_call:
      return "virtual";
    case InvokeKind::static_call:
      return "static";
    case InvokeKind::special_call:
      return "special";
    case InvokeKind::interface_call:
      return "interface";
    case InvokeKind::dynamic_call:
      return "dynamic";
  }
  return "?";
}

std::optional<std::size_t> MethodBody::index_of(std::uint32_t offset) const {
  auto it = std::lower_bound(bytecode.begin(), bytecode.end(), offset,
                             [](const Instruction& i, std::uint32_t off) { return i.offset < off; });
  if (it == bytecode.end() || it->offset != offset) return std::nullopt;
  return static_cast<std::size_t>(it - bytecode.begin());
}

const Operand& MethodBody::operand_of(const Instruction& insn) const {
  static const Operand kNone{};
  if (insn.operand < 0 || static_cast<std::size_t>(insn.operand) >= operands.size()) return kNone;
  return operands[static_cast<std::size_t>(insn.operand)];
}

std::optional<std::uint32_t> MethodBody::line_of(std::uint32_t offset) const {
  std::optional<std::uint32_t> best;
  std::uint32_t best_pc = 0;
  for (const auto& [pc, line] : line_numbers) {
    if (pc <= offset && (!best || pc >= best_pc)) {
      best = line;
      best_pc = pc;
    }
  }
  return best;
}

const MethodBody* ClassArtifact::find_method(std::string_view method_name,
                                             const std::vector<TypeDescriptor>& params) const {
  for (const auto& m : methods) {
    if (m.ref.name == method_name && m.ref.param_types == params) return &m;
  }
  return nullptr;
}

ClassArtifact parse_class_file(std::span<const std::uint8_t> bytes, Diagnostics& diag,
                               const std::string& origin) {
  ByteReader in(bytes);
  if (in.u4() != 0xCAFEBABE) in.fail("bad magic number");
  ClassArtifact out;
  out.minor_version = in.u2();
  out.major_version = in.u2();
  if (out.major_version < 45) in.fail("unsupported class-file version " + std::to_string(out.major_version));

  ConstantPool cp = read_constant_pool(in);
  out.access_flags = in.u2();
  auto* this_name = cp.class_name(in.u2());
  if (!this_name || this_name->empty()) in.fail("this_class does not name a class");
  out.name = dotted_name(*this_name);
  if (auto super_index = in.u2(); super_index != 0) {
    auto* s = cp.class_name(super_index);
    if (!s) in.fail("super_class does not name a class");
    out.super_name = dotted_name(*s);
  }
  std::set<std::string> interfaces;
  for (std::uint16_t n = in.u2(); n > 0; --n) {
    auto* s = cp.class_name(in.u2());
    if (!s) in.fail("interface entry does not name a class");
    interfaces.insert(dotted_name(*s));
  }
  out.interfaces.assign(interfaces.begin(), interfaces.end());

  for (std::uint16_t n = in.u2(); n > 0; --n) {
    FieldInfo f;
    f.access_flags = in.u2();
    auto* name = cp.utf8(in.u2());
    auto* desc = cp.utf8(in.u2());
    if (!name || !desc || !is_valid_field_descriptor(*desc)) in.fail("malformed field_info");
    f.name = *name;
    f.type = *desc;
    for (std::uint16_t a = in.u2(); a > 0; --a) {
      in.u2();
      in.skip(in.u4());
    }
    out.fields.push_back(std::move(f));
  }
  std::sort(out.fields.begin(), out.fields.end());

  std::vector<PendingCode> pending;
  for (std::uint16_t n = in.u2(); n > 0; --n) {
    MethodBody m;
    m.access_flags = in.u2();
    auto* name = cp.utf8(in.u2());
    auto* desc = cp.utf8(in.u2());
    if (!name || !desc) in.fail("malformed method_info");
    auto ref = make_method_ref(*this_name, *name, *desc);
    if (!ref) in.fail("malformed method descriptor " + *desc);
    m.ref = std::move(*ref);
    for (std::uint16_t a = in.u2(); a > 0; --a) {
      auto* attr = cp.utf8(in.u2());
      std::uint32_t len = in.u4();
      std::size_t end = in.position() + len;
      if (len > in.remaining()) in.fail("attribute overruns class file");
      if (attr && *attr == "Code") {
        if (m.has_code) in.fail("duplicate Code attribute");
        m.has_code = true;
        m.max_stack = in.u2();
        m.max_locals = in.u2();
        m.code_length = in.u4();
        if (m.code_length == 0) in.fail("empty Code attribute");
        pending.push_back({out.methods.size(), in.bytes(m.code_length)});
        for (std::uint16_t e = in.u2(); e > 0; --e) {
          ExceptionHandler h;
          h.start_pc = in.u2();
          h.end_pc = in.u2();
          h.handler_pc = in.u2();
          if (auto t = in.u2(); t != 0) {
            auto* cn = cp.class_name(t);
            if (!cn) in.fail("bad catch_type");
            h.catch_type = dotted_name(*cn);
          }
          m.exception_table.push_back(std::move(h));
        }
        for (std::uint16_t ca = in.u2(); ca > 0; --ca) {
          auto* cattr = cp.utf8(in.u2());
          std::uint32_t clen = in.u4();
          std::size_t cend = in.position() + clen;
          if (clen > in.remaining()) in.fail("code attribute overruns class file");
          if (cattr && *cattr == "LineNumberTable") {
            for (std::uint16_t k = in.u2(); k > 0; --k) {
              std::uint32_t pc = in.u2();
              std::uint32_t line = in.u2();
              m.line_numbers.emplace_back(pc, line);
            }
          }
          in.seek(cend);
        }
      }
      in.seek(end);
    }
    out.methods.push_back(std::move(m));
  }

  std::vector<BootstrapMethod> bootstraps;
  for (std::uint16_t a = in.u2(); a > 0; --a) {
    auto* attr = cp.utf8(in.u2());
    std::uint32_t len = in.u4();
    if (len > in.remaining()) in.fail("attribute overruns class file");
    std::size_t end = in.position() + len;
    if (attr && *attr == "SourceFile" && len == 2) {
      auto* s = cp.utf8(in.u2());
      if (s) out.source_file = *s;
    } else if (attr && *attr == "BootstrapMethods") {
      for (std::uint16_t k = in.u2(); k > 0; --k) {
        BootstrapMethod bm;
        bm.method_handle = in.u2();
        for (std::uint16_t args = in.u2(); args > 0; --args) in.u2();
        bootstraps.push_back(bm);
      }
    }
    in.seek(end);
  }
  if (in.remaining() != 0) {
    diag.warn(origin.empty() ? out.name : origin,
              std::to_string(in.remaining()) + " trailing bytes after class file ignored");
  }

  OperandResolver resolver(cp, bootstraps);
  for (const auto& p : pending) {
    auto& m = out.methods[p.method_index];
    decode_code(m, p.code, resolver);
    for (const auto& h : m.exception_table) {
      if (h.start_pc >= h.end_pc || !m.index_of(h.start_pc) || !m.index_of(h.handler_pc) ||
          (h.end_pc != m.code_length && !m.index_of(h.end_pc)))
        throw ClassFormatError(m.ref.qualified_name() + ": malformed exception table entry");
    }
  }
  return out;
}

std::vector<InvocationSite> invocation_sites(const MethodBody& body, Diagnostics& diag) {
  std::vector<InvocationSite> out;
  for (const auto& insn : body.bytecode) {
    if (!op::is_invoke(insn.opcode)) continue;
    const auto& operand = body.operand_of(insn);
    if (const auto* m = std::get_if<MethodOperand>(&operand)) {
      out.push_back({insn.offset, m->target, m->kind, {}});
    } else if (const auto* d = std::get_if<DynamicOperand>(&operand)) {
      out.push_back({insn.offset, d->target, InvokeKind::dynamic_call, d->bootstrap});
    } else {
      std::string reason = "unresolved constant-pool reference";
      if (const auto* u = std::get_if<UnresolvedOperand>(&operand))
        reason = "constant-pool index " + std::to_string(u->cp_index) + ": " + u->reason;
      diag.warn(body.ref.qualified_name() + "@" + std::to_string(insn.offset),
                "invocation site omitted (" + reason + ")");
    }
  }
  return out;
}

std::string disassemble(const MethodBody& body) {
  std::ostringstream os;
  for (const auto& insn : body.bytecode) {
    os << insn.offset << ": " << op::info(insn.opcode).name;
    const auto& operand = body.operand_of(insn);
    if (const auto* m = std::get_if<MethodOperand>(&operand)) {
      os << ' ' << m->target.declaring_class << '.' << m->target.name << m->target.descriptor();
    } else if (const auto* d = std::get_if<DynamicOperand>(&operand)) {
      os << ' ' << d->target.name << d->target.descriptor();
    } else if (const auto* f = std::get_if<FieldOperand>(&operand)) {
      os << ' ' << f->field.qualified_name() << ':' << f->type;
    } else if (const auto* t = std::get_if<TypeOperand>(&operand)) {
      os << ' ' << t->type;
    } else if (const auto* c = std::get_if<ConstantOperand>(&operand)) {
      os << ' ' << c->type << ' ' << c->text;
    } else if (op::is_switch(insn.opcode)) {
      os << " default=" << insn.switch_default;
    } else if (op::info(insn.opcode).format != op::OperandFormat::none) {
      os << ' ' << insn.value;
      if (insn.opcode == op::iinc) os << ' ' << insn.extra;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace privflow
