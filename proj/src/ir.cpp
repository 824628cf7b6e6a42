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

#include "privflow/ir.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "privflow/opcodes.hpp"

namespace privflow {

std::string_view to_string(StmtKind kind) {
  switch (kind) {
    case StmtKind::assign: return "assign";
    case StmtKind::invoke: return "invoke";
    case StmtKind::return_value: return "return";
    case StmtKind::field_load: return "field_load";
    case StmtKind::field_store: return "field_store";
    case StmtKind::other: return "other";
  }
  return "?";
}

std::string_view to_string(StmtDetail detail) {
  switch (detail) {
    case StmtDetail::copy: return "copy";
    case StmtDetail::constant: return "const";
    case StmtDetail::arithmetic: return "arith";
    case StmtDetail::conversion: return "convert";
    case StmtDetail::compare: return "compare";
    case StmtDetail::cast: return "cast";
    case StmtDetail::instance_of: return "instanceof";
    case StmtDetail::new_object: return "new";
    case StmtDetail::new_array: return "newarray";
    case StmtDetail::array_length: return "arraylength";
    case StmtDetail::array_load: return "aload";
    case StmtDetail::array_store: return "astore";
    case StmtDetail::phi: return "phi";
    case StmtDetail::caught_exception: return "catch";
    case StmtDetail::branch: return "if";
    case StmtDetail::switch_jump: return "switch";
    case StmtDetail::jump: return "goto";
    case StmtDetail::throw_value: return "throw";
    case StmtDetail::monitor: return "monitor";
    case StmtDetail::nop: return "nop";
    case StmtDetail::call: return "call";
    case StmtDetail::return_stmt: return "return";
    case StmtDetail::field_access: return "field";
  }
  return "?";
}

bool Statement::defines(Slot s) const { return std::binary_search(defs.begin(), defs.end(), s); }

bool Statement::uses_slot(Slot s) const { return std::binary_search(uses.begin(), uses.end(), s); }

std::optional<TypeDescriptor> Statement::type_of_use(Slot s) const {
  auto it = std::lower_bound(uses.begin(), uses.end(), s);
  if (it == uses.end() || *it != s) return std::nullopt;
  return use_types[static_cast<std::size_t>(it - uses.begin())];
}

std::vector<StmtId> Cfg::successors(StmtId id) const {
  std::vector<StmtId> out;
  auto it = std::lower_bound(edges.begin(), edges.end(), CfgEdge{id, 0, false});
  for (; it != edges.end() && it->from == id; ++it) out.push_back(it->to);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<StmtId> Cfg::predecessors(StmtId id) const {
  std::vector<StmtId> out;
  for (const auto& e : edges)
    if (e.to == id) out.push_back(e.from);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Cfg::is_straight_line() const {
  for (const auto& e : edges)
    if (e.exceptional || e.to != e.from + 1) return false;
  for (const auto& s : statements)
    if (s.detail == StmtDetail::branch || s.detail == StmtDetail::switch_jump) return false;
  return true;
}

std::vector<std::vector<StmtId>> Cfg::successor_table() const {
  std::vector<std::vector<StmtId>> table(statements.size());
  for (const auto& e : edges) {
    auto& v = table[e.from];
    if (std::find(v.begin(), v.end(), e.to) == v.end()) v.push_back(e.to);
  }
  return table;
}

namespace {

struct StackValue {
  Slot slot;
  TypeDescriptor type;
  int words;  // 1 or 2
};

int words_of(std::string_view type) { return type == "J" || type == "D" ? 2 : 1; }

struct Block {
  std::size_t first = 0;  // instruction index range [first, last]
  std::size_t last = 0;
  bool is_handler = false;
  bool seen = false;
  bool done = false;
  std::vector<StackValue> entry_stack;
  std::vector<TypeDescriptor> entry_locals;
  std::vector<Statement> stmts;
  std::vector<std::size_t> succs;            // normal successor blocks
  std::vector<std::size_t> handler_targets;  // handler blocks reached from this block
};

class Lowerer {
 public:
  explicit Lowerer(const MethodBody& body) : body_(body) {}

  Cfg run() {
    if (!body_.has_code || body_.bytecode.empty()) throw LoweringError("method has no code");
    next_temp_ = body_.max_locals;
    build_blocks();

    Cfg cfg;
    cfg.method = body_.ref;
    cfg.is_static = body_.is_static();
    cfg.max_locals = body_.max_locals;

    std::vector<TypeDescriptor> locals(body_.max_locals);
    Slot at = 0;
    auto param = [&](const TypeDescriptor& t) {
      if (at + words_of(t) > body_.max_locals) throw LoweringError("parameters exceed max_locals");
      locals[at] = t;
      cfg.params.emplace_back(at, t);
      at += static_cast<Slot>(words_of(t));
    };
    if (!cfg.is_static) param(object_descriptor(body_.ref.declaring_class));
    for (const auto& t : body_.ref.param_types) param(t);

    Block& entry = blocks_[0];
    entry.seen = true;
    entry.entry_locals = locals;
    worklist_.push_back(0);
    while (!worklist_.empty()) {
      std::size_t b = worklist_.front();
      worklist_.pop_front();
      process(b);
    }

    assemble(cfg);
    cfg.slot_count = next_temp_;
    return cfg;
  }

 private:
  void build_blocks() {
    const auto& code = body_.bytecode;
    std::vector<bool> leader(code.size(), false);
    leader[0] = true;
    auto mark = [&](std::uint32_t offset) {
      auto idx = body_.index_of(offset);
      if (!idx) throw LoweringError("jump to non-instruction offset " + std::to_string(offset));
      leader[*idx] = true;
    };
    for (std::size_t i = 0; i < code.size(); ++i) {
      const auto& insn = code[i];
      if (insn.opcode == op::jsr || insn.opcode == op::jsr_w || insn.opcode == op::ret)
        throw LoweringError("subroutines (jsr/ret) are not supported");
      if (op::is_conditional_branch(insn.opcode) || op::is_unconditional_branch(insn.opcode))
        mark(static_cast<std::uint32_t>(insn.value));
      if (op::is_switch(insn.opcode)) {
        mark(insn.switch_default);
        for (auto t : insn.switch_targets) mark(t);
      }
      bool ends = op::ends_flow(insn.opcode) || op::is_conditional_branch(insn.opcode);
      if (ends && i + 1 < code.size()) leader[i + 1] = true;
    }
    for (const auto& h : body_.exception_table) {
      mark(h.handler_pc);
      // Range boundaries split blocks so every block is uniformly covered.
      mark(h.start_pc);
      if (auto idx = body_.index_of(h.end_pc)) leader[*idx] = true;
    }

    block_of_.assign(code.size(), 0);
    for (std::size_t i = 0; i < code.size(); ++i) {
      if (leader[i]) {
        if (!blocks_.empty()) blocks_.back().last = i - 1;
        blocks_.push_back(Block{});
        blocks_.back().first = i;
      }
      block_of_[i] = blocks_.size() - 1;
    }
    blocks_.back().last = code.size() - 1;

    for (const auto& h : body_.exception_table)
      blocks_[block_of_[*body_.index_of(h.handler_pc)]].is_handler = true;

    for (auto& b : blocks_) {
      const auto& insn = code[b.last];
      auto add = [&](std::uint32_t offset) {
        std::size_t s = block_of_[*body_.index_of(offset)];
        if (std::find(b.succs.begin(), b.succs.end(), s) == b.succs.end()) b.succs.push_back(s);
      };
      if (op::is_conditional_branch(insn.opcode)) {
        add(static_cast<std::uint32_t>(insn.value));
      } else if (op::is_unconditional_branch(insn.opcode)) {
        add(static_cast<std::uint32_t>(insn.value));
      } else if (op::is_switch(insn.opcode)) {
        for (auto t : insn.switch_targets) add(t);
        add(insn.switch_default);
      }
      if (!op::ends_flow(insn.opcode)) {
        if (b.last + 1 >= code.size()) {
          // Only an error if the block is reachable; checked in process().
          continue;
        }
        add(code[b.last + 1].offset);
      }
    }
  }

  // --- per-block abstract interpretation ---------------------------------

  Slot fresh() { return next_temp_++; }

  [[noreturn]] void fail(const std::string& what) const {
    throw LoweringError(what + " at bytecode offset " + std::to_string(offset_));
  }

  Statement make(StmtKind kind, StmtDetail detail) const {
    Statement s;
    s.kind = kind;
    s.detail = detail;
    s.offset = offset_;
    return s;
  }

  static void add_use(Statement& s, Slot slot, const TypeDescriptor& type) {
    auto it = std::lower_bound(s.uses.begin(), s.uses.end(), slot);
    if (it != s.uses.end() && *it == slot) return;
    auto pos = it - s.uses.begin();
    s.uses.insert(it, slot);
    s.use_types.insert(s.use_types.begin() + pos, type);
  }

  static void add_use(Statement& s, const StackValue& v) { add_use(s, v.slot, v.type); }

  static void add_def(Statement& s, Slot slot) {
    auto it = std::lower_bound(s.defs.begin(), s.defs.end(), slot);
    if (it == s.defs.end() || *it != slot) s.defs.insert(it, slot);
  }

  void emit(Statement s) { current_->stmts.push_back(std::move(s)); }

  StackValue pop() {
    if (stack_.empty()) fail("operand stack underflow");
    StackValue v = stack_.back();
    stack_.pop_back();
    return v;
  }

  void push(Slot slot, TypeDescriptor type) {
    int w = words_of(type);
    stack_.push_back({slot, std::move(type), w});
  }

  // Defines a fresh temp through `s` and pushes it.
  void emit_push(Statement s, TypeDescriptor type) {
    Slot t = fresh();
    add_def(s, t);
    s.value_type = type;
    emit(std::move(s));
    push(t, std::move(type));
  }

  void check_local(std::int32_t index, int words) const {
    if (index < 0 || index + words > body_.max_locals)
      const_cast<Lowerer*>(this)->fail("local index " + std::to_string(index) + " out of range");
  }

  // Rewrites stack entries that alias local `n` into copies so that a
  // subsequent store to `n` does not change values already pushed.
  void materialize(Slot n) {
    for (auto& v : stack_) {
      if (v.slot != n) continue;
      auto s = make(StmtKind::assign, StmtDetail::copy);
      add_use(s, v);
      Slot t = fresh();
      add_def(s, t);
      s.value_type = v.type;
      emit(std::move(s));
      for (auto& w : stack_)
        if (w.slot == n) w.slot = t;
      break;
    }
  }

  std::vector<StackValue> pop_words(int words) {
    std::vector<StackValue> out;
    int got = 0;
    while (got < words) {
      auto v = pop();
      got += v.words;
      out.push_back(std::move(v));
    }
    if (got != words) fail("stack manipulation splits a 64-bit value");
    std::reverse(out.begin(), out.end());
    return out;
  }

  // dup family: duplicate the top `dup` words and insert them below the
  // following `skip` words.
  void dup_words(int dup, int skip) {
    auto top = pop_words(dup);
    auto below = skip > 0 ? pop_words(skip) : std::vector<StackValue>{};
    for (const auto& v : top) stack_.push_back(v);
    for (const auto& v : below) stack_.push_back(v);
    for (const auto& v : top) stack_.push_back(v);
  }

  void flow_into(std::size_t target) {
    Block& b = blocks_[target];
    if (b.is_handler) fail("normal control flow into an exception handler");
    if (!b.seen) {
      b.seen = true;
      b.entry_locals = locals_;
      for (const auto& v : stack_) {
        Statement phi;
        phi.kind = StmtKind::assign;
        phi.detail = StmtDetail::phi;
        phi.offset = body_.bytecode[b.first].offset;
        Slot p = fresh();
        add_def(phi, p);
        phi.value_type = v.type;
        add_use(phi, v);
        b.entry_stack.push_back({p, v.type, v.words});
        b.stmts.push_back(std::move(phi));
      }
      worklist_.push_back(target);
      return;
    }
    if (b.entry_stack.size() != stack_.size()) fail("inconsistent stack depth at join");
    for (std::size_t i = 0; i < stack_.size(); ++i) {
      if (b.entry_stack[i].words != stack_[i].words) fail("inconsistent stack shape at join");
      add_use(b.stmts[i], stack_[i]);
    }
    merge_locals(b.entry_locals);
  }

  void merge_locals(std::vector<TypeDescriptor>& into) const {
    for (std::size_t i = 0; i < into.size(); ++i) {
      if (into[i] == locals_[i]) continue;
      bool refs = !into[i].empty() && !locals_[i].empty() &&
                  (into[i][0] == 'L' || into[i][0] == '[') &&
                  (locals_[i][0] == 'L' || locals_[i][0] == '[');
      into[i] = refs ? "Ljava/lang/Object;" : "";
    }
  }

  void flow_into_handler(std::size_t target, const ExceptionHandler& h) {
    Block& b = blocks_[target];
    if (!b.seen) {
      b.seen = true;
      b.entry_locals = locals_;
      Statement s;
      s.kind = StmtKind::assign;
      s.detail = StmtDetail::caught_exception;
      s.offset = body_.bytecode[b.first].offset;
      Slot t = fresh();
      add_def(s, t);
      s.value_type = object_descriptor(h.catch_type.value_or("java.lang.Throwable"));
      s.text = h.catch_type.value_or("any");
      b.entry_stack.push_back({t, s.value_type, 1});
      b.stmts.push_back(std::move(s));
      worklist_.push_back(target);
    } else {
      merge_locals(b.entry_locals);
    }
    auto& ht = current_->handler_targets;
    if (std::find(ht.begin(), ht.end(), target) == ht.end()) ht.push_back(target);
  }

  void process(std::size_t index) {
    Block& b = blocks_[index];
    if (b.done) return;
    b.done = true;
    current_ = &b;
    stack_ = b.entry_stack;
    locals_ = b.entry_locals;

    for (std::size_t i = b.first; i <= b.last; ++i) {
      const auto& insn = body_.bytecode[i];
      offset_ = insn.offset;
      for (const auto& h : body_.exception_table)
        if (h.covers(insn.offset)) flow_into_handler(block_of_[*body_.index_of(h.handler_pc)], h);
      lower(insn);
    }
    const auto& last = body_.bytecode[b.last];
    if (!op::ends_flow(last.opcode) && b.last + 1 >= body_.bytecode.size())
      fail("control falls off the end of the code");
    if (b.stmts.empty()) emit(make(StmtKind::other, StmtDetail::nop));
    for (auto s : b.succs) flow_into(s);
  }

  static TypeDescriptor load_type(int kind) {
    static const char* kTypes[] = {"I", "J", "F", "D", "Ljava/lang/Object;"};
    return kTypes[kind];
  }

  void load(Slot n, int kind) {
    TypeDescriptor type = locals_[n].empty() ? load_type(kind) : locals_[n];
    if (kind == 4 && !(type[0] == 'L' || type[0] == '[')) type = load_type(kind);
    if (kind != 4 && type != load_type(kind)) {
      // Locals typed Z/B/C/S load as int.
      if (!(kind == 0 && (type == "Z" || type == "B" || type == "C" || type == "S")))
        type = load_type(kind);
    }
    push(n, type);
  }

  void store(Slot n) {
    auto v = pop();
    check_local(static_cast<std::int32_t>(n), v.words);
    materialize(n);
    auto s = make(StmtKind::assign, StmtDetail::copy);
    add_use(s, v);
    add_def(s, n);
    s.value_type = v.type;
    emit(std::move(s));
    locals_[n] = v.type;
    if (v.words == 2 && n + 1 < locals_.size()) locals_[n + 1].clear();
  }

  template <typename T>
  const T& operand(const Instruction& insn) {
    const auto& o = body_.operand_of(insn);
    if (const auto* u = std::get_if<UnresolvedOperand>(&o))
      fail("unresolved constant-pool reference #" + std::to_string(u->cp_index) + " (" + u->reason + ")");
    const T* t = std::get_if<T>(&o);
    if (!t) fail("unexpected operand kind");
    return *t;
  }

  void unary(StmtDetail detail, TypeDescriptor result) {
    auto v = pop();
    auto s = make(StmtKind::assign, detail);
    add_use(s, v);
    emit_push(std::move(s), std::move(result));
  }

  void binary(StmtDetail detail, TypeDescriptor result) {
    auto b = pop();
    auto a = pop();
    auto s = make(StmtKind::assign, detail);
    add_use(s, a);
    add_use(s, b);
    emit_push(std::move(s), std::move(result));
  }

  void constant(TypeDescriptor type, std::string text) {
    auto s = make(StmtKind::assign, StmtDetail::constant);
    s.text = std::move(text);
    emit_push(std::move(s), std::move(type));
  }

  void sink(StmtDetail detail, int count) {
    auto s = make(StmtKind::other, detail);
    for (int k = 0; k < count; ++k) add_use(s, pop());
    emit(std::move(s));
  }

  void invoke(const Instruction& insn) {
    const MethodRef* target = nullptr;
    InvokeInfo info;
    if (insn.opcode == op::invokedynamic) {
      const auto& d = operand<DynamicOperand>(insn);
      info.target = d.target;
      info.kind = InvokeKind::dynamic_call;
      info.bootstrap = d.bootstrap;
    } else {
      const auto& m = operand<MethodOperand>(insn);
      info.target = m.target;
      info.kind = m.kind;
    }
    target = &info.target;

    auto s = make(StmtKind::invoke, StmtDetail::call);
    std::vector<StackValue> args(target->param_types.size());
    for (std::size_t k = args.size(); k-- > 0;) args[k] = pop();
    if (info.kind != InvokeKind::static_call && info.kind != InvokeKind::dynamic_call) {
      auto r = pop();
      info.receiver = r.slot;
      add_use(s, r);
    }
    for (std::size_t k = 0; k < args.size(); ++k) {
      info.args.push_back(args[k].slot);
      // Prefer the declared parameter type over the inferred stack type.
      add_use(s, args[k].slot, target->param_types[k]);
    }
    if (target->return_type != "V") {
      Slot t = fresh();
      add_def(s, t);
      info.result = t;
      s.value_type = target->return_type;
      TypeDescriptor rt = target->return_type;
      s.invoke = std::move(info);
      emit(std::move(s));
      push(t, rt);
    } else {
      s.invoke = std::move(info);
      emit(std::move(s));
    }
  }

  void lower(const Instruction& insn) {
    const std::uint8_t opc = insn.opcode;
    switch (opc) {
      case op::nop:
        return;
      case op::aconst_null:
        return constant("Ljava/lang/Object;", "null");
      case op::iconst_m1: case op::iconst_0: case op::iconst_1: case op::iconst_2:
      case op::iconst_3: case op::iconst_4: case op::iconst_5:
        return constant("I", std::to_string(static_cast<int>(opc) - op::iconst_0));
      case op::lconst_0: case op::lconst_1:
        return constant("J", std::to_string(opc - op::lconst_0));
      case op::fconst_0: case op::fconst_1: case op::fconst_2:
        return constant("F", std::to_string(opc - op::fconst_0));
      case op::dconst_0: case op::dconst_1:
        return constant("D", std::to_string(opc - op::dconst_0));
      case op::bipush: case op::sipush:
        return constant("I", std::to_string(insn.value));
      case op::ldc: case op::ldc_w: case op::ldc2_w: {
        const auto& c = operand<ConstantOperand>(insn);
        return constant(c.type, c.text);
      }
      case op::iload: case op::lload: case op::fload: case op::dload: case op::aload: {
        int kind = opc - op::iload;
        check_local(insn.value, kind == 1 || kind == 3 ? 2 : 1);
        return load(static_cast<Slot>(insn.value), kind);
      }
      case op::iaload: case op::laload: case op::faload: case op::daload: case op::aaload:
      case op::baload: case op::caload: case op::saload: {
        auto idx = pop();
        auto arr = pop();
        TypeDescriptor type;
        switch (opc) {
          case op::iaload: type = "I"; break;
          case op::laload: type = "J"; break;
          case op::faload: type = "F"; break;
          case op::daload: type = "D"; break;
          case op::caload: type = "C"; break;
          case op::saload: type = "S"; break;
          case op::baload: type = arr.type == "[Z" ? "Z" : "B"; break;
          default:
            type = arr.type.size() > 1 && arr.type[0] == '[' ? arr.type.substr(1) : "Ljava/lang/Object;";
        }
        auto s = make(StmtKind::assign, StmtDetail::array_load);
        add_use(s, arr);
        add_use(s, idx);
        return emit_push(std::move(s), type);
      }
      case op::istore: case op::lstore: case op::fstore: case op::dstore: case op::astore:
        return store(static_cast<Slot>(insn.value));
      case op::iastore: case op::lastore: case op::fastore: case op::dastore: case op::aastore:
      case op::bastore: case op::castore: case op::sastore: {
        auto v = pop();
        auto idx = pop();
        auto arr = pop();
        auto s = make(StmtKind::other, StmtDetail::array_store);
        add_use(s, arr);
        add_use(s, idx);
        add_use(s, v);
        s.weak_def = arr.slot;
        s.stored_value = v.slot;
        return emit(std::move(s));
      }
      case op::pop: pop_words(1); return;
      case op::pop2: pop_words(2); return;
      case op::dup: return dup_words(1, 0);
      case op::dup_x1: return dup_words(1, 1);
      case op::dup_x2: return dup_words(1, 2);
      case op::dup2: return dup_words(2, 0);
      case op::dup2_x1: return dup_words(2, 1);
      case op::dup2_x2: return dup_words(2, 2);
      case op::swap: {
        auto a = pop();
        auto b = pop();
        if (a.words != 1 || b.words != 1) fail("swap of a 64-bit value");
        stack_.push_back(a);
        stack_.push_back(b);
        return;
      }
      case op::iinc: {
        Slot n = static_cast<Slot>(insn.value);
        check_local(insn.value, 1);
        materialize(n);
        auto s = make(StmtKind::assign, StmtDetail::arithmetic);
        add_use(s, n, "I");
        add_def(s, n);
        s.value_type = "I";
        s.text = std::to_string(insn.extra);
        locals_[n] = "I";
        return emit(std::move(s));
      }
      case op::lcmp: case op::fcmpl: case op::fcmpg: case op::dcmpl: case op::dcmpg:
        return binary(StmtDetail::compare, "I");
      case op::ifeq: case op::ifne: case op::iflt: case op::ifge: case op::ifgt: case op::ifle:
      case op::ifnull: case op::ifnonnull:
        return sink(StmtDetail::branch, 1);
      case op::if_icmpeq: case op::if_icmpne: case op::if_icmplt: case op::if_icmpge:
      case op::if_icmpgt: case op::if_icmple: case op::if_acmpeq: case op::if_acmpne:
        return sink(StmtDetail::branch, 2);
      case op::goto_: case op::goto_w:
        return emit(make(StmtKind::other, StmtDetail::jump));
      case op::tableswitch: case op::lookupswitch:
        return sink(StmtDetail::switch_jump, 1);
      case op::ireturn: case op::lreturn: case op::freturn: case op::dreturn: case op::areturn: {
        auto v = pop();
        auto s = make(StmtKind::return_value, StmtDetail::return_stmt);
        add_use(s, v);
        s.value_type = body_.ref.return_type;
        return emit(std::move(s));
      }
      case op::return_: {
        auto s = make(StmtKind::return_value, StmtDetail::return_stmt);
        if (body_.ref.is_constructor() && !body_.is_static() && body_.max_locals > 0) {
          // A constructor "returns" the initialized receiver.
          add_use(s, 0, object_descriptor(body_.ref.declaring_class));
          s.value_type = object_descriptor(body_.ref.declaring_class);
        }
        return emit(std::move(s));
      }
      case op::getstatic: case op::getfield: {
        const auto& f = operand<FieldOperand>(insn);
        auto s = make(StmtKind::field_load, StmtDetail::field_access);
        s.field = FieldAccess{f.field, f.type, std::nullopt};
        if (opc == op::getfield) {
          auto obj = pop();
          s.field->object = obj.slot;
          add_use(s, obj);
        }
        return emit_push(std::move(s), f.type);
      }
      case op::putstatic: case op::putfield: {
        const auto& f = operand<FieldOperand>(insn);
        auto v = pop();
        auto s = make(StmtKind::field_store, StmtDetail::field_access);
        s.field = FieldAccess{f.field, f.type, std::nullopt};
        add_use(s, v);
        s.stored_value = v.slot;
        if (opc == op::putfield) {
          auto obj = pop();
          s.field->object = obj.slot;
          s.weak_def = obj.slot;
          add_use(s, obj);
        }
        return emit(std::move(s));
      }
      case op::invokevirtual: case op::invokespecial: case op::invokestatic:
      case op::invokeinterface: case op::invokedynamic:
        return invoke(insn);
      case op::new_: {
        const auto& t = operand<TypeOperand>(insn);
        auto s = make(StmtKind::assign, StmtDetail::new_object);
        s.text = descriptor_to_java(t.type);
        return emit_push(std::move(s), t.type);
      }
      case op::newarray: {
        static const std::map<int, const char*> kAtype = {{4, "[Z"}, {5, "[C"}, {6, "[F"}, {7, "[D"},
                                                          {8, "[B"}, {9, "[S"}, {10, "[I"}, {11, "[J"}};
        auto it = kAtype.find(insn.value);
        if (it == kAtype.end()) fail("bad newarray type code");
        auto count = pop();
        auto s = make(StmtKind::assign, StmtDetail::new_array);
        add_use(s, count);
        return emit_push(std::move(s), it->second);
      }
      case op::anewarray: {
        const auto& t = operand<TypeOperand>(insn);
        auto count = pop();
        auto s = make(StmtKind::assign, StmtDetail::new_array);
        add_use(s, count);
        return emit_push(std::move(s), "[" + t.type);
      }
      case op::multianewarray: {
        const auto& t = operand<TypeOperand>(insn);
        auto s = make(StmtKind::assign, StmtDetail::new_array);
        for (int k = 0; k < insn.extra; ++k) add_use(s, pop());
        return emit_push(std::move(s), t.type);
      }
      case op::arraylength:
        return unary(StmtDetail::array_length, "I");
      case op::athrow:
        return sink(StmtDetail::throw_value, 1);
      case op::checkcast: {
        const auto& t = operand<TypeOperand>(insn);
        auto v = pop();
        auto s = make(StmtKind::assign, StmtDetail::cast);
        add_use(s, v);
        s.text = descriptor_to_java(t.type);
        return emit_push(std::move(s), t.type);
      }
      case op::instanceof: {
        operand<TypeOperand>(insn);
        return unary(StmtDetail::instance_of, "Z");
      }
      case op::monitorenter: case op::monitorexit:
        return sink(StmtDetail::monitor, 1);
      default:
        break;
    }
    if (opc >= op::iload_0 && opc <= op::aload_3) {
      int kind = (opc - op::iload_0) / 4;
      int n = (opc - op::iload_0) % 4;
      check_local(n, kind == 1 || kind == 3 ? 2 : 1);
      return load(static_cast<Slot>(n), kind);
    }
    if (opc >= op::istore_0 && opc <= op::astore_3) {
      int n = (opc - op::istore_0) % 4;
      return store(static_cast<Slot>(n));
    }
    if (opc >= op::iadd && opc <= op::lxor) {
      static const char* kArith[] = {"I", "J", "F", "D"};
      bool neg = opc >= op::ineg && opc <= op::dneg;
      TypeDescriptor type;
      if (opc <= op::dneg)
        type = kArith[(opc - op::iadd) % 4];
      else
        type = (opc - op::ishl) % 2 == 0 ? "I" : "J";
      return neg ? unary(StmtDetail::arithmetic, type) : binary(StmtDetail::arithmetic, type);
    }
    if (opc >= op::i2l && opc <= op::i2s) {
      static const char* kConv[] = {"J", "F", "D", "I", "F", "D", "I", "J", "D", "I", "J", "F", "B", "C", "S"};
      return unary(StmtDetail::conversion, kConv[opc - op::i2l]);
    }
    fail("unsupported opcode " + std::string(op::info(opc).name));
  }

  // --- assembly -------------------------------------------------------------

  void assemble(Cfg& cfg) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i].done) order.push_back(i);
    // Blocks are already in offset order; entry block 0 stays first.
    std::vector<StmtId> first_id(blocks_.size(), 0);
    StmtId next = 0;
    for (auto b : order) {
      first_id[b] = next;
      next += static_cast<StmtId>(blocks_[b].stmts.size());
    }
    cfg.statements.reserve(next);
    for (auto b : order) {
      auto& block = blocks_[b];
      StmtId base = first_id[b];
      for (std::size_t k = 0; k < block.stmts.size(); ++k) {
        auto& s = block.stmts[k];
        s.id = base + static_cast<StmtId>(k);
        if (k + 1 < block.stmts.size()) cfg.edges.push_back({s.id, s.id + 1, false});
        // Exception edges from every statement inside a protected range.
        for (const auto& h : body_.exception_table) {
          if (!h.covers(s.offset)) continue;
          std::size_t hb = block_of_[*body_.index_of(h.handler_pc)];
          if (!blocks_[hb].done) continue;
          cfg.edges.push_back({s.id, first_id[hb], true});
        }
      }
      StmtId last = base + static_cast<StmtId>(block.stmts.size()) - 1;
      for (auto succ : block.succs) cfg.edges.push_back({last, first_id[succ], false});
      for (auto& s : block.stmts) cfg.statements.push_back(std::move(s));
    }
    std::sort(cfg.edges.begin(), cfg.edges.end());
    cfg.edges.erase(std::unique(cfg.edges.begin(), cfg.edges.end()), cfg.edges.end());
    cfg.entry = 0;
  }

  const MethodBody& body_;
  std::vector<Block> blocks_;
  std::vector<std::size_t> block_of_;
  std::deque<std::size_t> worklist_;
  Slot next_temp_ = 0;
  Block* current_ = nullptr;
  std::vector<StackValue> stack_;
  std::vector<TypeDescriptor> locals_;
  std::uint32_t offset_ = 0;
};

}  // namespace

Cfg lower_method(const MethodBody& body) { return Lowerer(body).run(); }

std::optional<Cfg> try_lower_method(const MethodBody& body, Diagnostics& diag) {
  try {
    return lower_method(body);
  } catch (const LoweringError& e) {
    diag.warn(body.ref.java_signature(), std::string("method not analyzable: ") + e.what());
    return std::nullopt;
  }
}

std::string slot_name(const Cfg& cfg, Slot s) {
  return (cfg.is_temp(s) ? "t" : "l") + std::to_string(s);
}

std::string dump_ir(const Cfg& cfg) {
  std::ostringstream os;
  os << "method " << cfg.method.java_signature() << '\n';
  os << "  params:";
  for (const auto& [slot, type] : cfg.params) os << ' ' << slot_name(cfg, slot) << ':' << type;
  os << '\n';
  auto slots = [&](const std::vector<Slot>& v) {
    std::string out;
    for (auto s : v) out += (out.empty() ? "" : ",") + slot_name(cfg, s);
    return out;
  };
  for (const auto& s : cfg.statements) {
    os << "  " << s.id << " @" << s.offset << ' ' << to_string(s.kind) << '/' << to_string(s.detail);
    if (!s.defs.empty()) os << " def[" << slots(s.defs) << ']';
    if (!s.uses.empty()) os << " use[" << slots(s.uses) << ']';
    if (s.weak_def) os << " weak[" << slot_name(cfg, *s.weak_def) << ']';
    if (s.invoke) os << ' ' << to_string(s.invoke->kind) << ' ' << s.invoke->target.java_signature();
    if (s.field) os << ' ' << s.field->field.qualified_name();
    if (!s.text.empty()) os << " \"" << s.text << '"';
    if (!s.value_type.empty()) os << " : " << s.value_type;
    auto succ = cfg.successors(s.id);
    if (!succ.empty()) {
      os << " ->";
      for (auto t : succ) os << ' ' << t;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace privflow
