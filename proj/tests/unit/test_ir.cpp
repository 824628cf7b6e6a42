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

#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "privflow/opcodes.hpp"
#include "support/harness.hpp"
#include "support/synthetic.hpp"

using namespace privflow;
using namespace privflow::testing;
namespace op = privflow::op;

namespace {

void check_well_formed(const Cfg& cfg, const MethodBody& body) {
  CAPTURE(cfg.method.java_signature());
  REQUIRE_FALSE(cfg.statements.empty());
  CHECK(cfg.entry == 0);
  CHECK(cfg.max_locals == body.max_locals);
  CHECK(std::is_sorted(cfg.edges.begin(), cfg.edges.end()));
  CHECK(std::adjacent_find(cfg.edges.begin(), cfg.edges.end()) == cfg.edges.end());

  std::map<Slot, int> temp_defs;
  for (std::size_t i = 0; i < cfg.statements.size(); ++i) {
    const auto& s = cfg.statements[i];
    CHECK(s.id == i);
    CHECK(std::is_sorted(s.defs.begin(), s.defs.end()));
    CHECK(std::is_sorted(s.uses.begin(), s.uses.end()));
    CHECK(std::adjacent_find(s.uses.begin(), s.uses.end()) == s.uses.end());
    CHECK(s.use_types.size() == s.uses.size());
    for (auto d : s.defs) {
      CHECK(d < cfg.slot_count);
      if (cfg.is_temp(d)) ++temp_defs[d];
    }
    for (auto u : s.uses) CHECK(u < cfg.slot_count);
    if (!s.defs.empty()) CHECK_FALSE(s.value_type.empty());
    if (s.kind == StmtKind::other) CHECK(s.defs.empty());
    if (s.kind == StmtKind::invoke) CHECK(s.invoke.has_value());
    if (s.kind == StmtKind::field_load || s.kind == StmtKind::field_store) CHECK(s.field.has_value());
    if (s.kind == StmtKind::return_value) CHECK(cfg.successors(s.id).empty());
    CHECK(body.index_of(s.offset).has_value());
  }
  for (const auto& [slot, n] : temp_defs) {
    CAPTURE(slot);
    CHECK(n == 1);
  }
  for (const auto& e : cfg.edges) {
    CHECK(e.from < cfg.statements.size());
    CHECK(e.to < cfg.statements.size());
    auto preds = cfg.predecessors(e.to);
    CHECK(std::find(preds.begin(), preds.end(), e.from) != preds.end());
  }
  auto table = cfg.successor_table();
  REQUIRE(table.size() == cfg.statements.size());
  for (StmtId i = 0; i < table.size(); ++i) CHECK(table[i] == cfg.successors(i));

  // Parameters follow the descriptor, receiver first.
  std::vector<TypeDescriptor> expected;
  if (!cfg.is_static) expected.push_back(*java_to_descriptor(cfg.method.declaring_class));
  expected.insert(expected.end(), cfg.method.param_types.begin(), cfg.method.param_types.end());
  REQUIRE(cfg.params.size() == expected.size());
  Slot next = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(cfg.params[i].first == next);
    CHECK(cfg.params[i].second == expected[i]);
    next += (expected[i] == "J" || expected[i] == "D") ? 2 : 1;
  }
}

const Statement& only(const Cfg& cfg, StmtDetail detail) {
  auto n = std::count_if(cfg.statements.begin(), cfg.statements.end(),
                         [&](const Statement& s) { return s.detail == detail; });
  REQUIRE(n == 1);
  return *std::find_if(cfg.statements.begin(), cfg.statements.end(),
                       [&](const Statement& s) { return s.detail == detail; });
}

Cfg lower_one(ClassBuilder& c, const std::string& name) {
  Diagnostics diag;
  auto artifact = parse_class_file(c.bytes(), diag, "test");
  for (const auto& m : artifact.methods)
    if (m.ref.name == name) return lower_method(m);
  FAIL("no such method");
  return {};
}

}  // namespace

TEST_CASE("lowered fixture methods are well formed") {
  std::size_t methods = 0;
  for (const auto& c : manifest()) {
    if (c.error) continue;
    auto loaded = load_case(c);
    for (const auto& ref : loaded->program->analyzable_methods()) {
      check_well_formed(*loaded->program->cfg(ref), *loaded->program->find_body(ref));
      ++methods;
    }
  }
  CHECK(methods > 40);
}

TEST_CASE("lowered synthetic methods are well formed") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto syn = generate_program(seed, {});
    Diagnostics diag;
    auto program = program_from_bytes(syn.class_files, diag);
    CHECK(diag.empty());
    CHECK(program->analyzable_methods().size() == syn.methods.size());
    for (const auto& ref : program->analyzable_methods())
      check_well_formed(*program->cfg(ref), *program->find_body(ref));
  }
}

TEST_CASE("constructor with a field store") {
  auto c = find_case(manifest(), "fig1");
  auto loaded = load_case(c);
  MethodRef init{"Student", "<init>", {"Ljava/io/DataInputStream;"}, "V"};
  const Cfg* cfg = loaded->program->cfg(init);
  REQUIRE(cfg);
  CHECK(cfg->is_straight_line());

  const auto& store = only(*cfg, StmtDetail::field_access);
  CHECK(store.kind == StmtKind::field_store);
  CHECK(store.weak_def == Slot{0});
  CHECK(store.defs.empty());
  CHECK(store.field->field.name == "mark");
  REQUIRE(store.stored_value);

  auto read = std::find_if(cfg->statements.begin(), cfg->statements.end(), [](const Statement& s) {
    return s.invoke && s.invoke->target.name == "read";
  });
  REQUIRE(read != cfg->statements.end());
  CHECK(read->invoke->receiver == Slot{1});
  CHECK(read->invoke->args == std::vector<Slot>{2});
  CHECK(read->type_of_use(2) == "[B");
  CHECK(read->invoke->result == *store.stored_value);

  const auto& ret = cfg->statements.back();
  CHECK(ret.kind == StmtKind::return_value);
  CHECK(ret.uses == std::vector<Slot>{0});
  CHECK(ret.value_type == "LStudent;");
}

TEST_CASE("joins, handlers and switches") {
  auto loaded = load_case(find_case(manifest(), "controlflow"));
  const auto& p = *loaded->program;

  const Cfg* ternary = p.cfg({"cf.Branches", "ternary", {"Z", "I"}, "I"});
  REQUIRE(ternary);
  CHECK_FALSE(ternary->is_straight_line());
  const auto& phi = only(*ternary, StmtDetail::phi);
  CHECK(phi.uses.size() == 2);
  CHECK(ternary->predecessors(phi.id).size() == 2);

  const Cfg* guarded = p.cfg({"cf.Branches", "guarded", {"Ljava/io/DataInputStream;"}, "[B"});
  REQUIRE(guarded);
  const auto& caught = only(*guarded, StmtDetail::caught_exception);
  CHECK(caught.value_type == "Ljava/io/IOException;");
  CHECK(std::count_if(guarded->edges.begin(), guarded->edges.end(), [&](const CfgEdge& e) {
          return e.exceptional && e.to == caught.id;
        }) >= 1);

  const Cfg* name = p.cfg({"cf.Branches", "name", {"I"}, "Ljava/lang/String;"});
  REQUIRE(name);
  CHECK(name->successors(only(*name, StmtDetail::switch_jump).id).size() == 4);

  // Subroutines are reported, not lowered.
  CHECK(p.cfg({"cf.Legacy", "withFinally", {"I"}, "I"}) == nullptr);
  CHECK(loaded->diag.count_containing("method not analyzable: subroutines") == 1);
}

TEST_CASE("wide values and conversions") {
  ClassBuilder c("t/Wide");
  auto& m = c.method(kAccPublic | kAccStatic, "f", "(JI)I");
  m.local(op::lload, 0).op(op::lconst_1).op(op::ladd).local(op::lstore, 3);
  m.local(op::lload, 3).op(op::l2i).local(op::iload, 2).op(op::iadd).op(op::ireturn);
  auto cfg = lower_one(c, "f");
  CHECK(cfg.params == std::vector<std::pair<Slot, TypeDescriptor>>{{0, "J"}, {2, "I"}});
  const auto& conv = only(cfg, StmtDetail::conversion);
  CHECK(conv.value_type == "I");
  CHECK(conv.use_types == std::vector<TypeDescriptor>{"J"});
  CHECK(cfg.is_straight_line());
}

TEST_CASE("stack manipulation aliases values") {
  ClassBuilder c("t/Dup");
  auto& m = c.method(kAccPublic | kAccStatic, "f", "(Ljava/lang/String;)Ljava/lang/String;");
  m.local(op::aload, 0).op(op::dup).local(op::astore, 1).op(op::areturn);
  auto cfg = lower_one(c, "f");
  const auto& ret = cfg.statements.back();
  CHECK(ret.kind == StmtKind::return_value);
  REQUIRE(ret.uses.size() == 1);
  // Either the parameter itself or a copy of it; never an unrelated slot.
  bool aliased = ret.uses[0] == 0 || std::any_of(cfg.statements.begin(), cfg.statements.end(), [&](const Statement& s) {
                   return s.defines(ret.uses[0]) && s.uses == std::vector<Slot>{0};
                 });
  CHECK(aliased);
}

TEST_CASE("unreachable bytecode is not lowered") {
  ClassBuilder c("t/Dead");
  auto& m = c.method(kAccPublic | kAccStatic, "f", "()I");
  m.iconst(1).op(op::ireturn).iconst(2).iconst(3).op(op::iadd).op(op::ireturn);
  auto cfg = lower_one(c, "f");
  CHECK(cfg.statements.size() == 2);
}

TEST_CASE("lowering failures") {
  {
    ClassBuilder c("t/Under");
    c.method(kAccPublic | kAccStatic, "f", "()V").op(op::pop).op(op::return_);
    CHECK_THROWS_WITH_AS(lower_one(c, "f"), doctest::Contains("operand stack underflow"), LoweringError);
  }
  {
    ClassBuilder c("t/Join");
    auto& m = c.method(kAccPublic | kAccStatic, "f", "(I)I");
    auto join = m.label();
    m.local(op::iload, 0).jump(op::ifeq, join).iconst(7);
    m.bind(join).local(op::iload, 0).op(op::ireturn);
    CHECK_THROWS_WITH_AS(lower_one(c, "f"), doctest::Contains("inconsistent stack depth at join"), LoweringError);
  }
  {
    ClassBuilder c("t/Fall");
    c.method(kAccPublic | kAccStatic, "f", "()V").op(op::nop);
    CHECK_THROWS_WITH_AS(lower_one(c, "f"), doctest::Contains("falls off the end"), LoweringError);
  }
  {
    ClassBuilder c("t/Split");
    c.method(kAccPublic | kAccStatic, "f", "()V").op(op::lconst_0).op(op::pop).op(op::pop).op(op::return_);
    CHECK_THROWS_WITH_AS(lower_one(c, "f"), doctest::Contains("64-bit"), LoweringError);
  }
  ClassBuilder c("t/Soft");
  c.method(kAccPublic | kAccStatic, "f", "()V").op(op::pop).op(op::return_);
  Diagnostics diag;
  auto artifact = parse_class_file(c.bytes(), diag, "test");
  CHECK_FALSE(try_lower_method(artifact.methods[0], diag));
  CHECK(diag.count_containing("method not analyzable: operand stack underflow") == 1);
}

TEST_CASE("dump lists every statement") {
  auto loaded = load_case(find_case(manifest(), "fig1"));
  for (const auto& ref : loaded->program->analyzable_methods()) {
    const Cfg* cfg = loaded->program->cfg(ref);
    auto text = dump_ir(*cfg);
    CHECK(text.find(ref.java_signature()) != std::string::npos);
    CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == cfg->statements.size() + 2);
  }
}
