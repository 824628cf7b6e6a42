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

#include "doctest.h"
#include "privflow/call_graph.hpp"
#include "privflow/opcodes.hpp"
#include "support/harness.hpp"

using namespace privflow;
using namespace privflow::testing;
namespace op = privflow::op;

namespace {

const Statement& call_to(const Cfg& cfg, const std::string& name) {
  auto it = std::find_if(cfg.statements.begin(), cfg.statements.end(),
                         [&](const Statement& s) { return s.invoke && s.invoke->target.name == name; });
  REQUIRE(it != cfg.statements.end());
  return *it;
}

std::vector<std::string> signatures(const std::vector<MethodRef>& refs) {
  std::vector<std::string> out;
  for (const auto& r : refs) out.push_back(r.java_signature());
  return out;
}

}  // namespace

TEST_CASE("interface calls reach every loaded implementation") {
  auto loaded = load_case(find_case(manifest(), "cha"));
  const auto& p = *loaded->program;
  auto graph = build_call_graph(p);
  MethodRef run{"cha.Pipeline", "run", {"Lcha/TracingInput;", "Lcha/Codec;"}, "V"};
  const Cfg* cfg = p.cfg(run);
  REQUIRE(cfg);

  const auto& apply = call_to(*cfg, "apply");
  CHECK(signatures(graph.callees(run, apply.id)) ==
        std::vector<std::string>{"byte[] cha.Lower.apply(byte[])", "byte[] cha.Upper.apply(byte[])"});
  CHECK(signatures(resolve_call(p, *apply.invoke)) == signatures(graph.callees(run, apply.id)));

  const auto& read = call_to(*cfg, "read");
  CHECK(signatures(graph.callees(run, read.id)) == std::vector<std::string>{"byte[] cha.Pipeline.read(cha.TracingInput)"});

  // The library read has no code: one leaf edge to the named target.
  MethodRef inner{"cha.Pipeline", "read", {"Lcha/TracingInput;"}, "[B"};
  const auto& lib = call_to(*p.cfg(inner), "read");
  CHECK(resolve_call(p, *lib.invoke).empty());
  CHECK(signatures(graph.callees(inner, lib.id)) == std::vector<std::string>{"int cha.TracingInput.read(byte[])"});

  auto callers = graph.callers(MethodRef{"cha.Lower", "apply", {"[B"}, "[B"});
  REQUIRE(callers.size() == 1);
  CHECK(callers[0] == CallSite{run, apply.id});
}

TEST_CASE("inherited and overridden targets") {
  ClassBuilder base("h/Base");
  base.default_constructor();
  base.method(kAccPublic, "m", "()V").op(op::return_);
  base.method(kAccPublic | kAccStatic, "s", "()V").op(op::return_);
  ClassBuilder mid("h/Mid", "h/Base");
  mid.default_constructor();
  ClassBuilder leaf("h/Leaf", "h/Mid");
  leaf.default_constructor();
  leaf.method(kAccPublic, "m", "()V").op(op::return_);
  ClassBuilder user("h/User");
  auto& u = user.method(kAccPublic | kAccStatic, "go", "(Lh/Mid;Lh/Leaf;)V");
  u.local(op::aload, 0).invoke(op::invokevirtual, "h/Mid", "m", "()V");
  u.local(op::aload, 1).invoke(op::invokevirtual, "h/Leaf", "m", "()V");
  u.invoke(op::invokestatic, "h/Mid", "s", "()V");
  u.local(op::aload, 0).invoke(op::invokespecial, "h/Mid", "m", "()V");
  u.op(op::return_);

  Diagnostics diag;
  auto program = program_from_bytes(
      {{"h/Base", base.bytes()}, {"h/Mid", mid.bytes()}, {"h/Leaf", leaf.bytes()}, {"h/User", user.bytes()}}, diag);
  CHECK(diag.empty());
  auto graph = build_call_graph(*program);
  MethodRef go{"h.User", "go", {"Lh/Mid;", "Lh/Leaf;"}, "V"};
  const Cfg* cfg = program->cfg(go);
  REQUIRE(cfg);
  std::vector<std::vector<std::string>> per_site;
  for (const auto& s : cfg->statements)
    if (s.invoke) per_site.push_back(signatures(graph.callees(go, s.id)));
  REQUIRE(per_site.size() == 4);
  CHECK(per_site[0] == std::vector<std::string>{"void h.Base.m()", "void h.Leaf.m()"});
  CHECK(per_site[1] == std::vector<std::string>{"void h.Leaf.m()"});
  CHECK(per_site[2] == std::vector<std::string>{"void h.Base.s()"});
  CHECK(per_site[3] == std::vector<std::string>{"void h.Base.m()"});
}

TEST_CASE("callers and callees are mutually consistent") {
  for (const auto& c : manifest()) {
    if (c.error) continue;
    CAPTURE(c.name);
    auto loaded = load_case(c);
    auto graph = build_call_graph(*loaded->program);
    CHECK(std::is_sorted(graph.edges().begin(), graph.edges().end()));
    for (const auto& e : graph.edges()) {
      const auto& callees = graph.callees(e.caller, e.site);
      CHECK(std::find(callees.begin(), callees.end(), e.callee) != callees.end());
      const auto& callers = graph.callers(e.callee);
      CHECK(std::find(callers.begin(), callers.end(), CallSite{e.caller, e.site}) != callers.end());
      CHECK(graph.nodes().contains(e.caller));
    }
    for (const auto& m : loaded->program->analyzable_methods()) {
      const Cfg* cfg = loaded->program->cfg(m);
      for (const auto& s : cfg->statements)
        if (s.invoke && s.invoke->kind != InvokeKind::dynamic_call) CHECK_FALSE(graph.callees(m, s.id).empty());
    }
  }
}

TEST_CASE("classes of interest") {
  auto coi = [](const std::string& name) {
    const auto& c = find_case(manifest(), name);
    auto loaded = load_case(c);
    Diagnostics diag;
    auto catalog = case_catalog(c, diag);
    return find_coi(loaded->program->classes(), catalog, loaded->program->hierarchy());
  };
  CHECK(coi("fig1") == std::set<std::string>{"Student"});
  CHECK(coi("cha") == std::set<std::string>{"cha.Pipeline"});
  // Non-rich sources still mark their class; the type filter applies later.
  CHECK(coi("richtype").size() == 3);
}
