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

#include "support/synthetic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>

#include "privflow/opcodes.hpp"
#include "privflow/program.hpp"

namespace privflow::testing {

namespace {

constexpr const char* kIo = "syn/Io";
constexpr const char* kSig = "([B)[B";

std::string internal(std::string dotted) {
  std::replace(dotted.begin(), dotted.end(), '.', '/');
  return dotted;
}

MethodRef io_method(const char* name, TypeDescriptor ret) { return MethodRef{"syn.Io", name, {"[B"}, std::move(ret)}; }

}  // namespace

MethodRef SynMethod::ref() const { return MethodRef{cls, name, {"[B"}, "[B"}; }

MethodRef synthetic_read() { return io_method("read", "I"); }
MethodRef synthetic_write() { return io_method("write", "V"); }
MethodRef synthetic_send() { return io_method("send", "V"); }

Catalog synthetic_catalog() {
  Diagnostics diag;
  Catalog c = parse_catalog(
      "source\tint syn.Io.read(byte[])\tI/O\n"
      "sink\tvoid syn.Io.write(byte[])\tI/O\n"
      "sink\tvoid syn.Io.send(byte[])\tNetwork\n",
      diag, "synthetic");
  if (!diag.empty()) throw std::logic_error("synthetic catalog: " + diag.warnings().front().to_string());
  return c;
}

SynProgram generate_program(std::uint64_t seed, const SynOptions& options) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  SynProgram syn;
  int n = pick(options.min_methods, options.max_methods);
  for (int i = 0; i < n; ++i) {
    SynMethod m;
    int cls = i / options.classes_per_package;
    m.cls = "syn.p" + std::to_string(cls % 3) + ".C" + std::to_string(cls);
    m.name = "m" + std::to_string(i);
    int count = pick(1, options.max_actions);
    for (int k = 0; k < count; ++k) {
      SynAction a;
      int roll = pick(0, 99);
      if (roll < 20) {
        a.kind = SynKind::source;
      } else if (roll < 60) {
        a.kind = SynKind::call;
      } else if (roll < 75) {
        a.kind = SynKind::call_keep;
      } else {
        a.kind = roll < 90 ? SynKind::sink_io : SynKind::sink_net;
      }
      if ((a.kind == SynKind::call || a.kind == SynKind::call_keep)) {
        if (i + 1 >= n) {
          a.kind = SynKind::sink_io;
        } else {
          a.callee = pick(i + 1, n - 1);
        }
      }
      m.actions.push_back(a);
    }
    syn.methods.push_back(std::move(m));
  }

  namespace op = privflow::op;
  std::map<std::string, std::unique_ptr<ClassBuilder>> classes;
  for (auto& m : syn.methods) {
    auto& cb = classes[m.cls];
    if (!cb) cb = std::make_unique<ClassBuilder>(internal(m.cls));
    auto& code = cb->method(kAccPublic | kAccStatic, m.name, kSig);
    for (auto& a : m.actions) {
      switch (a.kind) {
        case SynKind::source:
          code.iconst(8).newarray(kTByte).local(op::astore, 0).local(op::aload, 0);
          a.offset = code.pc();
          code.invoke(op::invokestatic, kIo, "read", "([B)I").op(op::pop);
          break;
        case SynKind::call:
        case SynKind::call_keep: {
          const auto& callee = syn.methods[static_cast<std::size_t>(a.callee)];
          code.local(op::aload, 0);
          a.offset = code.pc();
          code.invoke(op::invokestatic, internal(callee.cls), callee.name, kSig);
          if (a.kind == SynKind::call) {
            code.local(op::astore, 0);
          } else {
            code.op(op::pop);
          }
          break;
        }
        case SynKind::sink_io:
        case SynKind::sink_net:
          code.local(op::aload, 0);
          a.offset = code.pc();
          code.invoke(op::invokestatic, kIo, a.kind == SynKind::sink_io ? "write" : "send", "([B)V");
          break;
      }
    }
    code.local(op::aload, 0);
    m.return_offset = code.pc();
    code.op(op::areturn);
  }
  for (auto& [name, cb] : classes) syn.class_files.emplace_back(internal(name), cb->bytes());
  return syn;
}

namespace {

// A flow point in model terms: action index, or -1 for start / return.
struct ModelFlow {
  int method = 0;
  int begin = -1;  // -1: start
  int end = -1;    // -1: return
};

class Enumerator {
 public:
  Enumerator(const SynProgram& syn, const Program& program, std::size_t budget)
      : syn_(syn), program_(program), budget_(budget) {
    for (std::size_t i = 0; i < syn.methods.size(); ++i) {
      const auto& m = syn.methods[i];
      for (std::size_t k = 0; k < m.actions.size(); ++k)
        if (m.actions[k].callee >= 0) callers_[m.actions[k].callee].push_back({static_cast<int>(i), static_cast<int>(k)});
      local_flows(static_cast<int>(i));
    }
  }

  BruteForceResult run() {
    BruteForceResult out;
    for (std::size_t i = 0; i < syn_.methods.size(); ++i) {
      const auto& m = syn_.methods[i];
      for (std::size_t k = 0; k < m.actions.size(); ++k) {
        if (m.actions[k].kind != SynKind::source) continue;
        std::vector<ModelFlow> roots;
        for (const auto& f : from(static_cast<int>(i), static_cast<int>(k)))
          if (f.end == -1) roots.push_back(f);
        if (roots.empty()) continue;

        ExpectedFlow e;
        e.source = {m.ref(), stmt(static_cast<int>(i), m.actions[k].offset, StmtKind::invoke)};
        e.nodes.insert(synthetic_read());
        e.edges.insert({synthetic_read(), m.ref()});
        current_ = &e;
        for (const auto& r : roots) {
          std::vector<LocalFlow> path;
          std::set<LocalFlow> on_path;
          walk(r, path, on_path);
        }
        out.flows.push_back(std::move(e));
      }
    }
    std::sort(out.flows.begin(), out.flows.end(),
              [](const ExpectedFlow& a, const ExpectedFlow& b) { return a.source < b.source; });
    out.paths = paths_;
    out.exhausted = exhausted_;
    return out;
  }

 private:
  // v carries taint from exactly one begin point at a time: every assignment
  // to it is a strong update, and nothing else writes it.
  void local_flows(int i) {
    const auto& acts = syn_.methods[static_cast<std::size_t>(i)].actions;
    int origin = -1;  // start taints the parameter
    for (int k = 0; k < static_cast<int>(acts.size()); ++k) {
      const auto& a = acts[static_cast<std::size_t>(k)];
      switch (a.kind) {
        case SynKind::source: origin = k; break;
        case SynKind::call:
          flows_[{i, origin}].push_back({i, origin, k});
          origin = k;
          break;
        case SynKind::call_keep:
        case SynKind::sink_io:
        case SynKind::sink_net:
          flows_[{i, origin}].push_back({i, origin, k});
          break;
      }
    }
    flows_[{i, origin}].push_back({i, origin, -1});
  }

  const std::vector<ModelFlow>& from(int method, int begin) const {
    static const std::vector<ModelFlow> none;
    auto it = flows_.find({method, begin});
    return it == flows_.end() ? none : it->second;
  }

  StmtId stmt(int method, std::uint32_t offset, StmtKind kind) const {
    const Cfg* cfg = program_.cfg(syn_.methods[static_cast<std::size_t>(method)].ref());
    if (!cfg) throw std::logic_error("synthetic method not lowered");
    for (const auto& s : cfg->statements)
      if (s.offset == offset && s.kind == kind) return s.id;
    throw std::logic_error("no statement at offset " + std::to_string(offset));
  }

  FlowPoint point(int method, int action, bool as_begin) const {
    if (action == -1)
      return as_begin ? start_point() : FlowPoint{PointKind::return_point, stmt(method, syn_.methods[static_cast<std::size_t>(method)].return_offset, StmtKind::return_value), std::nullopt};
    const auto& a = syn_.methods[static_cast<std::size_t>(method)].actions[static_cast<std::size_t>(action)];
    PointKind kind = PointKind::invoke;
    MethodRef target;
    switch (a.kind) {
      case SynKind::source: kind = PointKind::input_primitive; target = synthetic_read(); break;
      case SynKind::sink_io: kind = PointKind::output_primitive; target = synthetic_write(); break;
      case SynKind::sink_net: kind = PointKind::output_primitive; target = synthetic_send(); break;
      default: target = syn_.methods[static_cast<std::size_t>(a.callee)].ref();
    }
    return {kind, stmt(method, a.offset, StmtKind::invoke), target};
  }

  LocalFlow concrete(const ModelFlow& f) const {
    LocalFlow l;
    l.method = syn_.methods[static_cast<std::size_t>(f.method)].ref();
    l.begin = point(f.method, f.begin, true);
    l.end = point(f.method, f.end, false);
    l.value_type = "[B";
    if (l.begin.kind == PointKind::input_primitive && l.end.kind == PointKind::return_point)
      l.kind = FlowKind::source_flow;
    else if (l.begin.kind == PointKind::start && l.end.kind == PointKind::output_primitive)
      l.kind = FlowKind::sink_flow;
    else
      l.kind = FlowKind::process_flow;
    return l;
  }

  std::vector<std::pair<ModelFlow, ChainRule>> successors(const ModelFlow& f) const {
    std::vector<std::pair<ModelFlow, ChainRule>> out;
    if (f.end == -1) {
      auto it = callers_.find(f.method);
      if (it != callers_.end())
        for (const auto& [caller, action] : it->second)
          for (const auto& t : from(caller, action)) out.push_back({t, ChainRule::return_chain});
      return out;
    }
    const auto& a = syn_.methods[static_cast<std::size_t>(f.method)].actions[static_cast<std::size_t>(f.end)];
    if (a.callee >= 0)
      for (const auto& t : from(a.callee, -1)) out.push_back({t, ChainRule::call_chain});
    return out;
  }

  void walk(const ModelFlow& f, std::vector<LocalFlow>& path, std::set<LocalFlow>& on_path) {
    if (++paths_ > budget_) {
      exhausted_ = true;
      return;
    }
    LocalFlow lf = concrete(f);
    path.push_back(lf);
    on_path.insert(lf);
    auto& e = *current_;
    e.flows.insert(lf);
    e.nodes.insert(lf.method);
    if (lf.end.kind == PointKind::output_primitive) {
      e.nodes.insert(*lf.end.target);
      e.sinks.insert(*lf.end.target);
      e.edges.insert({*lf.end.target, lf.method});
    }
    for (const auto& [t, rule] : successors(f)) {
      LocalFlow lt = concrete(t);
      e.steps.insert({lf, lt, rule});
      e.edges.insert(rule == ChainRule::return_chain ? MethodEdge{lf.method, lt.method} : MethodEdge{lt.method, lf.method});
      if (!on_path.contains(lt) && !exhausted_) walk(t, path, on_path);
    }
    on_path.erase(lf);
    path.pop_back();
  }

  const SynProgram& syn_;
  const Program& program_;
  std::size_t budget_;
  std::map<int, std::vector<std::pair<int, int>>> callers_;
  std::map<std::pair<int, int>, std::vector<ModelFlow>> flows_;
  ExpectedFlow* current_ = nullptr;
  std::size_t paths_ = 0;
  bool exhausted_ = false;
};

}  // namespace

BruteForceResult brute_force_flows(const SynProgram& syn, const Program& program, std::size_t path_budget) {
  return Enumerator(syn, program, path_budget).run();
}

}  // namespace privflow::testing
