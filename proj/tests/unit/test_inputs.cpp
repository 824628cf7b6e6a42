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

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "privflow/inputs.hpp"
#include "support/fixture_programs.hpp"
#include "support/harness.hpp"
#include "support/zip_writer.hpp"

using namespace privflow;
using namespace privflow::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("privflow-inputs-" + std::to_string(::getpid()) + "-" +
                                        std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static inline int counter = 0;
};

void write(const fs::path& p, const Bytes& b) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary).write(reinterpret_cast<const char*>(b.data()), static_cast<long>(b.size()));
}

Bytes simple_class(const std::string& name, int marker) {
  ClassBuilder c(name);
  c.method(kAccPublic | kAccStatic, "m" + std::to_string(marker), "()V").op(0xb1);
  return c.bytes();
}

std::vector<std::string> names(const std::vector<ClassArtifact>& v) {
  std::vector<std::string> out;
  for (const auto& c : v) out.push_back(c.name);
  return out;
}

}  // namespace

TEST_CASE("directories are scanned recursively and sorted") {
  TempDir t;
  write(t.path / "z/Z.class", simple_class("z/Z", 0));
  write(t.path / "a/A.class", simple_class("a/A", 0));
  write(t.path / "a/notes.txt", {'h', 'i'});
  write(t.path / "lib/extra.jar", write_zip({{"q/Q.class", simple_class("q/Q", 0), true}}));
  Diagnostics diag;
  auto classes = load_inputs({t.path.string()}, diag);
  CHECK(names(classes) == std::vector<std::string>{"a.A", "q.Q", "z.Z"});
  CHECK(diag.empty());
}

TEST_CASE("jar entries outside class files are ignored") {
  TempDir t;
  auto jar = t.path / "app.jar";
  write(jar, write_zip({{"META-INF/MANIFEST.MF", {'M'}, false},
                        {"META-INF/versions/9/p/P.class", simple_class("p/P", 9), true},
                        {"p/P.class", simple_class("p/P", 1), true},
                        {"res/data.bin", {1, 2, 3}, false}}));
  Diagnostics diag;
  auto classes = load_inputs({jar.string()}, diag);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].methods[0].ref.name == "m1");
  CHECK(diag.empty());
}

TEST_CASE("first definition of a duplicate class wins") {
  TempDir t;
  write(t.path / "one/D.class", simple_class("D", 1));
  write(t.path / "two.jar", write_zip({{"D.class", simple_class("D", 2), true}}));
  Diagnostics diag;
  auto classes = load_inputs({(t.path / "two.jar").string(), (t.path / "one/D.class").string()}, diag);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].methods[0].ref.name == "m2");
  CHECK(diag.count_containing("duplicate class D") == 1);
}

TEST_CASE("malformed members are skipped, bad paths throw") {
  TempDir t;
  write(t.path / "Good.class", simple_class("Good", 0));
  write(t.path / "Bad.class", {0xCA, 0xFE, 0xBA, 0xBE, 0, 0});
  Diagnostics diag;
  auto classes = load_inputs({t.path.string()}, diag);
  CHECK(names(classes) == std::vector<std::string>{"Good"});
  CHECK(diag.count_containing("malformed class file skipped") == 1);

  CHECK_THROWS_AS(load_inputs({(t.path / "missing").string()}, diag), InputError);
  CHECK_THROWS_WITH_AS(load_inputs({fixture_path("malformed/notajar.jar")}, diag),
                       doctest::Contains("not a readable JAR"), InputError);

  Diagnostics broken;
  auto partial = load_inputs({fixture_path("malformed/broken.jar")}, broken);
  CHECK(partial.size() == 1);
  CHECK(broken.size() == 1);
  CHECK(broken.count_containing("malformed class file skipped") == 1);
}

TEST_CASE("parallel loading matches sequential loading") {
  Diagnostics d1, d4;
  std::vector<std::string> paths{fixture_path("table3/classes"), fixture_path("fig1/classes")};
  auto a = load_inputs(paths, d1, 1);
  auto b = load_inputs(paths, d4, 4);
  CHECK(names(a) == names(b));
  CHECK(d1.warnings() == d4.warnings());
}
