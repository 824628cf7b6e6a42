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

#include "privflow/hierarchy.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace privflow {

namespace {

struct JdkEdge {
  const char* cls;
  const char* super;
};

// Enough of the JDK to let catalog entries declared on a supertype match
// calls through the usual concrete stream, reader and writer classes.
constexpr JdkEdge kJdkEdges[] = {
    {"java.io.FilterInputStream", "java.io.InputStream"},
    {"java.io.DataInputStream", "java.io.FilterInputStream"},
    {"java.io.DataInputStream", "java.io.DataInput"},
    {"java.io.BufferedInputStream", "java.io.FilterInputStream"},
    {"java.io.FileInputStream", "java.io.InputStream"},
    {"java.io.ByteArrayInputStream", "java.io.InputStream"},
    {"java.io.ObjectInputStream", "java.io.InputStream"},
    {"java.io.ObjectInputStream", "java.io.ObjectInput"},
    {"java.io.ObjectInput", "java.io.DataInput"},
    {"org.apache.commons.io.input.ProxyInputStream", "java.io.FilterInputStream"},
    {"java.io.FilterOutputStream", "java.io.OutputStream"},
    {"java.io.PrintStream", "java.io.FilterOutputStream"},
    {"java.io.DataOutputStream", "java.io.FilterOutputStream"},
    {"java.io.BufferedOutputStream", "java.io.FilterOutputStream"},
    {"java.io.FileOutputStream", "java.io.OutputStream"},
    {"java.io.ObjectOutputStream", "java.io.OutputStream"},
    {"java.io.BufferedReader", "java.io.Reader"},
    {"java.io.InputStreamReader", "java.io.Reader"},
    {"java.io.FileReader", "java.io.InputStreamReader"},
    {"java.io.BufferedWriter", "java.io.Writer"},
    {"java.io.PrintWriter", "java.io.Writer"},
    {"java.io.OutputStreamWriter", "java.io.Writer"},
    {"java.io.FileWriter", "java.io.OutputStreamWriter"},
    {"java.net.HttpURLConnection", "java.net.URLConnection"},
    {"javax.net.ssl.HttpsURLConnection", "java.net.HttpURLConnection"},
    {"java.sql.PreparedStatement", "java.sql.Statement"},
    {"java.sql.CallableStatement", "java.sql.PreparedStatement"},
    {"javax.servlet.http.HttpServletRequest", "javax.servlet.ServletRequest"},
    {"javax.servlet.http.HttpServletResponse", "javax.servlet.ServletResponse"},
    {"android.widget.EditText", "android.widget.TextView"},
};

const std::vector<std::string> kEmpty;

}  // namespace

ClassHierarchy::ClassHierarchy(const std::vector<ClassArtifact>& classes, bool with_jdk_table) {
  for (const auto& c : classes) {
    std::vector<std::string> supers;
    if (c.super_name) supers.push_back(*c.super_name);
    supers.insert(supers.end(), c.interfaces.begin(), c.interfaces.end());
    add(c.name, supers);
  }
  if (with_jdk_table) add_jdk_table();
}

void ClassHierarchy::add(const std::string& cls, const std::vector<std::string>& supertypes) {
  if (supers_.contains(cls)) return;
  auto& own = supers_[cls];
  for (const auto& s : supertypes) {
    if (s == cls || std::find(own.begin(), own.end(), s) != own.end()) continue;
    own.push_back(s);
    subs_[s].push_back(cls);
  }
}

void ClassHierarchy::add_jdk_table() {
  std::map<std::string, std::vector<std::string>> table;
  for (const auto& e : kJdkEdges) table[e.cls].push_back(e.super);
  for (const auto& [cls, supers] : table) add(cls, supers);
}

const std::vector<std::string>& ClassHierarchy::direct_supertypes(const std::string& cls) const {
  auto it = supers_.find(cls);
  return it == supers_.end() ? kEmpty : it->second;
}

const std::vector<std::string>& ClassHierarchy::direct_subtypes(const std::string& cls) const {
  auto it = subs_.find(cls);
  return it == subs_.end() ? kEmpty : it->second;
}

bool ClassHierarchy::is_subtype(const std::string& sub, const std::string& super) const {
  if (sub == super) return true;
  auto all = ancestors(sub);
  return std::find(all.begin(), all.end(), super) != all.end();
}

std::vector<std::string> ClassHierarchy::ancestors(const std::string& cls) const {
  std::vector<std::string> out{cls};
  std::set<std::string> seen{cls};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& s : direct_supertypes(out[i]))
      if (seen.insert(s).second) out.push_back(s);
  }
  return out;
}

std::vector<std::string> ClassHierarchy::descendants(const std::string& cls) const {
  std::set<std::string> seen{cls};
  std::deque<std::string> queue{cls};
  while (!queue.empty()) {
    auto c = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : direct_subtypes(c))
      if (seen.insert(s).second) queue.push_back(s);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace privflow
