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

#include "support/json_schema.hpp"

#include <regex>
#include <stdexcept>

namespace privflow::testing {

namespace {

using nlohmann::json;

bool has_type(const json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "integer") return v.is_number_integer();
  if (type == "number") return v.is_number();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  throw std::invalid_argument("unknown schema type " + type);
}

class Validator {
 public:
  explicit Validator(const json& root) : root_(root) {}

  void check(const json& schema, const json& v, const std::string& at) {
    if (schema.is_boolean()) {
      if (!schema.get<bool>()) report(at, "no value allowed here");
      return;
    }
    if (auto ref = schema.find("$ref"); ref != schema.end()) {
      check(resolve(ref->get<std::string>()), v, at);
      return;
    }
    if (auto t = schema.find("type"); t != schema.end()) {
      bool ok = false;
      if (t->is_array()) {
        for (const auto& one : *t) ok = ok || has_type(v, one.get<std::string>());
      } else {
        ok = has_type(v, t->get<std::string>());
      }
      if (!ok) {
        report(at, "expected type " + t->dump() + ", got " + v.type_name());
        return;
      }
    }
    if (auto e = schema.find("enum"); e != schema.end()) {
      bool found = false;
      for (const auto& one : *e) found = found || one == v;
      if (!found) report(at, "value " + v.dump() + " not in enum");
    }
    if (auto c = schema.find("const"); c != schema.end() && *c != v) report(at, "expected " + c->dump());
    if (v.is_number()) {
      if (auto m = schema.find("minimum"); m != schema.end() && v.get<double>() < m->get<double>())
        report(at, "below minimum " + m->dump());
      if (auto m = schema.find("maximum"); m != schema.end() && v.get<double>() > m->get<double>())
        report(at, "above maximum " + m->dump());
    }
    if (v.is_string()) {
      const auto& s = v.get_ref<const std::string&>();
      if (auto m = schema.find("minLength"); m != schema.end() && s.size() < m->get<std::size_t>())
        report(at, "shorter than " + m->dump());
      if (auto p = schema.find("pattern"); p != schema.end() && !std::regex_search(s, std::regex(p->get<std::string>())))
        report(at, "does not match " + p->dump());
    }
    if (v.is_array()) {
      if (auto m = schema.find("minItems"); m != schema.end() && v.size() < m->get<std::size_t>())
        report(at, "fewer than " + m->dump() + " items");
      if (auto m = schema.find("maxItems"); m != schema.end() && v.size() > m->get<std::size_t>())
        report(at, "more than " + m->dump() + " items");
      if (auto items = schema.find("items"); items != schema.end())
        for (std::size_t i = 0; i < v.size(); ++i) check(*items, v[i], at + "/" + std::to_string(i));
    }
    if (v.is_object()) {
      if (auto req = schema.find("required"); req != schema.end())
        for (const auto& key : *req)
          if (!v.contains(key.get<std::string>())) report(at, "missing property " + key.get<std::string>());
      json props = schema.value("properties", json::object());
      for (const auto& [key, value] : v.items()) {
        if (props.contains(key)) {
          check(props[key], value, at + "/" + key);
        } else if (auto extra = schema.find("additionalProperties"); extra != schema.end()) {
          if (extra->is_boolean() && !extra->get<bool>()) {
            report(at, "unexpected property " + key);
          } else if (extra->is_object()) {
            check(*extra, value, at + "/" + key);
          }
        }
      }
    }
  }

  std::vector<std::string> errors;

 private:
  const json& resolve(const std::string& ref) const {
    if (!ref.starts_with("#/")) throw std::invalid_argument("only local $ref is supported: " + ref);
    return root_.at(json::json_pointer(ref.substr(1)));
  }

  void report(const std::string& at, const std::string& what) { errors.push_back((at.empty() ? "/" : at) + ": " + what); }

  const json& root_;
};

}  // namespace

std::vector<std::string> validate_schema(const nlohmann::json& schema, const nlohmann::json& doc) {
  Validator v(schema);
  v.check(schema, doc, "");
  return std::move(v.errors);
}

}  // namespace privflow::testing
