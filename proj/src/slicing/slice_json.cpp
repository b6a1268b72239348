// Copyright 2026 The typeslice Authors
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

#include "common/errors.h"
#include "slicing/slices.h"

namespace typeslice {

namespace {

constexpr std::string_view kDefKinds[] = {"Local", "Parameter", "CallResult", "Literal", "Capture"};

Json spans_to_json(const std::vector<SourceSpan>& spans) {
  Json a = Json::array();
  for (const SourceSpan& s : spans) a.push_back(span_to_json(s));
  return a;
}

Json slice_to_json(const UsageSlice& s) {
  Json t = definition_to_json(s.target);
  t["defSource"] = definition_to_json(s.def_source);
  Json calls = Json::array();
  for (const ObservedCall& c : s.calls) {
    calls.push_back({{"callee", c.callee},
                     {"role", to_string(c.role)},
                     {"position", c.position},
                     {"span", span_to_json(c.span)},
                     {"argTypes", c.arg_types}});
  }
  t["calls"] = std::move(calls);
  Json members = Json::array();
  for (const MemberRead& m : s.members) members.push_back({{"name", m.name}, {"span", span_to_json(m.span)}});
  t["members"] = std::move(members);
  t["usages"] = spans_to_json(s.usages);
  t["lowSignal"] = s.low_signal;
  return t;
}

UsageSlice slice_from_json(const Json& t, const std::string& scope) {
  UsageSlice s;
  s.scope = scope;
  s.target = definition_from_json(t);
  if (s.target.scope.empty()) s.target.scope = scope;
  s.def_source = t.contains("defSource") ? definition_from_json(t["defSource"]) : s.target;
  if (t.contains("calls")) {
    for (const Json& c : t["calls"]) {
      ObservedCall call;
      call.callee = c.at("callee").get<std::string>();
      std::string role = c.at("role").get<std::string>();
      if (role == "InvokedOn") {
        call.role = CallRole::InvokedOn;
      } else if (role == "ArgumentTo") {
        call.role = CallRole::ArgumentTo;
      } else {
        throw FormatError("unknown call role '" + role + "'");
      }
      call.position = c.at("position").get<int>();
      call.span = span_from_json(c.at("span"));
      if (c.contains("argTypes")) call.arg_types = c["argTypes"].get<std::vector<std::string>>();
      s.calls.push_back(std::move(call));
    }
  }
  if (t.contains("members")) {
    for (const Json& m : t["members"]) s.members.push_back({m.at("name").get<std::string>(), span_from_json(m.at("span"))});
  }
  for (const Json& u : t.at("usages")) s.usages.push_back(span_from_json(u));
  s.low_signal = t.value("lowSignal", s.calls.empty() && s.members.empty());
  return s;
}

FileSlices one_file_from_json(const Json& j) {
  FileSlices f;
  f.file = j.at("file").get<std::string>();
  for (const Json& g : j.at("slices")) {
    ProgramUsageSlice group;
    group.scope = g.at("scope").get<std::string>();
    group.source = g.at("source").get<std::string>();
    if (g.contains("span")) {
      group.span = span_from_json(g["span"]);
    } else {
      group.span.end_offset = static_cast<uint32_t>(group.source.size());
    }
    if (g.contains("statementEnds")) group.statement_ends = g["statementEnds"].get<std::vector<uint32_t>>();
    for (const Json& t : g.at("targets")) group.slices.push_back(slice_from_json(t, group.scope));
    f.groups.push_back(std::move(group));
  }
  return f;
}

}  // namespace

std::string_view to_string(DefKind kind) { return kDefKinds[static_cast<int>(kind)]; }

std::string_view to_string(CallRole role) { return role == CallRole::InvokedOn ? "InvokedOn" : "ArgumentTo"; }

DefKind def_kind_from_string(std::string_view s) {
  for (size_t i = 0; i < std::size(kDefKinds); ++i) {
    if (kDefKinds[i] == s) return static_cast<DefKind>(i);
  }
  throw FormatError("unknown definition kind '" + std::string(s) + "'");
}

Json definition_to_json(const Definition& d) {
  return Json{{"symbol", d.symbol},       {"defKind", to_string(d.kind)}, {"detail", d.detail},
              {"typeName", d.type_name}, {"span", span_to_json(d.span)}, {"scope", d.scope}};
}

Definition definition_from_json(const Json& j) {
  Definition d;
  d.symbol = j.at("symbol").get<std::string>();
  d.kind = def_kind_from_string(j.at("defKind").get<std::string>());
  d.detail = j.value("detail", "");
  d.type_name = j.value("typeName", "ANY");
  d.span = span_from_json(j.at("span"));
  d.scope = j.value("scope", "");
  return d;
}

Json file_slices_to_json(const FileSlices& f) {
  Json j;
  j["version"] = kSliceSchemaVersion;
  j["file"] = f.file;
  Json groups = Json::array();
  for (const ProgramUsageSlice& g : f.groups) {
    Json o;
    o["scope"] = g.scope;
    o["source"] = g.source;
    o["span"] = span_to_json(g.span);
    o["statementEnds"] = g.statement_ends;
    Json targets = Json::array();
    for (const UsageSlice& s : g.slices) targets.push_back(slice_to_json(s));
    o["targets"] = std::move(targets);
    groups.push_back(std::move(o));
  }
  j["slices"] = std::move(groups);
  return j;
}

std::vector<FileSlices> file_slices_from_json(const Json& j) {
  try {
    std::vector<FileSlices> out;
    if (j.is_array()) {
      for (const Json& f : j) out.push_back(one_file_from_json(f));
    } else {
      out.push_back(one_file_from_json(j));
    }
    return out;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed slices JSON: ") + e.what());
  }
}

}  // namespace typeslice
