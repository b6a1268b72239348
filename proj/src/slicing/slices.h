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

#pragma once

#include <string>
#include <vector>

#include "common/json.h"
#include "common/span.h"
#include "graph/graph.h"

namespace typeslice {

enum class DefKind { Local, Parameter, CallResult, Literal, Capture };
enum class CallRole { InvokedOn, ArgumentTo };

std::string_view to_string(DefKind kind);
std::string_view to_string(CallRole role);
DefKind def_kind_from_string(std::string_view s);

// `detail` carries the kind's payload: the parameter index, the callee's full
// name, or the literal kind.
struct Definition {
  std::string symbol;
  std::string type_name = "ANY";
  DefKind kind = DefKind::Local;
  std::string detail;
  SourceSpan span;
  std::string scope;

  friend bool operator==(const Definition&, const Definition&) = default;
};

struct ObservedCall {
  std::string callee;
  CallRole role = CallRole::InvokedOn;
  int position = 0;  // 0 for InvokedOn
  SourceSpan span;
  std::vector<std::string> arg_types;  // types of the call's non-receiver arguments

  int arity() const { return static_cast<int>(arg_types.size()); }
  friend bool operator==(const ObservedCall&, const ObservedCall&) = default;
};

struct MemberRead {
  std::string name;
  SourceSpan span;
  friend bool operator==(const MemberRead&, const MemberRead&) = default;
};

struct UsageSlice {
  Definition def_source;
  Definition target;
  std::vector<ObservedCall> calls;
  std::vector<MemberRead> members;
  std::vector<SourceSpan> usages;
  std::string scope;
  bool low_signal = false;

  friend bool operator==(const UsageSlice&, const UsageSlice&) = default;
};

struct ProgramUsageSlice {
  std::string scope;
  std::string source;
  SourceSpan span;                      // of the scope within its file
  std::vector<uint32_t> statement_ends;  // absolute offsets
  std::vector<UsageSlice> slices;

  friend bool operator==(const ProgramUsageSlice&, const ProgramUsageSlice&) = default;
};

struct FileSlices {
  std::string file;
  std::vector<ProgramUsageSlice> groups;
};

// Slices of every method, ordered by method span then target span.
std::vector<UsageSlice> extract_slices(const Graph& g);

// Groups slices by scope; scopes without slices are omitted.
std::vector<ProgramUsageSlice> group_program_slices(const Graph& g, const std::vector<UsageSlice>& slices);

// One definition per declared variable or parameter carrying its annotation
// type, or ANY.
std::vector<Definition> slice_types_with_annotations(const Graph& g);

inline constexpr int kSliceSchemaVersion = 1;

Json definition_to_json(const Definition& d);
Definition definition_from_json(const Json& j);
Json file_slices_to_json(const FileSlices& f);
// Accepts a single file object or an array of them. Throws FormatError.
std::vector<FileSlices> file_slices_from_json(const Json& j);

}  // namespace typeslice
