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

#include <map>
#include <string>
#include <vector>

#include "common/json.h"
#include "common/span.h"
#include "graph/graph.h"

namespace typeslice {

// Scope-qualified symbol -> types in first-seen order. Never holds ANY.
// Keys: "<method>.<symbol>" for variables ("#2", "#3" for shadowing
// duplicates in one method), "<method>.<obj>.<field>" for field writes and
// "<method>.<return>" for return values.
struct TypeAssignmentMap {
  std::map<std::string, std::vector<std::string>> entries;

  // Appends unless present; returns true when the set grew.
  bool add(const std::string& key, const std::string& type_name);
  const std::vector<std::string>* find(const std::string& key) const;
  friend bool operator==(const TypeAssignmentMap&, const TypeAssignmentMap&) = default;
};

enum class HintSubject { ParameterOf, ReturnOf };
enum class HintProvenance { Annotation, Assignment, CallSiteArgument, CallSiteResult, Inference };

struct TypeHint {
  HintSubject subject = HintSubject::ReturnOf;
  std::string method;
  int index = -1;  // ParameterOf only
  std::string type_name;
  HintProvenance provenance = HintProvenance::Assignment;
};

struct PropagationResult {
  TypeAssignmentMap map;
  std::vector<TypeHint> hints;
};

inline constexpr int kDefaultIterations = 2;

// Each iteration reads the previous iteration's map, so the outcome depends
// only on which assignments exist, not on their order. Throws
// std::invalid_argument when iterations < 1.
PropagationResult propagate(Graph& g, int iterations = kDefaultIterations);

// A type accepted for the variable a slice targets.
struct TypeAssignment {
  std::string scope;
  std::string symbol;
  SourceSpan span;  // the slice target span
  std::string type_name;
};

// Declaration a (scope, symbol, target span) triple refers to, or kNoNode.
NodeId find_declaration(const Graph& g, const std::string& scope, const std::string& symbol,
                        const SourceSpan& span);

// Writes accepted types to their declarations and propagates again. Throws
// ConflictError when a declaration carries a different user annotation.
// Returns the number of declarations that received a new type.
int repropagate_with_inferences(Graph& g, const std::vector<TypeAssignment>& accepted,
                                int iterations = kDefaultIterations, PropagationResult* result = nullptr);

Json typemap_to_json(const TypeAssignmentMap& map);
TypeAssignmentMap typemap_from_json(const Json& j);
Json hints_to_json(const std::vector<TypeHint>& hints);

}  // namespace typeslice
