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

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "common/json.h"
#include "graph/graph.h"

namespace typeslice {

struct TaintQuery {
  std::set<std::string> source_types;
  std::optional<std::string> source_member;  // seed only reads of this member
  std::string sink_callee;                   // glob over the call's full name
  std::set<int> sink_args;                   // empty: any argument; 0 is the receiver
  std::set<std::string> sanitizers;          // callee names whose result is clean
};

struct TaintFlow {
  std::string scope;
  std::vector<NodeId> steps;  // source read first, sink argument last
  NodeId sink = kNoNode;
};

// '*' matches any run, '?' one character.
bool glob_match(std::string_view pattern, std::string_view text);

// Throws std::invalid_argument for an empty source type set or sink pattern.
std::vector<TaintFlow> run_query(const Graph& g, const TaintQuery& query);

// Whether taint moves from `from` to `to` in one step.
bool is_taint_step(const Graph& g, NodeId from, NodeId to, const TaintQuery& query);

Json flows_to_json(const Graph& g, const std::vector<TaintFlow>& flows);

struct CoverageDelta {
  std::string file;
  double before = 0.0;
  double after = 0.0;
  double delta = 0.0;
};

struct CoverageReport {
  std::vector<CoverageDelta> files;
  // Means over files.
  double before = 0.0;
  double after = 0.0;
  double delta = 0.0;
};

// Throws MismatchError when the graphs differ structurally.
CoverageDelta typed_coverage_delta(const Graph& before, const Graph& after);
CoverageReport typed_coverage_report(const std::vector<const Graph*>& before, const std::vector<const Graph*>& after);
Json coverage_to_json(const CoverageReport& report);

}  // namespace typeslice
