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

#include "frontend/ast.h"
#include "graph/graph.h"

namespace typeslice {

// Lowers a parsed program into a graph with AST, REF, CALL, CAPTURE and
// ARGUMENT edges. Unresolved identifiers are reported as diagnostics.
Graph build_graph(const ParseResult& parsed, std::string file_name, std::string source);

// Parses and builds in one step; throws ParseError like parse().
Graph build_graph(std::string file_name, std::string source);

}  // namespace typeslice
