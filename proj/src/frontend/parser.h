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

#include <cstdint>
#include <string_view>

#include "common/json.h"
#include "frontend/ast.h"

namespace typeslice {

// Parses the supported ECMAScript/TypeScript subset. Statements outside the
// subset are skipped one at a time and reported as diagnostics; only lexical
// corruption (unterminated string or comment) throws ParseError.
ParseResult parse(std::string_view source, uint32_t file_id = 0);

// Machine-readable description of the accepted grammar (data/subset.json).
const Json& supported_subset();

}  // namespace typeslice
