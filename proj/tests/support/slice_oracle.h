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
#include <string_view>
#include <vector>

#include "slicing/slices.h"

namespace typeslice::testing {

// Brute-force slicer working on the AST alone: resolves names with its own
// scope walk, then scans each variable's reads and writes in source order,
// opening a new slice at every write. Types are left ANY (no propagation).
std::vector<UsageSlice> oracle_slices(std::string_view source, const std::string& file);

// One line per slice, every field spelled out, lines sorted.
std::string canonical_slices(const std::vector<UsageSlice>& slices);

}  // namespace typeslice::testing
