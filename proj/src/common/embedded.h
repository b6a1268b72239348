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

#include <string_view>

// Data files under data/ compiled into the library.
namespace typeslice::embedded {

std::string_view top100_types();
std::string_view default_lexicon();
std::string_view builtin_declarations();
std::string_view subset_grammar();
std::string_view infer_protocol_schema();

}  // namespace typeslice::embedded
