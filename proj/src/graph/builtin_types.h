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

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace typeslice {

// Canonical spellings of the builtin sentinels. ANY is the set of all types;
// NULL covers null, undefined and void.
namespace types {
inline constexpr std::string_view kAny = "ANY";
inline constexpr std::string_view kNull = "NULL";
inline constexpr std::string_view kInteger = "__ecma.Integer";
inline constexpr std::string_view kNumber = "__ecma.Number";
inline constexpr std::string_view kString = "__ecma.String";
inline constexpr std::string_view kBoolean = "__ecma.Boolean";
inline constexpr std::string_view kObject = "__ecma.Object";
inline constexpr std::string_view kArray = "__ecma.Array";
}  // namespace types

class BuiltinTypeSet {
 public:
  // The Top-100 list compiled in from data/top100.txt.
  static const BuiltinTypeSet& standard();
  // One type per line; blank lines and '#' comments ignored.
  static BuiltinTypeSet from_list(std::string_view text);

  bool is_top100(std::string_view type_name) const;
  const std::vector<std::string>& top100() const { return ordered_; }

  static bool is_any(std::string_view type_name);
  static bool is_nullish(std::string_view type_name);
  static bool is_sentinel(std::string_view type_name);

 private:
  std::vector<std::string> ordered_;
  std::set<std::string, std::less<>> names_;
};

// Trims and collapses interior whitespace runs to a single space.
std::string canonical_type_text(std::string_view type_name);

// "Array<string>" -> "Array", "string[]" -> "Array".
std::string base_type_name(std::string_view type_name);

// Type of a literal by its kind ("string", "number", "boolean", "null",
// "object", "array") and lexeme; returns ANY for kinds without a type.
std::string_view literal_type(std::string_view literal_kind, std::string_view lexeme);

}  // namespace typeslice
