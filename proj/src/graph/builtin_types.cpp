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

#include "graph/builtin_types.h"

#include <cctype>

#include "common/embedded.h"

namespace typeslice {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

const BuiltinTypeSet& BuiltinTypeSet::standard() {
  static const BuiltinTypeSet set = from_list(embedded::top100_types());
  return set;
}

BuiltinTypeSet BuiltinTypeSet::from_list(std::string_view text) {
  BuiltinTypeSet set;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty() || line.front() == '#') continue;
    if (set.names_.insert(std::string(line)).second) set.ordered_.emplace_back(line);
  }
  return set;
}

bool BuiltinTypeSet::is_top100(std::string_view type_name) const {
  return names_.count(base_type_name(type_name)) > 0;
}

bool BuiltinTypeSet::is_any(std::string_view t) {
  return t == types::kAny || t == "any";
}

bool BuiltinTypeSet::is_nullish(std::string_view t) {
  return t == types::kNull || t == "null" || t == "undefined" || t == "void" || t == "None";
}

bool BuiltinTypeSet::is_sentinel(std::string_view t) {
  return t == types::kAny || t == types::kNull || t == types::kInteger || t == types::kNumber ||
         t == types::kString || t == types::kBoolean || t == types::kObject || t == types::kArray;
}

std::string canonical_type_text(std::string_view type_name) {
  std::string out;
  bool pending_space = false;
  for (char c : trim(type_name)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string base_type_name(std::string_view type_name) {
  std::string t = canonical_type_text(type_name);
  if (t.size() > 2 && t.compare(t.size() - 2, 2, "[]") == 0) return "Array";
  auto lt = t.find('<');
  if (lt != std::string::npos) t = canonical_type_text(t.substr(0, lt));
  return t;
}

std::string_view literal_type(std::string_view kind, std::string_view lexeme) {
  if (kind == "string") return types::kString;
  if (kind == "boolean") return types::kBoolean;
  if (kind == "object") return types::kObject;
  if (kind == "array") return types::kArray;
  if (kind == "number") {
    bool integral = !lexeme.empty();
    for (char c : lexeme) {
      if (!std::isdigit(static_cast<unsigned char>(c)) && c != '_') integral = false;
    }
    // Hex/octal/binary literals are integers too.
    if (lexeme.size() > 2 && lexeme[0] == '0' &&
        (lexeme[1] == 'x' || lexeme[1] == 'X' || lexeme[1] == 'o' || lexeme[1] == 'O' ||
         lexeme[1] == 'b' || lexeme[1] == 'B')) {
      integral = true;
    }
    return integral ? types::kInteger : types::kNumber;
  }
  if (kind == "null") return types::kNull;
  return types::kAny;
}

}  // namespace typeslice
