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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "common/json.h"
#include "slicing/slices.h"

namespace typeslice {

inline constexpr int kUnboundedArity = -1;

struct MethodSignature {
  int min_arity = 0;
  int max_arity = 0;  // kUnboundedArity for rest parameters

  bool accepts(int k) const { return k >= min_arity && (max_arity == kUnboundedArity || k <= max_arity); }
  friend bool operator==(const MethodSignature&, const MethodSignature&) = default;
};

struct TypeDeclaration {
  std::string name;
  std::map<std::string, MethodSignature> methods;
  std::map<std::string, std::optional<std::string>> properties;
  std::vector<std::string> supertypes;
};

enum class DeclFormat { DtsSubset, JsonStub };

// Throws DeclParseError (with line/column) for syntax outside the subset.
std::vector<TypeDeclaration> load_declarations(std::string_view source, DeclFormat format);

Json declarations_to_json(const std::vector<TypeDeclaration>& decls);

class DeclarationRegistry {
 public:
  // Registry preloaded with the builtin declarations.
  static DeclarationRegistry with_builtins();

  // Later declarations replace earlier ones of the same name. Throws
  // DeclParseError if the result has a cyclic supertype chain.
  void add(std::vector<TypeDeclaration> decls);

  // Exact name first, then the base name ("Array<string>" -> "Array").
  const TypeDeclaration* lookup(std::string_view type_name) const;

  // Searches the type, its supertypes, and Object.
  const MethodSignature* find_method(const TypeDeclaration& type, std::string_view name) const;
  bool has_member(const TypeDeclaration& type, std::string_view name) const;

  size_t size() const { return types_.size(); }

 private:
  void check_acyclic() const;
  template <typename Fn>
  bool any_in_chain(const TypeDeclaration& type, Fn&& fn) const;

  std::map<std::string, TypeDeclaration, std::less<>> types_;
};

enum class Verdict { Consistent, Violation, UnknownType };

std::string_view to_string(Verdict v);

struct ValidationResult {
  Verdict verdict = Verdict::Consistent;
  std::string details;
};

// Checks the slice's receiver calls and member reads against the suggested
// type. ANY and nullish suggestions must be filtered earlier; passing one
// throws std::invalid_argument.
ValidationResult validate(const UsageSlice& slice, std::string_view suggestion, const DeclarationRegistry& registry);

}  // namespace typeslice
