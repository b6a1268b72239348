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

#include <functional>
#include <set>
#include <stdexcept>

#include "common/embedded.h"
#include "common/errors.h"
#include "declarations/declarations.h"
#include "graph/builtin_types.h"

namespace typeslice {

DeclarationRegistry DeclarationRegistry::with_builtins() {
  static const std::vector<TypeDeclaration> builtins =
      load_declarations(embedded::builtin_declarations(), DeclFormat::DtsSubset);
  DeclarationRegistry r;
  r.add(builtins);
  return r;
}

void DeclarationRegistry::add(std::vector<TypeDeclaration> decls) {
  for (TypeDeclaration& d : decls) {
    std::string name = d.name;
    types_[name] = std::move(d);
  }
  check_acyclic();
}

void DeclarationRegistry::check_acyclic() const {
  // 0 = unvisited, 1 = on stack, 2 = done
  std::map<std::string_view, int> state;
  std::function<void(const TypeDeclaration&)> visit = [&](const TypeDeclaration& t) {
    int& s = state[t.name];
    if (s == 2) return;
    if (s == 1) throw DeclParseError("cyclic supertype chain through " + t.name, 1, 1);
    s = 1;
    for (const std::string& super : t.supertypes) {
      auto it = types_.find(super);
      if (it != types_.end()) visit(it->second);
    }
    state[t.name] = 2;
  };
  for (const auto& [name, t] : types_) visit(t);
}

const TypeDeclaration* DeclarationRegistry::lookup(std::string_view type_name) const {
  std::string canonical = canonical_type_text(type_name);
  auto it = types_.find(canonical);
  if (it != types_.end()) return &it->second;
  it = types_.find(base_type_name(canonical));
  return it == types_.end() ? nullptr : &it->second;
}

// Undeclared supertypes contribute no members.
template <typename Fn>
bool DeclarationRegistry::any_in_chain(const TypeDeclaration& type, Fn&& fn) const {
  std::vector<const TypeDeclaration*> pending = {&type};
  std::set<std::string_view> seen;
  if (auto it = types_.find("Object"); it != types_.end()) pending.push_back(&it->second);
  while (!pending.empty()) {
    const TypeDeclaration* t = pending.back();
    pending.pop_back();
    if (!seen.insert(t->name).second) continue;
    if (fn(*t)) return true;
    for (const std::string& super : t->supertypes) {
      if (const TypeDeclaration* s = lookup(super)) pending.push_back(s);
    }
  }
  return false;
}

const MethodSignature* DeclarationRegistry::find_method(const TypeDeclaration& type, std::string_view name) const {
  const MethodSignature* found = nullptr;
  any_in_chain(type, [&](const TypeDeclaration& t) {
    auto it = t.methods.find(std::string(name));
    if (it == t.methods.end()) return false;
    found = &it->second;
    return true;
  });
  return found;
}

bool DeclarationRegistry::has_member(const TypeDeclaration& type, std::string_view name) const {
  std::string key(name);
  return any_in_chain(type, [&](const TypeDeclaration& t) {
    return t.methods.count(key) > 0 || t.properties.count(key) > 0;
  });
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "Consistent";
    case Verdict::Violation: return "Violation";
    case Verdict::UnknownType: return "UnknownType";
  }
  return "";
}

ValidationResult validate(const UsageSlice& slice, std::string_view suggestion, const DeclarationRegistry& registry) {
  if (BuiltinTypeSet::is_any(suggestion) || BuiltinTypeSet::is_nullish(suggestion)) {
    throw std::invalid_argument("ANY and nullish suggestions must be filtered before validation");
  }
  const TypeDeclaration* type = registry.lookup(suggestion);
  if (!type) return {Verdict::UnknownType, std::string(suggestion) + " is not declared"};
  std::string shown = canonical_type_text(suggestion);
  for (const ObservedCall& call : slice.calls) {
    if (call.role != CallRole::InvokedOn) continue;
    const MethodSignature* sig = registry.find_method(*type, call.callee);
    if (!sig) return {Verdict::Violation, call.callee + " not in " + shown};
    if (!sig->accepts(call.arity())) {
      std::string range = std::to_string(sig->min_arity) + ".." +
                          (sig->max_arity == kUnboundedArity ? std::string("*") : std::to_string(sig->max_arity));
      return {Verdict::Violation, call.callee + " of " + shown + " takes " + range + " arguments, called with " +
                                      std::to_string(call.arity())};
    }
  }
  for (const MemberRead& m : slice.members) {
    if (!registry.has_member(*type, m.name)) return {Verdict::Violation, m.name + " not in " + shown};
  }
  return {Verdict::Consistent, ""};
}

}  // namespace typeslice
