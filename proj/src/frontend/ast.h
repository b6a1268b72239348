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
#include <string>
#include <string_view>
#include <vector>

#include "common/json.h"
#include "common/span.h"

namespace typeslice {

enum class AstKind {
  Program,
  FunctionDecl,
  ArrowFunction,
  Param,
  VarDecl,
  Assignment,
  Call,
  New,
  MemberAccess,
  Identifier,
  StringLit,
  NumberLit,
  BoolLit,
  NullLit,
  ObjectLit,
  ArrayLit,
  Return,
  Block,
  If,
  TypeAnnotation,
  Import,
};

enum class DeclaratorKind { None, Var, Let, Const };

std::string_view to_string(AstKind kind);
std::string_view to_string(DeclaratorKind kind);

// Child layout by kind:
//   Program, Block      statements
//   FunctionDecl,
//   ArrowFunction       Param..., TypeAnnotation (return, optional), Block
//   Param, VarDecl      Identifier (binding), TypeAnnotation?, default/initializer?
//   Assignment          target, value            (op: "=", "+=", ...)
//   Call                callee, args...          (member call: callee is MemberAccess)
//                       operand...               (operator call: name "<operator>.x")
//   New                 constructee, args...     (name: dotted constructee text)
//   MemberAccess        object                   (name: property)
//   ObjectLit           values...                (each value carries its property key)
//   ArrayLit            elements...
//   Return              value?
//   If                  condition, Block, (Block | If)?
//   Import              Identifier...            (name: module specifier)
//   TypeAnnotation      none                     (name: annotation text; span starts at ':')
struct AstNode {
  AstKind kind = AstKind::Program;
  std::string name;
  SourceSpan span;
  std::optional<std::string> annotation;
  std::vector<AstNode> children;

  DeclaratorKind declarator = DeclaratorKind::None;  // VarDecl
  std::string op;                                    // Assignment operator
  std::string key;                                   // ObjectLit member key
  bool is_async = false;
  bool is_optional = false;                          // Param with '?'

  bool is_operator_call() const {
    return kind == AstKind::Call && name.rfind("<operator>.", 0) == 0;
  }
  bool is_function() const {
    return kind == AstKind::FunctionDecl || kind == AstKind::ArrowFunction;
  }
  // Body block of a function node.
  const AstNode& body() const { return children.back(); }
};

struct Diagnostic {
  std::string kind;  // "skipped-statement", "unresolved-identifier", ...
  std::string message;
  SourceSpan span;
};

struct ParseResult {
  AstNode program;
  std::vector<Diagnostic> diagnostics;
  // Names of class/interface/enum/type declarations that were skipped as out
  // of subset; evaluation uses them to recognise locally defined types.
  std::vector<std::string> declared_type_names;
};

Json ast_to_json(const AstNode& node);
Json diagnostic_to_json(const Diagnostic& d);

// Calls fn(node, parent) for every node in pre-order; parent is null for the root.
template <typename Fn>
void walk(const AstNode& node, Fn&& fn, const AstNode* parent = nullptr) {
  fn(node, parent);
  for (const AstNode& child : node.children) walk(child, fn, &node);
}

}  // namespace typeslice
