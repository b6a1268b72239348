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

#include "frontend/ast.h"

namespace typeslice {

std::string_view to_string(AstKind kind) {
  switch (kind) {
    case AstKind::Program: return "Program";
    case AstKind::FunctionDecl: return "FunctionDecl";
    case AstKind::ArrowFunction: return "ArrowFunction";
    case AstKind::Param: return "Param";
    case AstKind::VarDecl: return "VarDecl";
    case AstKind::Assignment: return "Assignment";
    case AstKind::Call: return "Call";
    case AstKind::New: return "New";
    case AstKind::MemberAccess: return "MemberAccess";
    case AstKind::Identifier: return "Identifier";
    case AstKind::StringLit: return "StringLit";
    case AstKind::NumberLit: return "NumberLit";
    case AstKind::BoolLit: return "BoolLit";
    case AstKind::NullLit: return "NullLit";
    case AstKind::ObjectLit: return "ObjectLit";
    case AstKind::ArrayLit: return "ArrayLit";
    case AstKind::Return: return "Return";
    case AstKind::Block: return "Block";
    case AstKind::If: return "If";
    case AstKind::TypeAnnotation: return "TypeAnnotation";
    case AstKind::Import: return "Import";
  }
  return "?";
}

std::string_view to_string(DeclaratorKind kind) {
  switch (kind) {
    case DeclaratorKind::None: return "";
    case DeclaratorKind::Var: return "var";
    case DeclaratorKind::Let: return "let";
    case DeclaratorKind::Const: return "const";
  }
  return "";
}

Json ast_to_json(const AstNode& node) {
  Json j;
  j["kind"] = to_string(node.kind);
  if (!node.name.empty()) j["name"] = node.name;
  j["span"] = span_to_json(node.span);
  if (node.annotation) j["annotation"] = *node.annotation;
  if (node.declarator != DeclaratorKind::None) j["declarator"] = to_string(node.declarator);
  if (!node.op.empty()) j["op"] = node.op;
  if (!node.key.empty()) j["key"] = node.key;
  if (node.is_async) j["async"] = true;
  if (node.is_optional) j["optional"] = true;
  Json children = Json::array();
  for (const AstNode& c : node.children) children.push_back(ast_to_json(c));
  j["children"] = std::move(children);
  return j;
}

Json diagnostic_to_json(const Diagnostic& d) {
  return Json{{"kind", d.kind}, {"message", d.message}, {"span", span_to_json(d.span)}};
}

}  // namespace typeslice
