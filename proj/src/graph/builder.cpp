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

#include "graph/builder.h"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "frontend/parser.h"
#include "graph/builtin_types.h"

namespace typeslice {

namespace {

std::string_view literal_kind(AstKind kind) {
  switch (kind) {
    case AstKind::StringLit: return "string";
    case AstKind::NumberLit: return "number";
    case AstKind::BoolLit: return "boolean";
    case AstKind::NullLit: return "null";
    case AstKind::ObjectLit: return "object";
    case AstKind::ArrayLit: return "array";
    default: return "";
  }
}

// Initializer of a VarDecl or default of a Param, if any.
const AstNode* initializer(const AstNode& decl) {
  size_t fixed = decl.annotation ? 2 : 1;
  return decl.children.size() > fixed ? &decl.children.back() : nullptr;
}

std::string assignment_call_name(std::string_view op) {
  static const std::map<std::string_view, std::string_view> kNames = {
      {"=", ""},
      {"+=", "Plus"},
      {"-=", "Minus"},
      {"*=", "Multiplication"},
      {"/=", "Division"},
      {"%=", "Modulo"},
      {"**=", "Exponentiation"},
      {"?\?=", "Nullish"},
      {"||=", "LogicalOr"},
      {"&&=", "LogicalAnd"},
      {"<<=", "ShiftLeft"},
      {">>=", "ArithmeticShiftRight"},
      {">>>=", "LogicalShiftRight"},
      {"&=", "And"},
      {"|=", "Or"},
      {"^=", "Xor"},
  };
  auto it = kNames.find(op);
  return "<operator>.assignment" + std::string(it == kNames.end() ? "" : it->second);
}

class Builder {
 public:
  Builder(const ParseResult& parsed, std::string file, std::string source)
      : parsed_(parsed), lines_(source) {
    graph_.file = std::move(file);
    graph_.source = std::move(source);
  }

  // Statement spans stop before a terminating semicolon; include it.
  uint32_t statement_end(const AstNode& s) const {
    uint32_t end = s.span.end_offset;
    std::string_view src = graph_.source;
    size_t i = end;
    while (i < src.size() && (src[i] == ' ' || src[i] == '\t')) ++i;
    return i < src.size() && src[i] == ';' ? static_cast<uint32_t>(i + 1) : end;
  }

  Graph run() {
    const AstNode& program = parsed_.program;
    size_t file = add(NodeKind::File, graph_.file, program.span, kNone);
    nodes_[file].full_name = graph_.file;
    size_t method = add(NodeKind::Method, ":program", program.span, file);
    nodes_[method].full_name = graph_.file + "::program";
    method_names_.insert(nodes_[method].full_name);
    method_parent_[method] = kNone;
    for (const AstNode& s : program.children) nodes_[method].statement_ends.push_back(statement_end(s));

    size_t scope = new_scope(kNone, method, true);
    declare_block(program.children, scope, scope);
    for (const AstNode& s : program.children) statement(s, scope, method);

    graph_.diagnostics = parsed_.diagnostics;
    graph_.diagnostics.insert(graph_.diagnostics.end(), unresolved_.begin(), unresolved_.end());
    canonicalize();
    return std::move(graph_);
  }

 private:
  static constexpr size_t kNone = SIZE_MAX;

  struct Scope {
    size_t parent;
    size_t method;
    bool function_scope;
    std::map<std::string, size_t, std::less<>> symbols;
  };

  // ---- node construction ----------------------------------------------------

  size_t add(NodeKind kind, std::string name, const SourceSpan& span, size_t parent) {
    GraphNode n;
    n.kind = kind;
    n.name = std::move(name);
    n.span = span;
    if (parent != kNone) {
      n.order = next_order_[parent]++;
      edges_.push_back({EdgeKind::Ast, static_cast<NodeId>(parent), static_cast<NodeId>(nodes_.size()), -1});
    }
    nodes_.push_back(std::move(n));
    next_order_.push_back(0);
    return nodes_.size() - 1;
  }

  void argument(size_t call, size_t arg, int index) {
    edges_.push_back({EdgeKind::Argument, static_cast<NodeId>(call), static_cast<NodeId>(arg), index});
  }

  std::string canonical_text(const SourceSpan& span) const {
    return canonical_type_text(std::string_view(graph_.source).substr(span.start_offset, span.length()));
  }

  // ---- scopes ---------------------------------------------------------------

  size_t new_scope(size_t parent, size_t method, bool function_scope) {
    scopes_.push_back({parent, method, function_scope, {}});
    return scopes_.size() - 1;
  }

  size_t declare(size_t scope, const std::string& name, const SourceSpan& span, std::string_view decl_kind,
                 const std::optional<std::string>& annotation) {
    auto it = scopes_[scope].symbols.find(name);
    if (it != scopes_[scope].symbols.end()) return it->second;
    size_t local = add(NodeKind::Local, name, span, scopes_[scope].method);
    nodes_[local].decl_kind = std::string(decl_kind);
    if (annotation) {
      nodes_[local].annotation = annotation;
      nodes_[local].type_full_name = *annotation;
    }
    scopes_[scope].symbols.emplace(name, local);
    return local;
  }

  // Pre-declares the bindings of a statement list: let/const/function/import
  // in `scope`, var (including those nested in blocks) in `function_scope`.
  void declare_block(const std::vector<AstNode>& stmts, size_t scope, size_t function_scope) {
    for (const AstNode& s : stmts) {
      switch (s.kind) {
        case AstKind::VarDecl: {
          size_t target = s.declarator == DeclaratorKind::Var ? function_scope : scope;
          declare(target, s.name, s.children[0].span, to_string(s.declarator), s.annotation);
          break;
        }
        case AstKind::FunctionDecl:
          if (!s.name.empty()) {
            SourceSpan name_span = name_span_of(s);
            declare(scope, s.name, name_span, "function", std::nullopt);
          }
          break;
        case AstKind::Import:
          for (const AstNode& id : s.children) declare(scope, id.name, id.span, "import", std::nullopt);
          break;
        default:
          break;
      }
      declare_vars(s, function_scope);
    }
  }

  void declare_vars(const AstNode& s, size_t function_scope) {
    if (s.kind == AstKind::Block) {
      for (const AstNode& c : s.children) {
        if (c.kind == AstKind::VarDecl && c.declarator == DeclaratorKind::Var) {
          declare(function_scope, c.name, c.children[0].span, "var", c.annotation);
        }
        declare_vars(c, function_scope);
      }
    } else if (s.kind == AstKind::If) {
      for (size_t i = 1; i < s.children.size(); ++i) declare_vars(s.children[i], function_scope);
    }
  }

  SourceSpan name_span_of(const AstNode& fn) const {
    std::string_view text = std::string_view(graph_.source).substr(fn.span.start_offset, fn.span.length());
    size_t kw = text.find("function");
    size_t at = text.find(fn.name, kw == std::string_view::npos ? 0 : kw + 8);
    uint32_t start = fn.span.start_offset + static_cast<uint32_t>(at);
    return lines_.span(start, start + static_cast<uint32_t>(fn.name.size()), fn.span.file_id);
  }

  // Returns the declaration for `name` visible from `scope`, adding CAPTURE
  // edges from every method between the use and the declaring method.
  size_t resolve(std::string_view name, size_t scope) {
    size_t use_method = scopes_[scope].method;
    for (size_t s = scope; s != kNone; s = scopes_[s].parent) {
      auto it = scopes_[s].symbols.find(name);
      if (it == scopes_[s].symbols.end()) continue;
      size_t decl_method = scopes_[s].method;
      for (size_t m = use_method; m != decl_method && m != kNone; m = method_parent_[m]) {
        if (captured_.insert({m, it->second}).second) {
          edges_.push_back({EdgeKind::Capture, static_cast<NodeId>(m), static_cast<NodeId>(it->second), -1});
        }
      }
      return it->second;
    }
    return kNone;
  }

  // ---- statements -----------------------------------------------------------

  void statement(const AstNode& s, size_t scope, size_t method) {
    switch (s.kind) {
      case AstKind::VarDecl: {
        if (!initializer(s)) return;
        const AstNode& id = s.children[0];
        const AstNode& init = *initializer(s);
        SourceSpan span = lines_.span(id.span.start_offset, s.span.end_offset, s.span.file_id);
        size_t call = add(NodeKind::Call, "<operator>.assignment", span, method);
        nodes_[call].full_name = nodes_[call].name;
        size_t lhs = identifier(id, scope, call);
        argument(call, lhs, 1);
        size_t rhs = expression(init, scope, call, id.name);
        argument(call, rhs, 2);
        bind_function(lhs, rhs);
        return;
      }
      case AstKind::FunctionDecl:
        function(s, scope, method, s.name, resolve(s.name, scope));
        return;
      case AstKind::Return: {
        size_t ret = add(NodeKind::Return, "return", s.span, method);
        if (!s.children.empty()) expression(s.children[0], scope, ret, "");
        return;
      }
      case AstKind::If: {
        expression(s.children[0], scope, method, "");
        for (size_t i = 1; i < s.children.size(); ++i) statement(s.children[i], scope, method);
        return;
      }
      case AstKind::Block: {
        size_t inner = new_scope(scope, method, false);
        size_t fscope = function_scope_of(scope);
        declare_block(s.children, inner, fscope);
        for (const AstNode& c : s.children) statement(c, inner, method);
        return;
      }
      case AstKind::Import:
        return;
      default:
        expression(s, scope, method, "");
        return;
    }
  }

  size_t function_scope_of(size_t scope) const {
    while (!scopes_[scope].function_scope) scope = scopes_[scope].parent;
    return scope;
  }

  // Records that the binding `lhs` refers to holds the function created by
  // MethodRef `rhs`, so calls through it get CALL edges.
  void bind_function(size_t lhs, size_t rhs) {
    if (nodes_[rhs].kind != NodeKind::MethodRef) return;
    auto it = ref_of_.find(lhs);
    if (it == ref_of_.end()) return;
    function_of_.emplace(it->second, methodref_method_[rhs]);
  }

  size_t function(const AstNode& fn, size_t scope, size_t parent, std::string name_hint, size_t binding) {
    size_t ref = add(NodeKind::MethodRef, "", fn.span, parent);
    size_t enclosing = scopes_[scope].method;
    std::string name = !fn.name.empty() ? fn.name : name_hint;
    if (name.empty()) {
      name = anonymous_ == 0 ? "anonymous" : "anonymous" + std::to_string(anonymous_);
      ++anonymous_;
    }
    std::string full = nodes_[enclosing].full_name + ":" + name;
    if (method_names_.count(full)) {
      int k = 1;
      while (method_names_.count(full + std::to_string(k))) ++k;
      full += std::to_string(k);
      name += std::to_string(k);
    }
    method_names_.insert(full);
    nodes_[ref].name = name;
    nodes_[ref].full_name = full;

    size_t method = add(NodeKind::Method, name, fn.span, ref);
    nodes_[method].full_name = full;
    method_parent_[method] = enclosing;
    methodref_method_[ref] = method;
    if (binding != kNone) function_of_.emplace(binding, method);

    size_t fscope = new_scope(scope, method, true);
    for (const AstNode& c : fn.children) {
      if (c.kind == AstKind::Param) {
        const AstNode& id = c.children[0];
        size_t param = declare(fscope, c.name, id.span, "param", c.annotation);
        nodes_[param].kind = NodeKind::Parameter;
        if (const AstNode* def = initializer(c)) expression(*def, fscope, param, "");
      } else if (c.kind == AstKind::TypeAnnotation) {
        nodes_[method].annotation = c.name;
      }
    }
    const AstNode& body = fn.body();
    for (const AstNode& s : body.children) nodes_[method].statement_ends.push_back(statement_end(s));
    declare_block(body.children, fscope, fscope);
    for (const AstNode& s : body.children) statement(s, fscope, method);
    return ref;
  }

  // ---- expressions ----------------------------------------------------------

  size_t identifier(const AstNode& id, size_t scope, size_t parent) {
    size_t node = add(NodeKind::Identifier, id.name, id.span, parent);
    size_t decl = resolve(id.name, scope);
    if (decl == kNone) {
      unresolved_.push_back({"unresolved-identifier", "unresolved identifier '" + id.name + "'", id.span});
    } else {
      edges_.push_back({EdgeKind::Ref, static_cast<NodeId>(node), static_cast<NodeId>(decl), -1});
      ref_of_[node] = decl;
    }
    return node;
  }

  size_t expression(const AstNode& e, size_t scope, size_t parent, const std::string& name_hint) {
    switch (e.kind) {
      case AstKind::Identifier:
        return identifier(e, scope, parent);
      case AstKind::StringLit:
      case AstKind::NumberLit:
      case AstKind::BoolLit:
      case AstKind::NullLit:
      case AstKind::ObjectLit:
      case AstKind::ArrayLit: {
        size_t lit = add(NodeKind::Literal, std::string(literal_kind(e.kind)), e.span, parent);
        for (const AstNode& c : e.children) expression(c, scope, lit, "");
        return lit;
      }
      case AstKind::FunctionDecl:
      case AstKind::ArrowFunction:
        return function(e, scope, parent, name_hint, kNone);
      case AstKind::MemberAccess: {
        size_t m = add(NodeKind::MemberAccess, e.name, e.span, parent);
        nodes_[m].full_name = canonical_text(e.span);
        expression(e.children[0], scope, m, "");
        return m;
      }
      case AstKind::Assignment: {
        size_t call = add(NodeKind::Call, assignment_call_name(e.op), e.span, parent);
        nodes_[call].full_name = nodes_[call].name;
        const AstNode& target = e.children[0];
        size_t lhs = expression(target, scope, call, "");
        argument(call, lhs, 1);
        std::string hint = target.kind == AstKind::Identifier ? target.name : "";
        size_t rhs = expression(e.children[1], scope, call, hint);
        argument(call, rhs, 2);
        if (e.op == "=") bind_function(lhs, rhs);
        return call;
      }
      case AstKind::New: {
        size_t call = add(NodeKind::Call, "new " + e.name, e.span, parent);
        nodes_[call].full_name = nodes_[call].name;
        expression(e.children[0], scope, call, "");
        for (size_t i = 1; i < e.children.size(); ++i) argument(call, expression(e.children[i], scope, call, ""), static_cast<int>(i));
        return call;
      }
      case AstKind::Call: {
        size_t call = add(NodeKind::Call, e.name, e.span, parent);
        if (e.is_operator_call()) {
          nodes_[call].full_name = e.name;
          for (size_t i = 0; i < e.children.size(); ++i) {
            argument(call, expression(e.children[i], scope, call, ""), static_cast<int>(i) + 1);
          }
          return call;
        }
        const AstNode& callee = e.children[0];
        nodes_[call].full_name = canonical_text(callee.span);
        if (callee.kind == AstKind::MemberAccess) {
          argument(call, expression(callee.children[0], scope, call, ""), 0);
        } else {
          size_t c = expression(callee, scope, call, "");
          if (callee.kind == AstKind::Identifier) {
            auto it = ref_of_.find(c);
            if (it != ref_of_.end()) pending_calls_.emplace_back(call, it->second);
          }
        }
        for (size_t i = 1; i < e.children.size(); ++i) {
          argument(call, expression(e.children[i], scope, call, ""), static_cast<int>(i));
        }
        return call;
      }
      default:
        break;
    }
    // Statements never reach here; keep the graph total by recording a literal.
    return add(NodeKind::Literal, "unknown", e.span, parent);
  }

  // ---- canonical ids --------------------------------------------------------

  void canonicalize() {
    for (auto [call, decl] : pending_calls_) {
      auto it = function_of_.find(decl);
      if (it != function_of_.end()) {
        edges_.push_back({EdgeKind::Call, static_cast<NodeId>(call), static_cast<NodeId>(it->second), -1});
      }
    }
    std::vector<size_t> perm(nodes_.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](size_t a, size_t b) {
      const GraphNode& x = nodes_[a];
      const GraphNode& y = nodes_[b];
      return std::make_tuple(x.span.start_offset, -static_cast<int64_t>(x.span.end_offset), static_cast<int>(x.kind), a) <
             std::make_tuple(y.span.start_offset, -static_cast<int64_t>(y.span.end_offset), static_cast<int>(y.kind), b);
    });
    std::vector<NodeId> remap(nodes_.size());
    for (size_t i = 0; i < perm.size(); ++i) remap[perm[i]] = static_cast<NodeId>(i);
    graph_.nodes.reserve(nodes_.size());
    for (size_t i = 0; i < perm.size(); ++i) {
      graph_.nodes.push_back(std::move(nodes_[perm[i]]));
      graph_.nodes.back().id = static_cast<NodeId>(i);
    }
    for (GraphEdge& e : edges_) {
      e.src = remap[e.src];
      e.dst = remap[e.dst];
    }
    std::sort(edges_.begin(), edges_.end(), [](const GraphEdge& a, const GraphEdge& b) {
      return std::make_tuple(a.src, a.dst, static_cast<int>(a.kind), a.index) <
             std::make_tuple(b.src, b.dst, static_cast<int>(b.kind), b.index);
    });
    graph_.edges = std::move(edges_);
    graph_.index();
  }

  const ParseResult& parsed_;
  LineIndex lines_;
  Graph graph_;
  std::vector<GraphNode> nodes_;
  std::vector<int> next_order_;
  std::vector<GraphEdge> edges_;
  std::deque<Scope> scopes_;
  std::map<size_t, size_t> method_parent_;
  std::map<size_t, size_t> methodref_method_;
  std::map<size_t, size_t> ref_of_;       // identifier -> declaration
  std::map<size_t, size_t> function_of_;  // declaration -> Method it holds
  std::vector<std::pair<size_t, size_t>> pending_calls_;
  std::set<std::pair<size_t, size_t>> captured_;
  std::set<std::string> method_names_;
  std::vector<Diagnostic> unresolved_;
  int anonymous_ = 0;
};

}  // namespace

Graph build_graph(const ParseResult& parsed, std::string file_name, std::string source) {
  return Builder(parsed, std::move(file_name), std::move(source)).run();
}

Graph build_graph(std::string file_name, std::string source) {
  ParseResult parsed = parse(source);
  return build_graph(parsed, std::move(file_name), std::move(source));
}

}  // namespace typeslice
