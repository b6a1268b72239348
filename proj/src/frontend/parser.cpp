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

#include "frontend/parser.h"

#include <algorithm>
#include <optional>
#include <set>
#include <string>

#include "common/embedded.h"
#include "common/errors.h"
#include "frontend/lexer.h"
#include "graph/builtin_types.h"

namespace typeslice {

namespace {

struct SyntaxError {
  std::string message;
  uint32_t offset;
};

const std::set<std::string_view> kReserved = {
    "break",  "case",   "catch",    "class",      "const",  "continue", "debugger", "default",
    "delete", "do",     "else",     "enum",       "export", "extends",  "false",    "finally",
    "for",    "function", "if",     "import",     "in",     "instanceof", "new",    "null",
    "return", "super",  "switch",   "throw",      "true",   "try",      "typeof",   "var",
    "void",   "while",  "with",     "yield",      "let"};

// Statement keywords we recognise but do not model.
const std::set<std::string_view> kUnsupportedStatements = {
    "for", "while", "do", "switch", "try", "throw", "break", "continue", "with", "debugger", "yield"};

// Tokens that start a fresh statement; recovery stops before them on a new line.
const std::set<std::string_view> kStatementStarters = {
    "let", "const", "var", "function", "import", "export", "if", "return", "class",
    "interface", "enum", "for", "while", "do", "switch", "try", "throw"};

const std::set<std::string_view> kAssignmentOps = {
    "=", "+=", "-=", "*=", "/=", "%=", "**=", "?\?=", "||=", "&&=", "<<=", ">>=", ">>>=", "&=", "|=", "^="};

struct BinaryOp {
  std::string_view token;
  int precedence;
  std::string_view name;
};

constexpr BinaryOp kBinaryOps[] = {
    {"??", 1, "nullishCoalesce"},  {"||", 2, "logicalOr"},
    {"&&", 3, "logicalAnd"},       {"|", 4, "or"},
    {"^", 5, "xor"},               {"&", 6, "and"},
    {"==", 7, "equals"},           {"!=", 7, "notEquals"},
    {"===", 7, "strictEquals"},    {"!==", 7, "strictNotEquals"},
    {"<", 8, "lessThan"},          {">", 8, "greaterThan"},
    {"<=", 8, "lessEqualsThan"},   {">=", 8, "greaterEqualsThan"},
    {"instanceof", 8, "instanceOf"}, {"in", 8, "in"},
    {"<<", 9, "shiftLeft"},        {">>", 9, "arithmeticShiftRight"},
    {">>>", 9, "logicalShiftRight"}, {"+", 10, "addition"},
    {"-", 10, "subtraction"},      {"*", 11, "multiplication"},
    {"/", 11, "division"},         {"%", 11, "modulo"},
    {"**", 12, "exponentiation"},
};

const BinaryOp* binary_op(const Token& t) {
  if (t.kind != TokenKind::Punct && t.kind != TokenKind::Identifier) return nullptr;
  for (const BinaryOp& op : kBinaryOps) {
    if (t.text == op.token) return &op;
  }
  return nullptr;
}

std::string unquote(std::string_view lexeme) {
  if (lexeme.size() >= 2) return std::string(lexeme.substr(1, lexeme.size() - 2));
  return std::string(lexeme);
}

class Parser {
 public:
  Parser(std::string_view source, uint32_t file_id)
      : src_(source), lines_(source), file_id_(file_id), toks_(tokenize(source)) {}

  ParseResult run() {
    ParseResult result;
    result.program.kind = AstKind::Program;
    parse_statements(result.program.children, /*until_brace=*/false);
    result.program.span = lines_.span(0, static_cast<uint32_t>(src_.size()), file_id_);
    result.diagnostics = std::move(diagnostics_);
    result.declared_type_names = std::move(declared_types_);
    return result;
  }

 private:
  // ---- token handling -------------------------------------------------------

  const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }

  const Token& advance() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    last_end_ = t.end;
    return t;
  }

  bool at(std::string_view s) const { return peek().is(s); }
  bool at_eof() const { return peek().kind == TokenKind::Eof; }

  bool eat(std::string_view s) {
    if (!at(s)) return false;
    advance();
    return true;
  }

  void expect(std::string_view s) {
    if (!eat(s)) fail("expected '" + std::string(s) + "'");
  }

  [[noreturn]] void fail(const std::string& message) const {
    std::string got = at_eof() ? "end of file" : "'" + std::string(peek().text) + "'";
    throw SyntaxError{message + ", found " + got, peek().begin};
  }

  SourceSpan span_from(uint32_t start) const { return lines_.span(start, last_end_, file_id_); }

  struct Mark {
    size_t pos;
    uint32_t last_end;
  };
  Mark mark() const { return {pos_, last_end_}; }
  void reset(Mark m) {
    pos_ = m.pos;
    last_end_ = m.last_end;
  }

  bool is_identifier(const Token& t) const {
    return t.kind == TokenKind::Identifier && !kReserved.count(t.text);
  }

  std::string expect_identifier(const char* what) {
    if (!is_identifier(peek())) fail(std::string("expected ") + what);
    return std::string(advance().text);
  }

  AstNode identifier_node() {
    AstNode id;
    id.kind = AstKind::Identifier;
    uint32_t start = peek().begin;
    id.name = expect_identifier("identifier");
    id.span = span_from(start);
    return id;
  }

  // ---- statements -----------------------------------------------------------

  void parse_statements(std::vector<AstNode>& out, bool until_brace) {
    while (true) {
      if (at_eof()) {
        if (until_brace) fail("expected '}'");
        return;
      }
      if (until_brace && at("}")) return;
      Mark start = mark();
      try {
        parse_statement(out);
      } catch (const SyntaxError& e) {
        recover(start, e);
      }
    }
  }

  void recover(Mark start, const SyntaxError& error) {
    reset(start);
    size_t first = pos_;
    int depth = 0;
    while (!at_eof()) {
      const Token& t = peek();
      if (depth == 0 && pos_ > first && t.newline_before && kStatementStarters.count(t.text) &&
          t.kind == TokenKind::Identifier) {
        break;
      }
      if (t.is("{") || t.is("(") || t.is("[")) {
        ++depth;
      } else if (t.is("}") || t.is(")") || t.is("]")) {
        if (depth == 0) break;  // belongs to the enclosing block
        --depth;
        advance();
        if (depth == 0 && t.is("}")) {
          if (at("else") || at("catch") || at("finally") || at("while")) continue;
          eat(";");
          break;
        }
        continue;
      } else if (t.is(";") && depth == 0) {
        advance();
        break;
      }
      advance();
    }
    if (pos_ == first && !at_eof()) advance();
    uint32_t begin = toks_[first].begin;
    Diagnostic d;
    d.kind = "skipped-statement";
    d.message = error.message;
    d.span = lines_.span(begin, std::max(begin, last_end_), file_id_);
    diagnostics_.push_back(std::move(d));
  }

  void end_statement() {
    if (eat(";")) return;
    if (at("}") || at_eof() || peek().newline_before) return;
    fail("expected ';'");
  }

  void note_declared_type(size_t name_offset) {
    const Token& t = peek(name_offset);
    if (t.kind == TokenKind::Identifier) declared_types_.emplace_back(t.text);
  }

  void parse_statement(std::vector<AstNode>& out) {
    const Token& t = peek();
    if (t.is(";")) {
      advance();
      return;
    }
    if (t.is("{")) {
      out.push_back(parse_block());
      return;
    }
    if (t.is("export")) {
      advance();
      if (eat("default")) {
        if (at("function") || (at("async") && peek(1).is("function"))) {
          out.push_back(parse_function(/*require_name=*/false));
          return;
        }
        if (at("class")) {
          note_declared_type(1);
          fail("class declarations are not supported");
        }
        parse_expression_statement(out);
        return;
      }
      if (at("let") || at("const") || at("var") || at("function") || at("async") || at("class") ||
          at("interface") || at("enum") || at("type") || at("abstract") || at("declare")) {
        parse_statement(out);
        return;
      }
      fail("unsupported export form");
    }
    if (t.is("import")) {
      if (peek(1).is("(")) fail("dynamic import is not supported");
      out.push_back(parse_import());
      end_statement();
      return;
    }
    if (t.is("const") && peek(1).is("enum")) {
      note_declared_type(2);
      fail("enum declarations are not supported");
    }
    if ((t.is("let") && (is_identifier(peek(1)) || peek(1).is("{") || peek(1).is("["))) || t.is("const") ||
        t.is("var")) {
      parse_var_decls(out);
      end_statement();
      return;
    }
    if (t.is("function") || (t.is("async") && peek(1).is("function") && !peek(1).newline_before)) {
      out.push_back(parse_function(/*require_name=*/true));
      return;
    }
    if (t.is("return")) {
      out.push_back(parse_return());
      return;
    }
    if (t.is("if")) {
      out.push_back(parse_if());
      return;
    }
    if (t.is("class") || t.is("interface") || t.is("enum")) {
      note_declared_type(1);
      fail(std::string(t.text) + " declarations are not supported");
    }
    if ((t.is("abstract") || t.is("declare")) && peek(1).kind == TokenKind::Identifier) {
      if (peek(1).is("class") || peek(1).is("interface") || peek(1).is("enum")) note_declared_type(2);
      fail("ambient and abstract declarations are not supported");
    }
    if (t.is("type") && is_identifier(peek(1)) && (peek(2).is("=") || peek(2).is("<"))) {
      note_declared_type(1);
      fail("type aliases are not supported");
    }
    if (t.kind == TokenKind::Identifier && kUnsupportedStatements.count(t.text)) {
      fail("'" + std::string(t.text) + "' statements are not supported");
    }
    if (is_identifier(t) && peek(1).is(":")) fail("labelled statements are not supported");
    parse_expression_statement(out);
  }

  void parse_expression_statement(std::vector<AstNode>& out) {
    AstNode e = parse_expression();
    end_statement();
    out.push_back(std::move(e));
  }

  AstNode parse_block() {
    AstNode block;
    block.kind = AstKind::Block;
    uint32_t start = peek().begin;
    expect("{");
    parse_statements(block.children, /*until_brace=*/true);
    expect("}");
    block.span = span_from(start);
    return block;
  }

  void parse_var_decls(std::vector<AstNode>& out) {
    uint32_t start = peek().begin;
    const Token& kw = advance();
    DeclaratorKind kind = kw.is("var") ? DeclaratorKind::Var
                          : kw.is("let") ? DeclaratorKind::Let
                                         : DeclaratorKind::Const;
    std::vector<AstNode> decls;
    do {
      if (at("{") || at("[")) fail("destructuring declarations are not supported");
      if (!decls.empty()) start = peek().begin;
      AstNode decl;
      decl.kind = AstKind::VarDecl;
      decl.declarator = kind;
      AstNode id = identifier_node();
      decl.name = id.name;
      decl.children.push_back(std::move(id));
      eat("!");
      if (at(":")) {
        AstNode ann = parse_type_annotation();
        decl.annotation = ann.name;
        decl.children.push_back(std::move(ann));
      }
      if (eat("=")) decl.children.push_back(parse_assignment());
      decl.span = span_from(start);
      decls.push_back(std::move(decl));
    } while (eat(","));
    for (AstNode& d : decls) out.push_back(std::move(d));
  }

  AstNode parse_function(bool require_name) {
    AstNode fn;
    fn.kind = AstKind::FunctionDecl;
    uint32_t start = peek().begin;
    fn.is_async = eat("async");
    expect("function");
    if (at("*")) fail("generator functions are not supported");
    if (is_identifier(peek())) {
      fn.name = std::string(advance().text);
    } else if (require_name) {
      fail("expected function name");
    }
    if (at("<")) skip_type_parameters();
    parse_params(fn);
    if (at(":")) fn.children.push_back(parse_type_annotation());
    fn.children.push_back(parse_block());
    fn.span = span_from(start);
    return fn;
  }

  void skip_type_parameters() {
    int depth = 0;
    do {
      if (at("<")) ++depth;
      if (at(">")) --depth;
      if (at(">>")) depth -= 2;
      if (at_eof()) fail("unterminated type parameter list");
      advance();
    } while (depth > 0);
  }

  void parse_params(AstNode& fn) {
    expect("(");
    while (!at(")")) {
      if (at("...")) fail("rest parameters are not supported");
      if (at("{") || at("[")) fail("destructuring parameters are not supported");
      uint32_t start = peek().begin;
      AstNode param;
      param.kind = AstKind::Param;
      AstNode id = identifier_node();
      param.name = id.name;
      param.children.push_back(std::move(id));
      param.is_optional = eat("?");
      if (at(":")) {
        AstNode ann = parse_type_annotation();
        param.annotation = ann.name;
        param.children.push_back(std::move(ann));
      }
      if (eat("=")) {
        param.is_optional = true;
        param.children.push_back(parse_assignment());
      }
      param.span = span_from(start);
      fn.children.push_back(std::move(param));
      if (!eat(",")) break;
    }
    expect(")");
  }

  AstNode parse_return() {
    AstNode ret;
    ret.kind = AstKind::Return;
    uint32_t start = peek().begin;
    advance();
    if (!(at(";") || at("}") || at_eof() || peek().newline_before)) {
      ret.children.push_back(parse_expression());
    }
    ret.span = span_from(start);
    end_statement();
    return ret;
  }

  AstNode parse_branch() {
    if (at("{")) return parse_block();
    AstNode block;
    block.kind = AstKind::Block;
    uint32_t start = peek().begin;
    parse_statement(block.children);
    block.span = span_from(start);
    return block;
  }

  AstNode parse_if() {
    AstNode node;
    node.kind = AstKind::If;
    uint32_t start = peek().begin;
    advance();
    expect("(");
    node.children.push_back(parse_expression());
    expect(")");
    node.children.push_back(parse_branch());
    if (eat("else")) node.children.push_back(at("if") ? parse_if() : parse_branch());
    node.span = span_from(start);
    return node;
  }

  AstNode parse_import() {
    AstNode node;
    node.kind = AstKind::Import;
    uint32_t start = peek().begin;
    advance();
    if (at("type") && (peek(1).is("{") || peek(1).is("*") || (is_identifier(peek(1)) && !peek(1).is("from")))) {
      advance();  // type-only import; bindings are kept like any other import
    }
    if (peek().kind == TokenKind::String) {
      node.name = unquote(advance().text);
      node.span = span_from(start);
      return node;
    }
    if (is_identifier(peek())) {
      node.children.push_back(identifier_node());
      if (!eat(",")) goto from_clause;
    }
    if (eat("*")) {
      expect("as");
      node.children.push_back(identifier_node());
    } else if (eat("{")) {
      while (!at("}")) {
        if (peek().kind != TokenKind::Identifier) fail("expected import specifier");
        if (peek(1).is("as")) {
          advance();
          advance();
        }
        node.children.push_back(identifier_node());
        if (!eat(",")) break;
      }
      expect("}");
    }
  from_clause:
    expect("from");
    if (peek().kind != TokenKind::String) fail("expected module specifier");
    node.name = unquote(advance().text);
    node.span = span_from(start);
    return node;
  }

  // ---- types ----------------------------------------------------------------

  AstNode parse_type_annotation() {
    AstNode ann;
    ann.kind = AstKind::TypeAnnotation;
    uint32_t start = peek().begin;
    expect(":");
    uint32_t type_start = peek().begin;
    skip_type();
    ann.name = canonical_type_text(src_.substr(type_start, last_end_ - type_start));
    ann.span = span_from(start);
    return ann;
  }

  void skip_type() {
    int depth = 0;
    bool any = false;
    bool last_operator = false;
    bool last_close_paren = false;
    while (!at_eof()) {
      const Token& t = peek();
      if (depth == 0 && any) {
        if (t.newline_before && !last_operator) break;
        if (t.is("{")) break;
        if (t.is("=>")) {
          if (!last_close_paren) break;
          advance();
          last_operator = true;
          last_close_paren = false;
          continue;
        }
      }
      if (depth == 0 && (t.is("=") || t.is(",") || t.is(")") || t.is(";") || t.is("}") || t.is("]") ||
                         t.is("?") || t.is(">") || t.is(">>") || t.is(">=") || t.is("=>"))) {
        break;
      }
      if (t.is("(") || t.is("[") || t.is("{") || t.is("<")) ++depth;
      if (t.is(")") || t.is("]") || t.is("}") || t.is(">")) --depth;
      if (t.is(">>")) depth -= 2;
      if (t.is(">>>")) depth -= 3;
      if (depth < 0) fail("unbalanced type annotation");
      last_operator = t.is("|") || t.is("&") || t.is(".") || t.is(":");
      last_close_paren = t.is(")");
      advance();
      any = true;
    }
    if (!any) fail("expected type");
  }

  // ---- expressions ----------------------------------------------------------

  AstNode parse_expression() { return parse_assignment(); }

  AstNode parse_assignment() {
    if (auto arrow = try_arrow()) return std::move(*arrow);
    uint32_t start = peek().begin;
    AstNode lhs = parse_conditional();
    if (peek().kind == TokenKind::Punct && kAssignmentOps.count(peek().text)) {
      bool target_ok = lhs.kind == AstKind::Identifier || lhs.kind == AstKind::MemberAccess ||
                       (lhs.kind == AstKind::Call && lhs.name == "<operator>.indexAccess");
      if (!target_ok) fail("invalid assignment target");
      AstNode node;
      node.kind = AstKind::Assignment;
      node.op = std::string(advance().text);
      node.children.push_back(std::move(lhs));
      node.children.push_back(parse_assignment());
      node.span = span_from(start);
      return node;
    }
    return lhs;
  }

  std::optional<AstNode> try_arrow() {
    size_t k = 0;
    bool is_async = false;
    if (peek().is("async") && !peek(1).newline_before && (peek(1).is("(") || is_identifier(peek(1)))) {
      is_async = true;
      k = 1;
    }
    const Token& t = peek(k);
    if (is_identifier(t) && peek(k + 1).is("=>")) {
      AstNode fn;
      fn.kind = AstKind::ArrowFunction;
      fn.is_async = is_async;
      uint32_t start = peek().begin;
      if (is_async) advance();
      AstNode param;
      param.kind = AstKind::Param;
      AstNode id = identifier_node();
      param.name = id.name;
      param.span = id.span;
      param.children.push_back(std::move(id));
      fn.children.push_back(std::move(param));
      expect("=>");
      fn.children.push_back(parse_arrow_body());
      fn.span = span_from(start);
      return fn;
    }
    if (!t.is("(")) return std::nullopt;
    // Cheap check before backtracking: the matching ')' must be followed by
    // '=>' or a return type annotation.
    int depth = 0;
    size_t i = k;
    for (;; ++i) {
      const Token& u = peek(i);
      if (u.kind == TokenKind::Eof) return std::nullopt;
      if (u.is("(")) ++depth;
      if (u.is(")") && --depth == 0) break;
    }
    if (!peek(i + 1).is("=>") && !peek(i + 1).is(":")) return std::nullopt;

    Mark saved = mark();
    AstNode fn;
    fn.kind = AstKind::ArrowFunction;
    fn.is_async = is_async;
    uint32_t start = peek().begin;
    try {
      if (is_async) advance();
      parse_params(fn);
      if (at(":")) fn.children.push_back(parse_type_annotation());
      if (peek().newline_before) fail("line break before '=>'");
      expect("=>");
    } catch (const SyntaxError&) {
      reset(saved);
      return std::nullopt;
    }
    fn.children.push_back(parse_arrow_body());
    fn.span = span_from(start);
    return fn;
  }

  // Expression bodies are normalized to a Block holding a single Return.
  AstNode parse_arrow_body() {
    if (at("{")) return parse_block();
    AstNode expr = parse_assignment();
    AstNode ret;
    ret.kind = AstKind::Return;
    ret.span = expr.span;
    AstNode block;
    block.kind = AstKind::Block;
    block.span = expr.span;
    ret.children.push_back(std::move(expr));
    block.children.push_back(std::move(ret));
    return block;
  }

  AstNode operator_call(std::string_view name, std::vector<AstNode> operands, uint32_t start) {
    AstNode call;
    call.kind = AstKind::Call;
    call.name = "<operator>." + std::string(name);
    call.children = std::move(operands);
    call.span = span_from(start);
    return call;
  }

  AstNode parse_conditional() {
    uint32_t start = peek().begin;
    AstNode cond = parse_binary(0);
    if (!at("?")) return cond;
    advance();
    std::vector<AstNode> operands;
    operands.push_back(std::move(cond));
    operands.push_back(parse_assignment());
    expect(":");
    operands.push_back(parse_assignment());
    return operator_call("conditional", std::move(operands), start);
  }

  AstNode parse_binary(int min_precedence) {
    uint32_t start = peek().begin;
    AstNode lhs = parse_unary();
    while (true) {
      if (at("as") && !peek().newline_before) {
        advance();
        skip_type();
        continue;
      }
      const BinaryOp* op = binary_op(peek());
      if (!op || op->precedence < min_precedence) break;
      advance();
      int next = op->token == "**" ? op->precedence : op->precedence + 1;
      std::vector<AstNode> operands;
      operands.push_back(std::move(lhs));
      operands.push_back(parse_binary(next));
      lhs = operator_call(op->name, std::move(operands), start);
    }
    return lhs;
  }

  AstNode parse_unary() {
    static const std::pair<std::string_view, std::string_view> kUnary[] = {
        {"!", "logicalNot"}, {"-", "minus"},   {"+", "plus"},     {"~", "not"},
        {"typeof", "typeOf"}, {"void", "void"}, {"delete", "delete"}, {"await", "await"}};
    uint32_t start = peek().begin;
    for (auto [token, name] : kUnary) {
      if (at(token)) {
        if (token == "await" && (peek(1).is(")") || peek(1).is(";"))) break;
        advance();
        std::vector<AstNode> operands;
        operands.push_back(parse_unary());
        return operator_call(name, std::move(operands), start);
      }
    }
    if (at("++") || at("--")) fail("update expressions are not supported");
    return parse_postfix();
  }

  AstNode parse_postfix() {
    uint32_t start = peek().begin;
    AstNode expr = at("new") ? parse_new() : parse_primary();
    while (true) {
      if (at(".")) {
        advance();
        if (peek().kind != TokenKind::Identifier) fail("expected property name");
        AstNode member;
        member.kind = AstKind::MemberAccess;
        member.name = std::string(advance().text);
        member.children.push_back(std::move(expr));
        member.span = span_from(start);
        expr = std::move(member);
      } else if (at("?.")) {
        fail("optional chaining is not supported");
      } else if (at("[")) {
        advance();
        std::vector<AstNode> operands;
        operands.push_back(std::move(expr));
        operands.push_back(parse_expression());
        expect("]");
        expr = operator_call("indexAccess", std::move(operands), start);
      } else if (at("(")) {
        AstNode call;
        call.kind = AstKind::Call;
        if (expr.kind == AstKind::MemberAccess || expr.kind == AstKind::Identifier) {
          call.name = expr.name;
        } else {
          call.name = std::string(src_.substr(expr.span.start_offset, expr.span.length()));
        }
        call.children.push_back(std::move(expr));
        parse_arguments(call.children);
        call.span = span_from(start);
        expr = std::move(call);
      } else if (at("!") && peek().begin == last_end_) {
        advance();  // non-null assertion
      } else if (peek().kind == TokenKind::Template && peek().begin == last_end_) {
        fail("tagged templates are not supported");
      } else if ((at("++") || at("--")) && !peek().newline_before) {
        fail("update expressions are not supported");
      } else {
        break;
      }
    }
    return expr;
  }

  void parse_arguments(std::vector<AstNode>& out) {
    expect("(");
    while (!at(")")) {
      if (at("...")) fail("spread arguments are not supported");
      out.push_back(parse_assignment());
      if (!eat(",")) break;
    }
    expect(")");
  }

  AstNode parse_new() {
    AstNode node;
    node.kind = AstKind::New;
    uint32_t start = peek().begin;
    advance();
    if (at("new")) fail("nested 'new' is not supported");
    uint32_t callee_start = peek().begin;
    AstNode callee = parse_primary();
    while (at(".")) {
      advance();
      if (peek().kind != TokenKind::Identifier) fail("expected property name");
      AstNode member;
      member.kind = AstKind::MemberAccess;
      member.name = std::string(advance().text);
      member.children.push_back(std::move(callee));
      member.span = span_from(callee_start);
      callee = std::move(member);
    }
    node.name = canonical_type_text(src_.substr(callee.span.start_offset, callee.span.length()));
    node.children.push_back(std::move(callee));
    if (at("<")) {
      Mark saved = mark();
      try {
        skip_type_parameters();
        if (!at("(")) fail("expected '('");
      } catch (const SyntaxError&) {
        reset(saved);
      }
    }
    if (at("(")) parse_arguments(node.children);
    node.span = span_from(start);
    return node;
  }

  AstNode literal(AstKind kind, std::string name) {
    AstNode node;
    node.kind = kind;
    uint32_t start = peek().begin;
    advance();
    node.name = std::move(name);
    node.span = span_from(start);
    return node;
  }

  AstNode parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Number:
        return literal(AstKind::NumberLit, std::string(t.text));
      case TokenKind::String:
      case TokenKind::Template:
        return literal(AstKind::StringLit, unquote(t.text));
      case TokenKind::Eof:
        fail("unexpected end of file");
      case TokenKind::Identifier:
        if (t.is("true") || t.is("false")) return literal(AstKind::BoolLit, std::string(t.text));
        if (t.is("null") || t.is("undefined")) return literal(AstKind::NullLit, std::string(t.text));
        if (t.is("function") || (t.is("async") && peek(1).is("function"))) {
          return parse_function(/*require_name=*/false);
        }
        if (t.is("this")) {
          AstNode self;
          self.kind = AstKind::Identifier;
          uint32_t start = t.begin;
          advance();
          self.name = "this";
          self.span = span_from(start);
          return self;
        }
        if (t.is("class")) fail("class expressions are not supported");
        if (!is_identifier(t)) fail("unexpected keyword");
        return identifier_node();
      case TokenKind::Punct:
        break;
    }
    if (t.is("(")) {
      advance();
      AstNode inner = parse_expression();
      expect(")");
      return inner;
    }
    if (t.is("{")) return parse_object_literal();
    if (t.is("[")) return parse_array_literal();
    fail("unexpected token");
  }

  AstNode parse_object_literal() {
    AstNode obj;
    obj.kind = AstKind::ObjectLit;
    uint32_t start = peek().begin;
    expect("{");
    while (!at("}")) {
      if (at("...")) fail("object spread is not supported");
      if (at("[")) fail("computed property keys are not supported");
      const Token& key_tok = peek();
      std::string key;
      bool shorthand_ok = false;
      if (key_tok.kind == TokenKind::Identifier) {
        key = std::string(key_tok.text);
        shorthand_ok = is_identifier(key_tok);
      } else if (key_tok.kind == TokenKind::String) {
        key = unquote(key_tok.text);
      } else if (key_tok.kind == TokenKind::Number) {
        key = std::string(key_tok.text);
      } else {
        fail("expected property key");
      }
      uint32_t key_start = key_tok.begin;
      advance();
      AstNode value;
      if (eat(":")) {
        value = parse_assignment();
      } else if (at("(")) {
        fail("method shorthand is not supported");
      } else if (shorthand_ok) {
        value.kind = AstKind::Identifier;
        value.name = key;
        value.span = span_from(key_start);
      } else {
        fail("expected ':'");
      }
      value.key = key;
      obj.children.push_back(std::move(value));
      if (!eat(",")) break;
    }
    expect("}");
    obj.span = span_from(start);
    return obj;
  }

  AstNode parse_array_literal() {
    AstNode arr;
    arr.kind = AstKind::ArrayLit;
    uint32_t start = peek().begin;
    expect("[");
    while (!at("]")) {
      if (at("...")) fail("array spread is not supported");
      if (at(",")) fail("array holes are not supported");
      arr.children.push_back(parse_assignment());
      if (!eat(",")) break;
    }
    expect("]");
    arr.span = span_from(start);
    return arr;
  }

  std::string_view src_;
  LineIndex lines_;
  uint32_t file_id_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
  uint32_t last_end_ = 0;
  std::vector<Diagnostic> diagnostics_;
  std::vector<std::string> declared_types_;
};

}  // namespace

ParseResult parse(std::string_view source, uint32_t file_id) { return Parser(source, file_id).run(); }

const Json& supported_subset() {
  static const Json grammar = Json::parse(embedded::subset_grammar());
  return grammar;
}

}  // namespace typeslice
