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

#include <set>

#include "common/errors.h"
#include "declarations/declarations.h"
#include "frontend/lexer.h"
#include "graph/builtin_types.h"

namespace typeslice {

namespace {

class DtsParser {
 public:
  explicit DtsParser(std::string_view src) : src_(src), lines_(src) {
    try {
      toks_ = tokenize(src);
    } catch (const ParseError& e) {
      throw DeclParseError(e.what(), e.line(), e.col());
    }
  }

  std::vector<TypeDeclaration> run() {
    std::vector<TypeDeclaration> out;
    while (!at_eof()) {
      if (eat(";")) continue;
      out.push_back(declaration());
    }
    return out;
  }

 private:
  const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(std::string_view s) const { return peek().is(s); }
  bool at_eof() const { return peek().kind == TokenKind::Eof; }
  const Token& advance() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool eat(std::string_view s) {
    if (!at(s)) return false;
    advance();
    return true;
  }

  [[noreturn]] void fail(const std::string& message, const Token& at) const {
    auto [line, col] = lines_.position(at.begin);
    throw DeclParseError(message, line, col);
  }
  [[noreturn]] void fail(const std::string& message) const { fail(message, peek()); }

  void expect(std::string_view s) {
    if (!eat(s)) fail("expected '" + std::string(s) + "'");
  }

  std::string word(const char* what) {
    if (peek().kind != TokenKind::Identifier) fail(std::string("expected ") + what);
    return std::string(advance().text);
  }

  std::string dotted_name() {
    std::string name = word("type name");
    while (at(".") && peek(1).kind == TokenKind::Identifier) {
      advance();
      name += "." + std::string(advance().text);
    }
    return name;
  }

  void skip_angle_group() {
    int depth = 0;
    do {
      if (at_eof()) fail("unterminated type parameter list");
      if (at("<")) ++depth;
      if (at(">")) --depth;
      if (at(">>")) depth -= 2;
      advance();
    } while (depth > 0);
  }

  // Skips a type expression; returns its canonical text.
  std::string type_text() {
    int depth = 0;
    uint32_t begin = peek().begin;
    uint32_t end = begin;
    while (!at_eof()) {
      if (depth == 0 && (at(";") || at(",") || at("}") || at(")") || at("="))) break;
      if (depth == 0 && peek().newline_before && end != begin && !at("|") && !at("&")) break;
      if (at("(") || at("[") || at("{") || at("<")) ++depth;
      if (at(")") || at("]") || at("}") || at(">")) --depth;
      if (at(">>")) depth -= 2;
      if (depth < 0) fail("unbalanced type");
      end = advance().end;
    }
    if (end == begin) fail("expected type");
    return canonical_type_text(src_.substr(begin, end - begin));
  }

  TypeDeclaration declaration() {
    eat("export");
    bool declared = eat("declare");
    TypeDeclaration decl;
    if (eat("interface")) {
    } else if (at("class")) {
      if (!declared) fail("classes must be ambient ('declare class')");
      advance();
    } else {
      fail("expected 'interface' or 'declare class'");
    }
    decl.name = dotted_name();
    if (at("<")) skip_angle_group();
    if (eat("extends")) supertypes(decl);
    if (eat("implements")) supertypes(decl);
    expect("{");
    std::set<std::string> seen;
    while (!eat("}")) {
      if (at_eof()) fail("expected '}'");
      if (eat(";") || eat(",")) continue;
      member(decl, seen);
    }
    return decl;
  }

  void supertypes(TypeDeclaration& decl) {
    do {
      decl.supertypes.push_back(dotted_name());
      if (at("<")) skip_angle_group();
    } while (eat(","));
  }

  void member(TypeDeclaration& decl, std::set<std::string>& seen) {
    static const std::set<std::string_view> kModifiers = {"readonly", "public", "private", "protected", "static",
                                                          "abstract"};
    while (peek().kind == TokenKind::Identifier && kModifiers.count(peek().text) &&
           (peek(1).kind == TokenKind::Identifier || peek(1).kind == TokenKind::String)) {
      advance();
    }
    if (at("[")) fail("index signatures are not supported");
    const Token& name_tok = peek();
    std::string name;
    if (name_tok.kind == TokenKind::Identifier) {
      name = std::string(advance().text);
    } else if (name_tok.kind == TokenKind::String) {
      name = std::string(name_tok.text.substr(1, name_tok.text.size() - 2));
      advance();
    } else {
      fail("expected member name");
    }
    eat("?");
    if (at("<")) skip_angle_group();
    if (at("(")) {
      MethodSignature sig = parameters();
      if (eat(":")) type_text();
      if (name == "constructor") return;
      if (!seen.insert(name).second) {
        fail(decl.properties.count(name) ? "member '" + name + "' is both a property and a method"
                                         : "overloads are not supported ('" + name + "')",
             name_tok);
      }
      decl.methods[name] = sig;
      return;
    }
    std::optional<std::string> type;
    if (eat(":")) type = type_text();
    if (!seen.insert(name).second) {
      fail(decl.methods.count(name) ? "member '" + name + "' is both a property and a method"
                                    : "duplicate property '" + name + "'",
           name_tok);
    }
    decl.properties[name] = type;
  }

  MethodSignature parameters() {
    expect("(");
    int required = 0;
    int total = 0;
    bool rest_seen = false;
    while (!at(")")) {
      bool rest = eat("...");
      if (at("{") || at("[")) fail("destructured parameters are not supported");
      word("parameter name");
      bool optional = eat("?");
      if (eat(":")) type_text();
      if (eat("=")) {
        optional = true;
        type_text();
      }
      if (rest) {
        rest_seen = true;
      } else {
        ++total;
        if (!optional) ++required;
      }
      if (!eat(",")) break;
    }
    expect(")");
    return {required, rest_seen ? kUnboundedArity : total};
  }

  std::string_view src_;
  LineIndex lines_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

std::vector<TypeDeclaration> load_json_stub(std::string_view source) {
  Json j;
  try {
    j = Json::parse(source);
  } catch (const Json::parse_error& e) {
    auto [line, col] = LineIndex(source).position(static_cast<uint32_t>(std::min<size_t>(e.byte, source.size())));
    throw DeclParseError(std::string("invalid JSON stub: ") + e.what(), line, col);
  }
  std::vector<TypeDeclaration> out;
  try {
    for (const Json& t : j.at("types")) {
      TypeDeclaration decl;
      decl.name = t.at("name").get<std::string>();
      if (t.contains("methods")) {
        for (const Json& m : t["methods"]) {
          MethodSignature sig;
          sig.min_arity = m.value("minArity", 0);
          const Json& max = m.contains("maxArity") ? m["maxArity"] : Json(sig.min_arity);
          sig.max_arity = max.is_null() ? kUnboundedArity : max.get<int>();
          if (sig.max_arity != kUnboundedArity && sig.max_arity < sig.min_arity) {
            throw DeclParseError("maxArity below minArity for " + decl.name, 1, 1);
          }
          std::string name = m.at("name").get<std::string>();
          if (!decl.methods.emplace(name, sig).second) {
            throw DeclParseError("overloads are not supported ('" + name + "')", 1, 1);
          }
        }
      }
      if (t.contains("properties")) {
        for (const Json& p : t["properties"]) {
          std::string name = p.at("name").get<std::string>();
          if (decl.methods.count(name)) {
            throw DeclParseError("member '" + name + "' is both a property and a method", 1, 1);
          }
          std::optional<std::string> type;
          if (p.contains("type") && p["type"].is_string()) type = p["type"].get<std::string>();
          decl.properties[name] = type;
        }
      }
      if (t.contains("extends")) decl.supertypes = t["extends"].get<std::vector<std::string>>();
      out.push_back(std::move(decl));
    }
  } catch (const Json::exception& e) {
    throw DeclParseError(std::string("invalid JSON stub: ") + e.what(), 1, 1);
  }
  return out;
}

}  // namespace

std::vector<TypeDeclaration> load_declarations(std::string_view source, DeclFormat format) {
  if (format == DeclFormat::JsonStub) return load_json_stub(source);
  return DtsParser(source).run();
}

Json declarations_to_json(const std::vector<TypeDeclaration>& decls) {
  Json types = Json::array();
  for (const TypeDeclaration& d : decls) {
    Json t;
    t["name"] = d.name;
    Json methods = Json::array();
    for (const auto& [name, sig] : d.methods) {
      methods.push_back({{"name", name},
                         {"minArity", sig.min_arity},
                         {"maxArity", sig.max_arity == kUnboundedArity ? Json(nullptr) : Json(sig.max_arity)}});
    }
    t["methods"] = std::move(methods);
    Json props = Json::array();
    for (const auto& [name, type] : d.properties) {
      props.push_back({{"name", name}, {"type", type ? Json(*type) : Json(nullptr)}});
    }
    t["properties"] = std::move(props);
    t["extends"] = d.supertypes;
    types.push_back(std::move(t));
  }
  return Json{{"types", std::move(types)}};
}

}  // namespace typeslice
