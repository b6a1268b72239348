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

#include "frontend/lexer.h"

#include <array>
#include <cctype>

#include "common/errors.h"
#include "common/span.h"

namespace typeslice {

namespace {

constexpr std::array<std::string_view, 38> kPunctuators = {
    ">>>=", "...", "===", "!==", "**=", "<<=", ">>=", ">>>", "&&=", "||=", "?\?=", "=>", "==",
    "!=",   "<=",  ">=",  "&&",  "||",  "??",  "?.",  "++",  "--",  "+=",  "-=",  "*=", "/=",
    "%=",   "&=",  "|=",  "^=",  "**",  "<<",  ">>",  "(",   ")",   "{",   "}",   ";"};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool is_ident_part(char c) {
  return is_ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    bool newline = false;
    while (true) {
      newline |= skip_trivia();
      Token t;
      t.newline_before = newline;
      newline = false;
      t.begin = pos_;
      if (pos_ >= src_.size()) {
        t.kind = TokenKind::Eof;
        t.end = pos_;
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (is_ident_start(c)) {
        while (pos_ < src_.size() && is_ident_part(src_[pos_])) ++pos_;
        t.kind = TokenKind::Identifier;
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && pos_ + 1 < src_.size() &&
                  std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        lex_number();
        t.kind = TokenKind::Number;
      } else if (c == '"' || c == '\'') {
        lex_string(c);
        t.kind = TokenKind::String;
      } else if (c == '`') {
        lex_string('`');
        t.kind = TokenKind::Template;
      } else {
        lex_punct();
        t.kind = TokenKind::Punct;
      }
      t.end = pos_;
      t.text = src_.substr(t.begin, t.end - t.begin);
      out.push_back(t);
    }
  }

 private:
  [[noreturn]] void fail(const char* what, uint32_t at) const {
    auto [line, col] = LineIndex(src_).position(at);
    throw ParseError(what, line, col);
  }

  // Returns true when a line break was crossed.
  bool skip_trivia() {
    bool newline = false;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        newline = true;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
        uint32_t start = pos_;
        auto close = src_.find("*/", pos_ + 2);
        if (close == std::string_view::npos) fail("unterminated block comment", start);
        if (src_.substr(pos_, close - pos_).find('\n') != std::string_view::npos) newline = true;
        pos_ = static_cast<uint32_t>(close + 2);
      } else {
        break;
      }
    }
    return newline;
  }

  void lex_number() {
    if (src_[pos_] == '0' && pos_ + 1 < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_ + 1]))) {
      pos_ += 2;
      while (pos_ < src_.size() && (std::isxdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
      return;
    }
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      uint32_t save = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      } else {
        pos_ = save;
      }
    }
    if (pos_ < src_.size() && src_[pos_] == 'n') ++pos_;  // bigint suffix
  }

  void lex_string(char quote) {
    uint32_t start = pos_++;
    while (pos_ < src_.size() && src_[pos_] != quote) {
      if (src_[pos_] == '\\') ++pos_;
      ++pos_;
    }
    if (pos_ >= src_.size()) {
      fail(quote == '`' ? "unterminated template literal" : "unterminated string literal", start);
    }
    ++pos_;
  }

  void lex_punct() {
    std::string_view rest = src_.substr(pos_);
    for (std::string_view p : kPunctuators) {
      if (rest.substr(0, p.size()) == p) {
        pos_ += static_cast<uint32_t>(p.size());
        return;
      }
    }
    ++pos_;
  }

  std::string_view src_;
  uint32_t pos_ = 0;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace typeslice
