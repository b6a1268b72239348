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

#include <cstdint>
#include <string_view>
#include <vector>

namespace typeslice {

enum class TokenKind { Identifier, Number, String, Template, Punct, Eof };

struct Token {
  TokenKind kind = TokenKind::Eof;
  std::string_view text;
  uint32_t begin = 0;
  uint32_t end = 0;
  bool newline_before = false;

  bool is(std::string_view punct_or_word) const {
    return (kind == TokenKind::Punct || kind == TokenKind::Identifier) && text == punct_or_word;
  }
};

// Tokenizes the whole source. Throws ParseError for an unterminated string,
// template or block comment. Unknown characters become single-character
// punctuators and are left for the parser to reject.
std::vector<Token> tokenize(std::string_view source);

}  // namespace typeslice
