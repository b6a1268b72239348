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
#include <stdexcept>
#include <string>

namespace typeslice {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unrecoverable lexical corruption (unterminated string or comment at EOF).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, uint32_t line, uint32_t col)
      : Error(message + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line_(line),
        col_(col) {}
  uint32_t line() const { return line_; }
  uint32_t col() const { return col_; }

 private:
  uint32_t line_;
  uint32_t col_;
};

class DeclParseError : public Error {
 public:
  DeclParseError(const std::string& message, uint32_t line, uint32_t col)
      : Error(message + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line_(line),
        col_(col) {}
  uint32_t line() const { return line_; }
  uint32_t col() const { return col_; }

 private:
  uint32_t line_;
  uint32_t col_;
};

class BackendUnavailable : public Error {
 public:
  using Error::Error;
};

class MalformedOutput : public Error {
 public:
  explicit MalformedOutput(const std::string& message, int batch_id = -1)
      : Error(batch_id < 0 ? message : "batch " + std::to_string(batch_id) + ": " + message),
        batch_id_(batch_id) {}
  int batch_id() const { return batch_id_; }

 private:
  int batch_id_;
};

class LexiconError : public Error {
 public:
  using Error::Error;
};

class ConflictError : public Error {
 public:
  using Error::Error;
};

class MismatchError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed artifact JSON handed to a stage.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace typeslice
