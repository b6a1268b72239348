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
#include <string>
#include <string_view>
#include <vector>

#include "common/json.h"

namespace typeslice {

// Positions are 1-based; offsets are byte offsets into the file source.
struct SourceSpan {
  uint32_t file_id = 0;
  uint32_t start_line = 1;
  uint32_t start_col = 1;
  uint32_t end_line = 1;
  uint32_t end_col = 1;
  uint32_t start_offset = 0;
  uint32_t end_offset = 0;

  bool contains(const SourceSpan& other) const {
    return start_offset <= other.start_offset && other.end_offset <= end_offset;
  }
  uint32_t length() const { return end_offset - start_offset; }

  friend bool operator==(const SourceSpan& a, const SourceSpan& b) {
    return a.start_offset == b.start_offset && a.end_offset == b.end_offset &&
           a.start_line == b.start_line && a.start_col == b.start_col &&
           a.end_line == b.end_line && a.end_col == b.end_col;
  }
};

// Maps byte offsets to line/column pairs.
class LineIndex {
 public:
  explicit LineIndex(std::string_view text);

  SourceSpan span(uint32_t start, uint32_t end, uint32_t file_id = 0) const;
  std::pair<uint32_t, uint32_t> position(uint32_t offset) const;

 private:
  std::vector<uint32_t> line_starts_;
};

Json span_to_json(const SourceSpan& span);
SourceSpan span_from_json(const Json& j);

}  // namespace typeslice
