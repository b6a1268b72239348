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

#include "common/span.h"

#include <algorithm>

namespace typeslice {

LineIndex::LineIndex(std::string_view text) {
  line_starts_.push_back(0);
  for (uint32_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') line_starts_.push_back(i + 1);
  }
}

std::pair<uint32_t, uint32_t> LineIndex::position(uint32_t offset) const {
  auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
  auto line = static_cast<uint32_t>(it - line_starts_.begin());
  return {line, offset - line_starts_[line - 1] + 1};
}

SourceSpan LineIndex::span(uint32_t start, uint32_t end, uint32_t file_id) const {
  SourceSpan s;
  s.file_id = file_id;
  s.start_offset = start;
  s.end_offset = end;
  std::tie(s.start_line, s.start_col) = position(start);
  std::tie(s.end_line, s.end_col) = position(end);
  return s;
}

Json span_to_json(const SourceSpan& span) {
  Json j;
  j["startLine"] = span.start_line;
  j["startCol"] = span.start_col;
  j["endLine"] = span.end_line;
  j["endCol"] = span.end_col;
  j["startOffset"] = span.start_offset;
  j["endOffset"] = span.end_offset;
  return j;
}

SourceSpan span_from_json(const Json& j) {
  SourceSpan s;
  s.start_line = j.at("startLine").get<uint32_t>();
  s.start_col = j.at("startCol").get<uint32_t>();
  s.end_line = j.at("endLine").get<uint32_t>();
  s.end_col = j.at("endCol").get<uint32_t>();
  s.start_offset = j.at("startOffset").get<uint32_t>();
  s.end_offset = j.at("endOffset").get<uint32_t>();
  return s;
}

}  // namespace typeslice
