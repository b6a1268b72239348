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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <tuple>
#include <regex>
#include <stdexcept>

#include "common/errors.h"
#include "inference/inference.h"

namespace typeslice {

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }

const std::regex& marker_regex() {
  static const std::regex re("<extra_id_([0-9]+)>");
  return re;
}

std::string_view trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct Occurrence {
  uint32_t offset;  // relative to the scope source
  int tag;
};

std::string insert_markers(std::string_view source, const std::vector<Occurrence>& occurrences, uint32_t cut) {
  std::string out;
  out.reserve(cut + occurrences.size() * 14);
  uint32_t pos = 0;
  for (const Occurrence& o : occurrences) {
    if (o.offset >= cut) break;
    out.append(source.substr(pos, o.offset - pos));
    out += tag_marker(o.tag);
    pos = o.offset;
  }
  out.append(source.substr(pos, cut - pos));
  return out;
}

}  // namespace

int estimate_tokens(std::string_view text) {
  size_t lexemes = 0;
  for (size_t i = 0; i < text.size();) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (is_word_char(c)) {
      while (i < text.size() && is_word_char(text[i])) ++i;
      ++lexemes;
    } else {
      ++i;
      ++lexemes;
    }
  }
  // Integer arithmetic: ceil(13 * n / 10).
  return static_cast<int>((lexemes * 13 + 9) / 10);
}

std::string tag_marker(int index) { return "<extra_id_" + std::to_string(index) + ">"; }

TaggedSnippet render_tagged(const ProgramUsageSlice& group, int budget) {
  if (budget < kMinTokenBudget) {
    throw std::invalid_argument("token budget must be at least " + std::to_string(kMinTokenBudget));
  }
  const uint32_t base = group.span.start_offset;
  const uint32_t length = static_cast<uint32_t>(group.source.size());

  struct Pending {
    size_t slice;
    std::vector<SourceSpan> spans;
  };
  std::vector<Pending> pending;
  for (size_t i = 0; i < group.slices.size(); ++i) {
    const UsageSlice& s = group.slices[i];
    std::vector<SourceSpan> spans = s.usages;
    spans.push_back(s.target.span);
    std::erase_if(spans, [&](const SourceSpan& sp) {
      return sp.start_offset < base || sp.end_offset > base + length;
    });
    std::sort(spans.begin(), spans.end(),
              [](const SourceSpan& a, const SourceSpan& b) { return a.start_offset < b.start_offset; });
    spans.erase(std::unique(spans.begin(), spans.end(),
                            [](const SourceSpan& a, const SourceSpan& b) { return a.start_offset == b.start_offset; }),
                spans.end());
    if (!spans.empty()) pending.push_back({i, std::move(spans)});
  }
  std::stable_sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
    return a.spans.front().start_offset < b.spans.front().start_offset;
  });

  TaggedSnippet snippet;
  snippet.scope = group.scope;
  snippet.prefix = std::string(kTaskPrefix);
  std::vector<Occurrence> occurrences;
  for (size_t k = 0; k < pending.size(); ++k) {
    SnippetTag tag;
    tag.index = static_cast<int>(k);
    tag.slice = pending[k].slice;
    tag.symbol = group.slices[tag.slice].target.symbol;
    tag.spans = std::move(pending[k].spans);
    for (const SourceSpan& sp : tag.spans) occurrences.push_back({sp.start_offset - base, tag.index});
    snippet.tags.push_back(std::move(tag));
  }
  std::sort(occurrences.begin(), occurrences.end(),
            [](const Occurrence& a, const Occurrence& b) { return std::tie(a.offset, a.tag) < std::tie(b.offset, b.tag); });

  auto fits = [&](uint32_t cut) {
    std::string input = snippet.prefix + "\n" + insert_markers(group.source, occurrences, cut);
    return estimate_tokens(input) <= budget;
  };

  uint32_t cut = length;
  if (!fits(length)) {
    std::vector<uint32_t> cuts = {0};
    for (uint32_t end : group.statement_ends) {
      if (end > base && end - base < length) cuts.push_back(end - base);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    // The estimate grows with the cut, so the largest fitting cut is found by bisection.
    size_t lo = 0;
    size_t hi = cuts.size() - 1;
    while (lo < hi) {
      size_t mid = (lo + hi + 1) / 2;
      if (fits(cuts[mid])) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    cut = cuts[lo];
    snippet.truncated = true;
  }

  snippet.source = group.source.substr(0, cut);
  snippet.text = insert_markers(group.source, occurrences, cut);
  for (SnippetTag& tag : snippet.tags) {
    std::erase_if(tag.spans, [&](const SourceSpan& sp) { return sp.start_offset - base >= cut; });
  }
  std::erase_if(snippet.tags, [](const SnippetTag& t) { return t.spans.empty(); });
  return snippet;
}

std::string strip_tags(std::string_view text) {
  std::string s(text);
  return std::regex_replace(s, marker_regex(), "");
}

Generation parse_generation(std::string_view output) {
  Generation g;
  std::string_view body = trim(output);
  if (body == kNoTypesSentinel) {
    g.no_types = true;
    return g;
  }
  std::string text(body);
  auto begin = std::sregex_iterator(text.begin(), text.end(), marker_regex());
  auto end = std::sregex_iterator();
  if (begin == end) throw MalformedOutput("generation has no tag markers");
  if (begin->position(0) != 0) throw MalformedOutput("generation starts with text before the first tag marker");
  for (auto it = begin; it != end; ++it) {
    auto next = std::next(it);
    size_t from = static_cast<size_t>(it->position(0) + it->length(0));
    size_t to = next == end ? text.size() : static_cast<size_t>(next->position(0));
    std::string_view type = trim(std::string_view(text).substr(from, to - from));
    std::string digits = (*it)[1].str();
    int index = 0;
    if (std::from_chars(digits.data(), digits.data() + digits.size(), index).ec != std::errc()) {
      throw MalformedOutput("tag index out of range");
    }
    if (type.empty()) throw MalformedOutput("tag " + std::to_string(index) + " has no type");
    if (!g.types.emplace(index, std::string(type)).second) {
      throw MalformedOutput("tag " + std::to_string(index) + " appears twice");
    }
  }
  return g;
}

}  // namespace typeslice
