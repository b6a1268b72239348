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

#include "common/embedded.h"
#include "common/errors.h"
#include "graph/builtin_types.h"
#include "inference/inference.h"

namespace typeslice {

namespace {

double confidence_of(const Json& entry, const std::string& where) {
  double c = entry.value("confidence", 1.0);
  if (!(c >= 0.0 && c <= 1.0)) throw LexiconError(where + ": confidence must be within [0, 1]");
  return c;
}

std::vector<LexiconRule> parse_rules(const Json& j, const char* section) {
  std::vector<LexiconRule> rules;
  if (!j.contains(section)) return rules;
  if (!j[section].is_array()) throw LexiconError(std::string(section) + " must be an array");
  for (const Json& entry : j[section]) {
    LexiconRule r;
    r.pattern = entry.at("pattern").get<std::string>();
    r.type_name = entry.at("type").get<std::string>();
    if (r.type_name.empty()) throw LexiconError(std::string(section) + ": empty type for " + r.pattern);
    r.confidence = confidence_of(entry, std::string(section) + " " + r.pattern);
    try {
      r.regex = std::regex(r.pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      throw LexiconError(std::string(section) + ": bad pattern '" + r.pattern + "': " + e.what());
    }
    rules.push_back(std::move(r));
  }
  return rules;
}

bool is_mask_placeholder(std::string_view name) { return name.rfind("__OBF", 0) == 0; }

}  // namespace

Lexicon Lexicon::parse(std::string_view json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw LexiconError(std::string("lexicon is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw LexiconError("lexicon must be a JSON object");
  Lexicon lex;
  try {
    if (j.contains("literals")) {
      for (const auto& [kind, entry] : j["literals"].items()) {
        std::string type = entry.at("type").get<std::string>();
        if (type.empty()) throw LexiconError("literals: empty type for " + kind);
        lex.literals[kind] = {type, confidence_of(entry, "literals " + kind)};
      }
    }
    lex.names = parse_rules(j, "names");
    lex.callees = parse_rules(j, "callees");
  } catch (const Json::exception& e) {
    throw LexiconError(std::string("malformed lexicon: ") + e.what());
  }
  return lex;
}

Lexicon Lexicon::standard() {
  static const Lexicon lex = parse(embedded::default_lexicon());
  return lex;
}

HeuristicBackend::HeuristicBackend(Lexicon lexicon) : lexicon_(std::move(lexicon)) {}

BackendContract HeuristicBackend::contract() { return BackendContract{}; }

std::optional<RawPrediction> HeuristicBackend::predict(const RequestTag& tag) const {
  if (tag.def_kind == DefKind::CallResult && tag.detail.rfind("new ", 0) == 0) {
    std::string type = canonical_type_text(std::string_view(tag.detail).substr(4));
    if (!type.empty() && !is_mask_placeholder(type)) return RawPrediction{tag.index, type, 1.0};
  }
  if (tag.def_kind == DefKind::Literal) {
    auto it = lexicon_.literals.find(tag.detail);
    if (it != lexicon_.literals.end()) return RawPrediction{tag.index, it->second.first, it->second.second};
  }
  for (const LexiconRule& r : lexicon_.names) {
    if (std::regex_search(tag.symbol, r.regex)) return RawPrediction{tag.index, r.type_name, r.confidence};
  }
  if (tag.def_kind == DefKind::CallResult) {
    for (const LexiconRule& r : lexicon_.callees) {
      if (std::regex_search(tag.detail, r.regex)) return RawPrediction{tag.index, r.type_name, r.confidence};
    }
  }
  return std::nullopt;
}

std::vector<ItemResult> HeuristicBackend::infer_batch(const std::vector<RequestItem>& items) {
  std::vector<ItemResult> results;
  results.reserve(items.size());
  for (const RequestItem& item : items) {
    ItemResult r;
    r.scope = item.scope;
    for (const RequestTag& tag : item.tags) {
      if (auto p = predict(tag)) r.predictions.push_back(std::move(*p));
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace typeslice
