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

#include "common/errors.h"
#include "inference/inference.h"

namespace typeslice {

namespace {

const Json& require(const Json& j, const char* key, bool (Json::*check)() const, const char* what) {
  if (!j.is_object() || !j.contains(key) || !(j[key].*check)()) {
    throw FormatError(std::string("'") + key + "' must be " + what);
  }
  return j[key];
}

}  // namespace

Json request_to_json(const std::vector<RequestItem>& items) {
  Json arr = Json::array();
  for (const RequestItem& item : items) {
    Json tags = Json::array();
    for (const RequestTag& t : item.tags) {
      Json spans = Json::array();
      for (const SourceSpan& s : t.spans) spans.push_back(span_to_json(s));
      tags.push_back({{"index", t.index},
                      {"symbol", t.symbol},
                      {"spans", std::move(spans)},
                      {"hint", {{"defKind", to_string(t.def_kind)}, {"detail", t.detail}}}});
    }
    arr.push_back({{"scope", item.scope}, {"source", item.source}, {"tags", std::move(tags)}});
  }
  return Json{{"version", kProtocolVersion}, {"language", "ecmascript"}, {"items", std::move(arr)}};
}

std::vector<RequestItem> request_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("request must be a JSON object");
  if (require(j, "version", &Json::is_number_integer, "an integer").get<int>() != kProtocolVersion) {
    throw FormatError("unsupported protocol version");
  }
  if (require(j, "language", &Json::is_string, "a string").get<std::string>() != "ecmascript") {
    throw FormatError("unsupported language");
  }
  std::vector<RequestItem> items;
  for (const Json& it : require(j, "items", &Json::is_array, "an array")) {
    RequestItem item;
    item.scope = require(it, "scope", &Json::is_string, "a string").get<std::string>();
    item.source = require(it, "source", &Json::is_string, "a string").get<std::string>();
    for (const Json& t : require(it, "tags", &Json::is_array, "an array")) {
      RequestTag tag;
      tag.index = require(t, "index", &Json::is_number_integer, "an integer").get<int>();
      if (tag.index < 0) throw FormatError("'index' must be non-negative");
      tag.symbol = require(t, "symbol", &Json::is_string, "a string").get<std::string>();
      for (const Json& s : require(t, "spans", &Json::is_array, "an array")) {
        try {
          tag.spans.push_back(span_from_json(s));
        } catch (const Json::exception&) {
          throw FormatError("malformed span");
        }
      }
      if (t.contains("hint")) {
        const Json& h = t["hint"];
        if (!h.is_object()) throw FormatError("'hint' must be an object");
        if (h.contains("defKind")) {
          if (!h["defKind"].is_string()) throw FormatError("'defKind' must be a string");
          tag.def_kind = def_kind_from_string(h["defKind"].get<std::string>());
        }
        if (h.contains("detail")) tag.detail = require(h, "detail", &Json::is_string, "a string").get<std::string>();
      }
      item.tags.push_back(std::move(tag));
    }
    items.push_back(std::move(item));
  }
  return items;
}

Json results_to_json(const std::vector<ItemResult>& results) {
  Json arr = Json::array();
  for (const ItemResult& r : results) {
    Json preds = Json::array();
    for (const RawPrediction& p : r.predictions) {
      preds.push_back({{"index", p.index}, {"type", p.type_name}, {"confidence", p.confidence}});
    }
    arr.push_back({{"scope", r.scope}, {"predictions", std::move(preds)}});
  }
  return Json{{"results", std::move(arr)}};
}

std::vector<ItemResult> results_from_json(const Json& j, int batch_id) {
  std::vector<ItemResult> out;
  try {
    for (const Json& r : require(j, "results", &Json::is_array, "an array")) {
      ItemResult result;
      result.scope = require(r, "scope", &Json::is_string, "a string").get<std::string>();
      if (r.contains("predictions")) {
        for (const Json& p : require(r, "predictions", &Json::is_array, "an array")) {
          RawPrediction pred;
          pred.index = require(p, "index", &Json::is_number_integer, "an integer").get<int>();
          pred.type_name = require(p, "type", &Json::is_string, "a string").get<std::string>();
          if (pred.type_name.empty()) throw FormatError("empty type");
          if (p.contains("confidence")) {
            pred.confidence = require(p, "confidence", &Json::is_number, "a number").get<double>();
            if (!(pred.confidence >= 0.0 && pred.confidence <= 1.0)) throw FormatError("confidence outside [0, 1]");
          }
          result.predictions.push_back(std::move(pred));
        }
      } else if (r.contains("generation")) {
        Generation g = parse_generation(require(r, "generation", &Json::is_string, "a string").get<std::string>());
        for (const auto& [index, type] : g.types) result.predictions.push_back({index, type, 1.0});
      } else {
        throw FormatError("result carries neither predictions nor generation");
      }
      out.push_back(std::move(result));
    }
  } catch (const FormatError& e) {
    throw MalformedOutput(e.what(), batch_id);
  } catch (const MalformedOutput& e) {
    if (e.batch_id() >= 0 || batch_id < 0) throw;
    throw MalformedOutput(e.what(), batch_id);
  }
  return out;
}

Json contract_to_json(const BackendContract& c, const std::string& model) {
  return Json{{"status", "ok"},
              {"model", model},
              {"maxBatch", c.max_batch},
              {"inputTokens", c.input_tokens},
              {"outputTokens", c.output_tokens},
              {"languages", c.languages}};
}

BackendContract contract_from_json(const Json& j) {
  BackendContract c;
  try {
    if (require(j, "status", &Json::is_string, "a string").get<std::string>() != "ok") {
      throw FormatError("backend is not healthy");
    }
    c.max_batch = require(j, "maxBatch", &Json::is_number_integer, "an integer").get<int>();
    c.input_tokens = j.value("inputTokens", c.input_tokens);
    c.output_tokens = j.value("outputTokens", c.output_tokens);
    if (j.contains("languages")) c.languages = j["languages"].get<std::vector<std::string>>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed health reply: ") + e.what());
  }
  if (c.max_batch < 1 || c.input_tokens < 1 || c.output_tokens < 1) throw FormatError("backend budgets must be positive");
  return c;
}

}  // namespace typeslice
