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
#include <future>
#include <stdexcept>
#include <tuple>

#include "common/errors.h"
#include "graph/builtin_types.h"
#include "inference/inference.h"

namespace typeslice {

namespace {

struct Prepared {
  ProgramUsageSlice group;
  TaggedSnippet snippet;
};

RequestItem to_item(const Prepared& p) {
  RequestItem item;
  item.scope = p.snippet.scope;
  item.source = p.snippet.model_input();
  for (const SnippetTag& t : p.snippet.tags) {
    const Definition& def = p.group.slices[t.slice].def_source;
    item.tags.push_back({t.index, t.symbol, t.spans, def.kind, def.detail});
  }
  return item;
}

std::vector<ItemResult> run_batch(InferenceBackend& backend, const std::vector<RequestItem>& items, int batch_id) {
  try {
    return backend.infer_batch(items);
  } catch (const MalformedOutput& e) {
    if (e.batch_id() >= 0) throw;
    throw MalformedOutput(e.what(), batch_id);
  }
}

Json prediction_to_json(const InferencePrediction& p) {
  Json j{{"scope", p.scope},         {"tag", p.tag_index},          {"symbol", p.symbol},
         {"type", p.type_name},      {"confidence", p.confidence}, {"span", span_to_json(p.span)},
         {"validation", p.validation}};
  if (!p.reason.empty()) j["reason"] = p.reason;
  return j;
}

InferencePrediction prediction_from_json(const Json& j) {
  InferencePrediction p;
  p.scope = j.at("scope").get<std::string>();
  p.tag_index = j.value("tag", 0);
  p.symbol = j.at("symbol").get<std::string>();
  p.type_name = j.at("type").get<std::string>();
  p.confidence = j.value("confidence", 1.0);
  p.span = span_from_json(j.at("span"));
  p.validation = j.value("validation", "Off");
  p.reason = j.value("reason", "");
  return p;
}

}  // namespace

std::string_view to_string(ValidationPolicy p) {
  switch (p) {
    case ValidationPolicy::Strict: return "strict";
    case ValidationPolicy::AcceptUnknown: return "accept-unknown";
    case ValidationPolicy::Off: return "off";
  }
  return "";
}

ValidationPolicy validation_policy_from_string(std::string_view s) {
  if (s == "strict") return ValidationPolicy::Strict;
  if (s == "accept-unknown") return ValidationPolicy::AcceptUnknown;
  if (s == "off") return ValidationPolicy::Off;
  throw std::invalid_argument("unknown validation policy '" + std::string(s) + "'");
}

const std::set<std::string, std::less<>>& default_drop_set() {
  static const std::set<std::string, std::less<>> drop = {"any",  "ANY",  "object",    "UNK",
                                                          "void", "NULL", "null",      "undefined"};
  return drop;
}

std::vector<InferencePrediction> select_greedy(const std::vector<InferencePrediction>& predictions) {
  std::map<std::pair<std::string, std::string>, const InferencePrediction*> best;
  for (const InferencePrediction& p : predictions) {
    const InferencePrediction*& slot = best[{p.scope, p.symbol}];
    if (!slot || std::make_tuple(-p.confidence, p.tag_index, p.type_name) <
                     std::make_tuple(-slot->confidence, slot->tag_index, slot->type_name)) {
      slot = &p;
    }
  }
  std::vector<InferencePrediction> out;
  for (const auto& [key, p] : best) out.push_back(*p);
  std::sort(out.begin(), out.end(), [](const InferencePrediction& a, const InferencePrediction& b) {
    return std::tie(a.scope, a.span.start_offset, a.symbol) < std::tie(b.scope, b.span.start_offset, b.symbol);
  });
  return out;
}

InferenceOutcome infer(const std::vector<ProgramUsageSlice>& groups, InferenceBackend& backend,
                       const InferenceOptions& options) {
  if (options.token_budget < kMinTokenBudget) {
    throw std::invalid_argument("token budget must be at least " + std::to_string(kMinTokenBudget));
  }
  if (options.in_flight < 1) throw std::invalid_argument("in-flight limit must be at least 1");
  InferenceOutcome out;

  std::vector<ProgramUsageSlice> pending;
  for (const ProgramUsageSlice& g : groups) {
    ProgramUsageSlice copy = g;
    if (options.skip_typed) {
      std::erase_if(copy.slices, [](const UsageSlice& s) { return !BuiltinTypeSet::is_any(s.target.type_name); });
    }
    if (!copy.slices.empty()) pending.push_back(std::move(copy));
  }
  if (pending.empty()) return out;

  BackendContract contract = backend.contract();
  if (contract.max_batch < 1 || contract.input_tokens < 1) throw BackendUnavailable("backend reports no capacity");
  int budget = std::max(kMinTokenBudget, std::min(options.token_budget, contract.input_tokens));

  std::vector<Prepared> prepared;
  for (ProgramUsageSlice& g : pending) {
    TaggedSnippet snippet = render_tagged(g, budget);
    if (snippet.tags.empty()) continue;
    prepared.push_back({std::move(g), std::move(snippet)});
  }
  if (prepared.empty()) return out;

  std::vector<std::vector<RequestItem>> batches;
  for (size_t i = 0; i < prepared.size(); i += static_cast<size_t>(contract.max_batch)) {
    std::vector<RequestItem> batch;
    for (size_t k = i; k < std::min(prepared.size(), i + contract.max_batch); ++k) batch.push_back(to_item(prepared[k]));
    batches.push_back(std::move(batch));
  }

  std::vector<std::vector<ItemResult>> replies(batches.size());
  for (size_t wave = 0; wave < batches.size(); wave += static_cast<size_t>(options.in_flight)) {
    size_t wave_end = std::min(batches.size(), wave + options.in_flight);
    if (wave_end - wave == 1) {
      replies[wave] = run_batch(backend, batches[wave], static_cast<int>(wave));
      continue;
    }
    std::vector<std::future<std::vector<ItemResult>>> futures;
    for (size_t b = wave; b < wave_end; ++b) {
      futures.push_back(std::async(std::launch::async, run_batch, std::ref(backend), std::cref(batches[b]),
                                   static_cast<int>(b)));
    }
    for (auto& f : futures) f.wait();
    for (size_t b = wave; b < wave_end; ++b) replies[b] = futures[b - wave].get();
  }
  out.backend_calls = static_cast<int>(batches.size());

  const DeclarationRegistry* registry = options.registry;
  static const DeclarationRegistry builtins = DeclarationRegistry::with_builtins();
  if (!registry) registry = &builtins;

  std::vector<InferencePrediction> candidates;
  size_t next = 0;
  for (size_t b = 0; b < batches.size(); ++b) {
    if (replies[b].size() != batches[b].size()) {
      throw MalformedOutput("expected " + std::to_string(batches[b].size()) + " results, got " +
                                std::to_string(replies[b].size()),
                            static_cast<int>(b));
    }
    for (size_t k = 0; k < batches[b].size(); ++k, ++next) {
      const Prepared& p = prepared[next];
      const ItemResult& r = replies[b][k];
      if (r.scope != p.snippet.scope) {
        throw MalformedOutput("result for scope '" + r.scope + "' where '" + p.snippet.scope + "' was expected",
                              static_cast<int>(b));
      }
      for (const RawPrediction& raw : r.predictions) {
        auto tag = std::find_if(p.snippet.tags.begin(), p.snippet.tags.end(),
                                [&](const SnippetTag& t) { return t.index == raw.index; });
        if (tag == p.snippet.tags.end()) {
          throw MalformedOutput("unknown tag index " + std::to_string(raw.index) + " in scope " + r.scope,
                                static_cast<int>(b));
        }
        const UsageSlice& slice = p.group.slices[tag->slice];
        InferencePrediction pred;
        pred.scope = p.snippet.scope;
        pred.tag_index = raw.index;
        pred.symbol = tag->symbol;
        pred.type_name = canonical_type_text(raw.type_name);
        pred.confidence = raw.confidence;
        pred.span = slice.target.span;
        out.raw.push_back(pred);

        if (pred.type_name.empty() || options.drop_set.count(pred.type_name) ||
            BuiltinTypeSet::is_any(pred.type_name) || BuiltinTypeSet::is_nullish(pred.type_name)) {
          pred.reason = "dropped: unhelpful type";
          out.rejected.push_back(std::move(pred));
          continue;
        }
        if (options.policy != ValidationPolicy::Off) {
          ValidationResult v = validate(slice, pred.type_name, *registry);
          pred.validation = std::string(to_string(v.verdict));
          if (v.verdict == Verdict::Violation ||
              (v.verdict == Verdict::UnknownType && options.policy == ValidationPolicy::Strict)) {
            pred.reason = v.details;
            out.rejected.push_back(std::move(pred));
            continue;
          }
        }
        candidates.push_back(std::move(pred));
      }
    }
  }
  out.accepted = select_greedy(candidates);
  return out;
}

Json predictions_to_json(const InferenceOutcome& outcome) {
  Json accepted = Json::array();
  for (const InferencePrediction& p : outcome.accepted) accepted.push_back(prediction_to_json(p));
  Json rejected = Json::array();
  for (const InferencePrediction& p : outcome.rejected) rejected.push_back(prediction_to_json(p));
  return Json{{"version", kProtocolVersion},
              {"backendCalls", outcome.backend_calls},
              {"predictions", std::move(accepted)},
              {"rejected", std::move(rejected)}};
}

InferenceOutcome predictions_from_json(const Json& j) {
  InferenceOutcome out;
  try {
    for (const Json& p : j.at("predictions")) out.accepted.push_back(prediction_from_json(p));
    if (j.contains("rejected")) {
      for (const Json& p : j["rejected"]) out.rejected.push_back(prediction_from_json(p));
    }
    out.backend_calls = j.value("backendCalls", 0);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed predictions: ") + e.what());
  }
  return out;
}

}  // namespace typeslice
