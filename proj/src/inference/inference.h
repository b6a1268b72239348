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

#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "common/json.h"
#include "common/span.h"
#include "declarations/declarations.h"
#include "slicing/slices.h"

namespace typeslice {

inline constexpr std::string_view kTaskPrefix = "Infer types for tagged variables:";
inline constexpr std::string_view kNoTypesSentinel = "No types to infer.";
inline constexpr int kMinTokenBudget = 16;
inline constexpr int kProtocolVersion = 1;

// ceil(1.3 * lexemes), where a lexeme is a run of identifier characters or a
// single other non-space character.
int estimate_tokens(std::string_view text);

std::string tag_marker(int index);

struct SnippetTag {
  int index = 0;
  std::string symbol;
  size_t slice = 0;                 // position in the group's slice list
  std::vector<SourceSpan> spans;    // file coordinates, in source order
};

struct TaggedSnippet {
  std::string scope;
  std::string prefix;
  std::string source;  // untagged scope source, possibly truncated
  std::string text;    // `source` with tag markers inserted
  std::vector<SnippetTag> tags;
  bool truncated = false;

  // What a model receives: prefix, newline, tagged text.
  std::string model_input() const { return prefix + "\n" + text; }
};

// Tags every slice at its target span and usage spans; indices follow first
// occurrence. Drops trailing top-level statements until the model input fits
// the budget. Throws std::invalid_argument when budget < kMinTokenBudget.
TaggedSnippet render_tagged(const ProgramUsageSlice& group, int budget);

std::string strip_tags(std::string_view text);

struct Generation {
  bool no_types = false;
  std::map<int, std::string> types;
};

// Parses "<extra_id_0> T0 <extra_id_1> T1 ..." or the no-types sentinel.
// Throws MalformedOutput on anything else.
Generation parse_generation(std::string_view output);

struct BackendContract {
  int max_batch = 16;
  int input_tokens = 512;
  int output_tokens = 128;
  std::vector<std::string> languages = {"ecmascript"};
};

struct RequestTag {
  int index = 0;
  std::string symbol;
  std::vector<SourceSpan> spans;
  DefKind def_kind = DefKind::Local;
  std::string detail;
};

struct RequestItem {
  std::string scope;
  std::string source;  // TaggedSnippet::model_input()
  std::vector<RequestTag> tags;
};

struct RawPrediction {
  int index = 0;
  std::string type_name;
  double confidence = 1.0;
};

struct ItemResult {
  std::string scope;
  std::vector<RawPrediction> predictions;
};

class InferenceBackend {
 public:
  virtual ~InferenceBackend() = default;
  virtual BackendContract contract() = 0;
  // One result per item, in item order.
  virtual std::vector<ItemResult> infer_batch(const std::vector<RequestItem>& items) = 0;
};

struct LexiconRule {
  std::string pattern;
  std::regex regex;
  std::string type_name;
  double confidence = 1.0;
};

struct Lexicon {
  std::map<std::string, std::pair<std::string, double>> literals;
  std::vector<LexiconRule> names;
  std::vector<LexiconRule> callees;

  // Throws LexiconError.
  static Lexicon parse(std::string_view json_text);
  static Lexicon standard();
};

// Rules in order: `new C` definition, literal kind, symbol name pattern,
// callee pattern of a call-result definition. First match wins.
class HeuristicBackend : public InferenceBackend {
 public:
  explicit HeuristicBackend(Lexicon lexicon = Lexicon::standard());
  BackendContract contract() override;
  std::vector<ItemResult> infer_batch(const std::vector<RequestItem>& items) override;
  std::optional<RawPrediction> predict(const RequestTag& tag) const;

 private:
  Lexicon lexicon_;
};

struct RemoteOptions {
  int connect_timeout_ms = 2000;
  int read_timeout_ms = 30000;
};

// Talks to an HTTP server speaking the /infer protocol. Throws
// BackendUnavailable on transport errors and non-2xx replies.
std::unique_ptr<InferenceBackend> make_remote_backend(const std::string& base_url, RemoteOptions options = {});

Json request_to_json(const std::vector<RequestItem>& items);
std::vector<RequestItem> request_from_json(const Json& j);
Json results_to_json(const std::vector<ItemResult>& results);
// Generation strings are parsed through parse_generation. Throws MalformedOutput.
std::vector<ItemResult> results_from_json(const Json& j, int batch_id = -1);
Json contract_to_json(const BackendContract& c, const std::string& model);
BackendContract contract_from_json(const Json& j);

enum class ValidationPolicy { Strict, AcceptUnknown, Off };

std::string_view to_string(ValidationPolicy p);
ValidationPolicy validation_policy_from_string(std::string_view s);

const std::set<std::string, std::less<>>& default_drop_set();

struct InferenceOptions {
  int token_budget = 512;
  int in_flight = 4;
  ValidationPolicy policy = ValidationPolicy::AcceptUnknown;
  std::set<std::string, std::less<>> drop_set = default_drop_set();
  const DeclarationRegistry* registry = nullptr;  // builtins when null
  bool skip_typed = true;                         // leave already-typed targets alone
};

struct InferencePrediction {
  std::string scope;
  int tag_index = 0;
  std::string symbol;
  std::string type_name;
  double confidence = 1.0;
  SourceSpan span;  // slice target span
  std::string validation = "Off";  // Consistent, UnknownType or Off
  std::string reason;              // rejection reason
};

struct InferenceOutcome {
  std::vector<InferencePrediction> accepted;  // one per (scope, symbol)
  std::vector<InferencePrediction> rejected;
  std::vector<InferencePrediction> raw;       // every mapped backend prediction
  int backend_calls = 0;
};

// Renders, batches, maps back, filters, validates and greedily selects.
InferenceOutcome infer(const std::vector<ProgramUsageSlice>& groups, InferenceBackend& backend,
                       const InferenceOptions& options = {});

// Highest confidence per (scope, symbol); ties go to the lowest tag index.
std::vector<InferencePrediction> select_greedy(const std::vector<InferencePrediction>& predictions);

Json predictions_to_json(const InferenceOutcome& outcome);
InferenceOutcome predictions_from_json(const Json& j);

}  // namespace typeslice
