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

#include <string>
#include <string_view>
#include <vector>

#include "common/json.h"
#include "common/span.h"
#include "graph/builtin_types.h"
#include "inference/inference.h"

namespace typeslice {

enum class TypeCategory { Top100Builtin, UserDefined, Other };

std::string_view to_string(TypeCategory c);

// A place where a prediction for the variable may land: a slice target.
struct TruthLocation {
  std::string scope;
  uint32_t offset = 0;  // start offset of the slice target span

  friend bool operator==(const TruthLocation&, const TruthLocation&) = default;
  friend auto operator<=>(const TruthLocation&, const TruthLocation&) = default;
};

struct GroundTruthEntry {
  std::string file;
  std::string scope;
  std::string symbol;
  SourceSpan span;  // declaration, in masked-source coordinates
  std::string true_type;
  TypeCategory category = TypeCategory::Other;
  std::vector<TruthLocation> locations;
};

inline constexpr std::string_view kMaskPlaceholder = "__OBF";

struct MaskedSource {
  std::string source;
  std::vector<GroundTruthEntry> truths;  // locations left empty
  std::vector<std::string> local_types;  // types declared in the file
};

// Deletes every type annotation and renames `new C` constructees to
// placeholders. Truths come from variable and parameter annotations, or from
// a `new C` initializer; Function/void/any truths and variables that are
// never read are dropped. Throws ParseError.
MaskedSource mask_annotations(std::string_view source, const std::string& file_name,
                              const BuiltinTypeSet& top100 = BuiltinTypeSet::standard());

TypeCategory categorize(std::string_view type_name, const std::vector<std::string>& local_types,
                        const BuiltinTypeSet& top100);

enum class ScoreMode { Greedy, ExactLocation };

std::string_view to_string(ScoreMode m);
ScoreMode score_mode_from_string(std::string_view s);

struct CategoryScore {
  int evaluated = 0;
  int correct = 0;
  int base_name_correct = 0;

  double top1() const { return evaluated ? static_cast<double>(correct) / evaluated : 0.0; }
  double base_name_top1() const { return evaluated ? static_cast<double>(base_name_correct) / evaluated : 0.0; }
};

struct EntryVerdict {
  std::string file;
  std::string scope;
  std::string symbol;
  uint32_t offset = 0;  // declaration offset, or the location offset in exact mode
  std::string true_type;
  TypeCategory category = TypeCategory::Other;
  std::string predicted;  // empty when no prediction
  double confidence = 0.0;
  bool correct = false;
  bool base_name_correct = false;
};

struct MetricsReport {
  ScoreMode mode = ScoreMode::Greedy;
  CategoryScore overall;
  CategoryScore top100;
  CategoryScore user_defined;
  CategoryScore other;
  int skipped = 0;  // any-labelled truths
  std::vector<EntryVerdict> entries;
};

// Greedy: the best prediction over all of a variable's locations decides.
// Exact: every location is scored on its own. UNK never matches.
MetricsReport score(const std::vector<InferencePrediction>& predictions, const std::vector<GroundTruthEntry>& truth,
                    ScoreMode mode);

Json metrics_to_json(const MetricsReport& report);

struct CorpusOptions {
  ScoreMode mode = ScoreMode::Greedy;
  int token_budget = 512;
  const BuiltinTypeSet* top100 = nullptr;  // standard list when null
};

// Masks, slices, infers and scores every .js/.ts file under `dir`, in path
// order. File names in the report are relative to `dir`.
MetricsReport evaluate_corpus(const std::string& dir, InferenceBackend& backend, const CorpusOptions& options = {});

}  // namespace typeslice
