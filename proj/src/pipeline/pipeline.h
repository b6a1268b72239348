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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "common/json.h"
#include "dataflow/dataflow.h"
#include "declarations/declarations.h"
#include "graph/graph.h"
#include "graph/builtin_types.h"
#include "inference/inference.h"
#include "propagation/propagation.h"
#include "slicing/slices.h"

namespace typeslice {

enum class Stage { Graph, Propagate, Slice, Infer, Repropagate, Query };

std::string_view to_string(Stage s);
Stage stage_from_string(std::string_view s);

struct PipelineConfig {
  std::vector<std::string> inputs;
  std::string backend = "heuristic";  // "heuristic" or "remote"
  std::string backend_url;
  std::string lexicon;  // path; the embedded lexicon when empty
  int iterations = kDefaultIterations;
  std::vector<std::string> declarations;
  ValidationPolicy policy = ValidationPolicy::AcceptUnknown;
  std::optional<std::vector<std::string>> drop_set;
  int token_budget = 512;
  int in_flight = 4;
  // Artifacts of every stage are written here; --from-stage reads them back.
  std::string artifacts;
  Stage from_stage = Stage::Graph;
  std::optional<TaintQuery> query;
};

// Throws FormatError or std::invalid_argument.
PipelineConfig pipeline_config_from_json(const Json& j);
TaintQuery taint_query_from_json(const Json& j);

struct PipelineResult {
  int exit_code = 0;  // 0 clean, 2 statements skipped by the parser
  std::vector<std::string> stages;
  Json summary;
};

using StageLogger = std::function<void(const std::string&)>;

// Runs the stages in order from config.from_stage. Module errors propagate
// as exceptions.
PipelineResult run_pipeline(const PipelineConfig& config, const StageLogger& log = {});

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

DeclarationRegistry load_registry(const std::vector<std::string>& paths);
std::unique_ptr<InferenceBackend> make_backend(const std::string& kind, const std::string& url,
                                               const std::string& lexicon_path);

// Verdict per suggestion, matched to its slice by scope, symbol and span.
Json validate_suggestions(const std::vector<FileSlices>& files, const InferenceOutcome& suggestions,
                          const DeclarationRegistry& registry);

std::vector<TypeAssignment> accepted_assignments(const InferenceOutcome& outcome);

}  // namespace typeslice
