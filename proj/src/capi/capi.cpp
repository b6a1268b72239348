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

#include <typeslice/typeslice.h>

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "common/errors.h"
#include "dataflow/dataflow.h"
#include "declarations/declarations.h"
#include "evaluation/evaluation.h"
#include "frontend/parser.h"
#include "graph/builder.h"
#include "inference/inference.h"
#include "pipeline/pipeline.h"
#include "propagation/propagation.h"
#include "slicing/slices.h"

struct ts_graph {
  typeslice::Graph graph;
};

struct ts_registry {
  typeslice::DeclarationRegistry registry;
};

struct ts_backend {
  std::unique_ptr<typeslice::InferenceBackend> backend;
};

namespace {

using namespace typeslice;

thread_local std::string last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ts_status fail(ts_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <typename Fn>
ts_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return TS_OK;
  } catch (const ParseError& e) {
    return fail(TS_PARSE, e.what());
  } catch (const DeclParseError& e) {
    return fail(TS_DECL_PARSE, e.what());
  } catch (const LexiconError& e) {
    return fail(TS_LEXICON, e.what());
  } catch (const BackendUnavailable& e) {
    return fail(TS_BACKEND_UNAVAILABLE, e.what());
  } catch (const MalformedOutput& e) {
    return fail(TS_MALFORMED_OUTPUT, e.what());
  } catch (const ConflictError& e) {
    return fail(TS_CONFLICT, e.what());
  } catch (const MismatchError& e) {
    return fail(TS_MISMATCH, e.what());
  } catch (const IoError& e) {
    return fail(TS_IO, e.what());
  } catch (const FormatError& e) {
    return fail(TS_FORMAT, e.what());
  } catch (const Json::exception& e) {
    return fail(TS_FORMAT, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(TS_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(TS_INTERNAL, e.what());
  } catch (...) {
    return fail(TS_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string(what) + " must not be null");
}

Json parse_json(const char* text, const char* what) {
  require(text != nullptr, what);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

extern "C" {

void ts_free_string(char* s) { std::free(s); }

const char* ts_last_error(void) { return last_error.c_str(); }

const char* ts_status_name(ts_status status) {
  static const char* names[] = {"ok",        "invalid-argument", "parse",    "decl-parse",
                                "lexicon",   "backend-unavailable", "malformed-output", "conflict",
                                "mismatch",  "io",               "format",   "internal"};
  int i = static_cast<int>(status);
  return i >= 0 && i <= TS_INTERNAL ? names[i] : "unknown";
}

const char* ts_version(void) {
  static const std::string v = Json{{"typeslice", TYPESLICE_VERSION},
                                    {"graphSchema", kGraphSchemaVersion},
                                    {"sliceSchema", kSliceSchemaVersion},
                                    {"inferProtocol", kProtocolVersion}}
                                   .dump();
  return v.c_str();
}

ts_status ts_parse(const char* source, size_t length, char** json_out) {
  return guarded([&] {
    require(source && json_out, "source and json_out");
    ParseResult r = parse(std::string_view(source, length));
    Json diags = Json::array();
    for (const Diagnostic& d : r.diagnostics) diags.push_back(diagnostic_to_json(d));
    *json_out = dup_string(Json{{"ast", ast_to_json(r.program)}, {"diagnostics", std::move(diags)}}.dump());
  });
}

ts_status ts_supported_subset(char** json_out) {
  return guarded([&] {
    require(json_out, "json_out");
    *json_out = dup_string(supported_subset().dump());
  });
}

ts_status ts_graph_build(const char* file_name, const char* source, size_t length, ts_graph** out) {
  return guarded([&] {
    require(file_name && source && out, "file_name, source and out");
    *out = new ts_graph{build_graph(file_name, std::string(source, length))};
  });
}

ts_status ts_graph_from_json(const char* json, ts_graph** out) {
  return guarded([&] {
    require(out, "out");
    *out = new ts_graph{graph_from_json(parse_json(json, "graph json"))};
  });
}

ts_status ts_graph_to_json(const ts_graph* graph, char** json_out) {
  return guarded([&] {
    require(graph && json_out, "graph and json_out");
    *json_out = dup_string(graph_to_json(graph->graph).dump());
  });
}

ts_status ts_graph_copy(const ts_graph* graph, ts_graph** out) {
  return guarded([&] {
    require(graph && out, "graph and out");
    *out = new ts_graph{graph->graph};
  });
}

ts_status ts_graph_typed_ratio(const ts_graph* graph, double* out) {
  return guarded([&] {
    require(graph && out, "graph and out");
    *out = typed_node_ratio(graph->graph);
  });
}

ts_status ts_graph_skipped_statements(const ts_graph* graph, int* out) {
  return guarded([&] {
    require(graph && out, "graph and out");
    int n = 0;
    for (const Diagnostic& d : graph->graph.diagnostics) n += d.kind == "skipped-statement";
    *out = n;
  });
}

void ts_graph_free(ts_graph* graph) { delete graph; }

ts_status ts_propagate(ts_graph* graph, int iterations, char** typemap_out, char** hints_out) {
  return guarded([&] {
    require(graph, "graph");
    PropagationResult r = propagate(graph->graph, iterations);
    if (typemap_out) *typemap_out = dup_string(typemap_to_json(r.map).dump());
    if (hints_out) *hints_out = dup_string(hints_to_json(r.hints).dump());
  });
}

ts_status ts_slice(const ts_graph* graph, char** json_out) {
  return guarded([&] {
    require(graph && json_out, "graph and json_out");
    const Graph& g = graph->graph;
    FileSlices f{g.file, group_program_slices(g, extract_slices(g))};
    *json_out = dup_string(file_slices_to_json(f).dump());
  });
}

ts_status ts_repropagate(ts_graph* graph, const char* predictions_json, int iterations, int* changed_out) {
  return guarded([&] {
    require(graph, "graph");
    InferenceOutcome outcome = predictions_from_json(parse_json(predictions_json, "predictions json"));
    std::vector<TypeAssignment> mine;
    for (const TypeAssignment& a : accepted_assignments(outcome)) {
      if (a.scope.rfind(graph->graph.file + "::", 0) == 0) mine.push_back(a);
    }
    int changed = repropagate_with_inferences(graph->graph, mine, iterations);
    if (changed_out) *changed_out = changed;
  });
}

ts_status ts_query(const ts_graph* graph, const char* query_json, char** json_out) {
  return guarded([&] {
    require(graph && json_out, "graph and json_out");
    TaintQuery q = taint_query_from_json(parse_json(query_json, "query json"));
    *json_out = dup_string(flows_to_json(graph->graph, run_query(graph->graph, q)).dump());
  });
}

ts_status ts_coverage(const ts_graph* const* before, const ts_graph* const* after, size_t count, char** json_out) {
  return guarded([&] {
    require(json_out && (count == 0 || (before && after)), "graphs and json_out");
    std::vector<const Graph*> b;
    std::vector<const Graph*> a;
    for (size_t i = 0; i < count; ++i) {
      require(before[i] && after[i], "graph");
      b.push_back(&before[i]->graph);
      a.push_back(&after[i]->graph);
    }
    *json_out = dup_string(coverage_to_json(typed_coverage_report(b, a)).dump());
  });
}

ts_status ts_registry_new(ts_registry** out) {
  return guarded([&] {
    require(out, "out");
    *out = new ts_registry{DeclarationRegistry::with_builtins()};
  });
}

ts_status ts_registry_load(ts_registry* registry, const char* source, size_t length, ts_decl_format format) {
  return guarded([&] {
    require(registry && source, "registry and source");
    DeclFormat f = format == TS_DECL_JSON_STUB ? DeclFormat::JsonStub : DeclFormat::DtsSubset;
    registry->registry.add(load_declarations(std::string_view(source, length), f));
  });
}

ts_status ts_registry_load_file(ts_registry* registry, const char* path) {
  return guarded([&] {
    require(registry && path, "registry and path");
    std::string p(path);
    DeclFormat f = p.size() >= 5 && p.compare(p.size() - 5, 5, ".json") == 0 ? DeclFormat::JsonStub
                                                                              : DeclFormat::DtsSubset;
    registry->registry.add(load_declarations(read_text_file(p), f));
  });
}

void ts_registry_free(ts_registry* registry) { delete registry; }

ts_status ts_declarations_to_json(const char* source, size_t length, ts_decl_format format, char** json_out) {
  return guarded([&] {
    require(source && json_out, "source and json_out");
    DeclFormat f = format == TS_DECL_JSON_STUB ? DeclFormat::JsonStub : DeclFormat::DtsSubset;
    *json_out = dup_string(declarations_to_json(load_declarations(std::string_view(source, length), f)).dump());
  });
}

ts_status ts_backend_heuristic(const char* lexicon_json, ts_backend** out) {
  return guarded([&] {
    require(out, "out");
    Lexicon lex = lexicon_json ? Lexicon::parse(lexicon_json) : Lexicon::standard();
    *out = new ts_backend{std::make_unique<HeuristicBackend>(std::move(lex))};
  });
}

ts_status ts_backend_remote(const char* base_url, ts_backend** out) {
  return guarded([&] {
    require(base_url && out, "base_url and out");
    *out = new ts_backend{make_remote_backend(base_url)};
  });
}

void ts_backend_free(ts_backend* backend) { delete backend; }

ts_status ts_infer(ts_backend* backend, const char* slices_json, const ts_registry* registry, const char* options_json,
                   char** json_out) {
  return guarded([&] {
    require(backend && json_out, "backend and json_out");
    std::vector<FileSlices> files = file_slices_from_json(parse_json(slices_json, "slices json"));
    InferenceOptions options;
    if (options_json) {
      Json o = parse_json(options_json, "options json");
      options.token_budget = o.value("tokenBudget", options.token_budget);
      options.in_flight = o.value("inFlight", options.in_flight);
      if (o.contains("validation")) options.policy = validation_policy_from_string(o["validation"].get<std::string>());
      if (o.contains("dropSet")) {
        auto drop = o["dropSet"].get<std::vector<std::string>>();
        options.drop_set = {drop.begin(), drop.end()};
      }
      options.skip_typed = o.value("skipTyped", options.skip_typed);
    }
    if (registry) options.registry = &registry->registry;
    std::vector<ProgramUsageSlice> groups;
    for (const FileSlices& f : files) groups.insert(groups.end(), f.groups.begin(), f.groups.end());
    *json_out = dup_string(predictions_to_json(infer(groups, *backend->backend, options)).dump());
  });
}

ts_status ts_validate(const ts_registry* registry, const char* slices_json, const char* predictions_json,
                      char** json_out) {
  return guarded([&] {
    require(registry && json_out, "registry and json_out");
    std::vector<FileSlices> files = file_slices_from_json(parse_json(slices_json, "slices json"));
    InferenceOutcome outcome = predictions_from_json(parse_json(predictions_json, "predictions json"));
    *json_out = dup_string(validate_suggestions(files, outcome, registry->registry).dump());
  });
}

ts_status ts_eval_corpus(const char* directory, ts_backend* backend, const char* options_json, char** json_out) {
  return guarded([&] {
    require(directory && backend && json_out, "directory, backend and json_out");
    CorpusOptions options;
    if (options_json) {
      Json o = parse_json(options_json, "options json");
      options.mode = score_mode_from_string(o.value("mode", std::string("greedy")));
      options.token_budget = o.value("tokenBudget", options.token_budget);
    }
    *json_out = dup_string(metrics_to_json(evaluate_corpus(directory, *backend->backend, options)).dump(1));
  });
}

ts_status ts_run_pipeline(const char* config_json, ts_log_fn log, void* user, char** summary_out, int* exit_code_out) {
  return guarded([&] {
    require(summary_out, "summary_out");
    PipelineConfig config = pipeline_config_from_json(parse_json(config_json, "pipeline configuration"));
    StageLogger logger;
    if (log) logger = [&](const std::string& m) { log(m.c_str(), user); };
    PipelineResult r = run_pipeline(config, logger);
    *summary_out = dup_string(r.summary.dump(1));
    if (exit_code_out) *exit_code_out = r.exit_code;
  });
}

}  // extern "C"
