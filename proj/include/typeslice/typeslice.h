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

#ifndef TYPESLICE_TYPESLICE_H
#define TYPESLICE_TYPESLICE_H

#include <stddef.h>

#if defined(_WIN32)
#define TS_API __declspec(dllexport)
#else
#define TS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ts_status {
  TS_OK = 0,
  TS_INVALID_ARGUMENT = 1,
  TS_PARSE = 2,
  TS_DECL_PARSE = 3,
  TS_LEXICON = 4,
  TS_BACKEND_UNAVAILABLE = 5,
  TS_MALFORMED_OUTPUT = 6,
  TS_CONFLICT = 7,
  TS_MISMATCH = 8,
  TS_IO = 9,
  TS_FORMAT = 10,
  TS_INTERNAL = 11
} ts_status;

typedef enum ts_decl_format { TS_DECL_DTS = 0, TS_DECL_JSON_STUB = 1 } ts_decl_format;

typedef struct ts_graph ts_graph;
typedef struct ts_registry ts_registry;
typedef struct ts_backend ts_backend;

/* Strings returned through out-parameters are owned by the caller and must
   be released with ts_free_string. */
TS_API void ts_free_string(char* s);

/* Message of the last failure on the calling thread; empty when none. */
TS_API const char* ts_last_error(void);
TS_API const char* ts_status_name(ts_status status);

/* JSON object with the library version and artifact schema versions. */
TS_API const char* ts_version(void);

/* {"ast": ..., "diagnostics": [...]} */
TS_API ts_status ts_parse(const char* source, size_t length, char** json_out);
/* Grammar of the accepted language subset. */
TS_API ts_status ts_supported_subset(char** json_out);

TS_API ts_status ts_graph_build(const char* file_name, const char* source, size_t length, ts_graph** out);
TS_API ts_status ts_graph_from_json(const char* json, ts_graph** out);
TS_API ts_status ts_graph_to_json(const ts_graph* graph, char** json_out);
TS_API ts_status ts_graph_copy(const ts_graph* graph, ts_graph** out);
TS_API ts_status ts_graph_typed_ratio(const ts_graph* graph, double* out);
/* Number of statements the parser skipped as outside the subset. */
TS_API ts_status ts_graph_skipped_statements(const ts_graph* graph, int* out);
TS_API void ts_graph_free(ts_graph* graph);

/* Writes singleton types into the graph; typemap_out and hints_out may be NULL. */
TS_API ts_status ts_propagate(ts_graph* graph, int iterations, char** typemap_out, char** hints_out);
/* Slice JSON of one file. */
TS_API ts_status ts_slice(const ts_graph* graph, char** json_out);
/* Accepted predictions (predictions JSON) are written back and propagated. */
TS_API ts_status ts_repropagate(ts_graph* graph, const char* predictions_json, int iterations, int* changed_out);
/* query_json: {"sourceTypes": [...], "sourceMember": s?, "sink": glob, "sinkArgs": [...]?, "sanitizers": [...]?} */
TS_API ts_status ts_query(const ts_graph* graph, const char* query_json, char** json_out);
TS_API ts_status ts_coverage(const ts_graph* const* before, const ts_graph* const* after, size_t count,
                             char** json_out);

/* Registry preloaded with the builtin declarations. */
TS_API ts_status ts_registry_new(ts_registry** out);
TS_API ts_status ts_registry_load(ts_registry* registry, const char* source, size_t length, ts_decl_format format);
TS_API ts_status ts_registry_load_file(ts_registry* registry, const char* path);
TS_API void ts_registry_free(ts_registry* registry);
/* Parsed declarations as the JSON stub format. */
TS_API ts_status ts_declarations_to_json(const char* source, size_t length, ts_decl_format format, char** json_out);

/* lexicon_json may be NULL for the built-in lexicon. */
TS_API ts_status ts_backend_heuristic(const char* lexicon_json, ts_backend** out);
TS_API ts_status ts_backend_remote(const char* base_url, ts_backend** out);
TS_API void ts_backend_free(ts_backend* backend);

/* slices_json: one file object or an array of them. registry may be NULL.
   options_json may be NULL: {"tokenBudget", "inFlight", "validation", "dropSet", "skipTyped"}. */
TS_API ts_status ts_infer(ts_backend* backend, const char* slices_json, const ts_registry* registry,
                          const char* options_json, char** json_out);
TS_API ts_status ts_validate(const ts_registry* registry, const char* slices_json, const char* predictions_json,
                             char** json_out);

/* options_json may be NULL: {"mode": "greedy"|"exact", "tokenBudget": n}. */
TS_API ts_status ts_eval_corpus(const char* directory, ts_backend* backend, const char* options_json,
                                char** json_out);

/* Runs the staged pipeline; exit_code_out receives 0, or 2 when the parser
   skipped statements. log is called once per stage and may be NULL. */
typedef void (*ts_log_fn)(const char* message, void* user);
TS_API ts_status ts_run_pipeline(const char* config_json, ts_log_fn log, void* user, char** summary_out,
                                 int* exit_code_out);

#ifdef __cplusplus
}
#endif

#endif
