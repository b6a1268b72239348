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

#include <doctest.h>
#include <json.hpp>

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <typeslice/typeslice.h>

using Json = nlohmann::json;

namespace {

std::string fixture(const std::string& rel) {
  std::ifstream in(std::string(TYPESLICE_FIXTURES) + "/" + rel, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Takes ownership of a library string and parses it.
Json take(char* s) {
  REQUIRE(s);
  Json j = Json::parse(s);
  ts_free_string(s);
  return j;
}

ts_graph* build(const std::string& file, const std::string& src) {
  ts_graph* g = nullptr;
  REQUIRE(ts_graph_build(file.c_str(), src.data(), src.size(), &g) == TS_OK);
  REQUIRE(g);
  return g;
}

const char* kHandlerQuery =
    R"({"sourceTypes": ["NextApiRequest"], "sourceMember": "body", "sink": "*query", "sinkArgs": [1]})";

}  // namespace

TEST_CASE("version and status names") {
  Json v = Json::parse(ts_version());
  CHECK(v["typeslice"].is_string());
  CHECK(v["inferProtocol"] == 1);
  CHECK(std::string(ts_status_name(TS_OK)) == "ok");
  CHECK(std::string(ts_status_name(TS_BACKEND_UNAVAILABLE)) == "backend-unavailable");
  CHECK(std::string(ts_status_name(static_cast<ts_status>(99))) == "unknown");
  ts_free_string(nullptr);
  char* subset = nullptr;
  REQUIRE(ts_supported_subset(&subset) == TS_OK);
  CHECK_FALSE(take(subset).empty());
}

TEST_CASE("parse") {
  std::string src = "let a = 1;";
  char* out = nullptr;
  REQUIRE(ts_parse(src.data(), src.size(), &out) == TS_OK);
  Json j = take(out);
  CHECK(j.contains("ast"));
  CHECK(j["diagnostics"].empty());

  std::string bad = "let x = \"abc";
  out = nullptr;
  CHECK(ts_parse(bad.data(), bad.size(), &out) == TS_PARSE);
  CHECK(out == nullptr);
  CHECK(std::string(ts_last_error()).find("unterminated") != std::string::npos);
  CHECK(ts_parse(nullptr, 0, &out) == TS_INVALID_ARGUMENT);
  CHECK(ts_parse(src.data(), src.size(), nullptr) == TS_INVALID_ARGUMENT);

  std::string skipped = "class A {}\nlet a = 1;";
  ts_graph* g = build("s.ts", skipped);
  int n = -1;
  REQUIRE(ts_graph_skipped_statements(g, &n) == TS_OK);
  CHECK(n == 1);
  ts_graph_free(g);
}

TEST_CASE("handler example through the C API") {
  ts_graph* g = build("handler.js", fixture("handler/handler.js"));
  double ratio = -1;
  REQUIRE(ts_graph_typed_ratio(g, &ratio) == TS_OK);
  CHECK(ratio == 0.0);

  char* typemap = nullptr;
  REQUIRE(ts_propagate(g, 2, &typemap, nullptr) == TS_OK);
  CHECK(take(typemap).is_object());
  ts_graph* before = nullptr;
  REQUIRE(ts_graph_copy(g, &before) == TS_OK);

  char* slices = nullptr;
  REQUIRE(ts_slice(g, &slices) == TS_OK);
  std::string slices_json = slices;
  ts_free_string(slices);
  CHECK(Json::parse(slices_json)["slices"].size() == 3);

  char* flows = nullptr;
  REQUIRE(ts_query(g, kHandlerQuery, &flows) == TS_OK);
  CHECK(take(flows)["flows"].empty());

  ts_backend* backend = nullptr;
  REQUIRE(ts_backend_heuristic(nullptr, &backend) == TS_OK);
  char* predictions = nullptr;
  REQUIRE(ts_infer(backend, slices_json.c_str(), nullptr, nullptr, &predictions) == TS_OK);
  std::string predictions_json = predictions;
  ts_free_string(predictions);
  CHECK_FALSE(Json::parse(predictions_json)["predictions"].empty());

  int changed = 0;
  REQUIRE(ts_repropagate(g, predictions_json.c_str(), 2, &changed) == TS_OK);
  CHECK(changed > 0);
  flows = nullptr;
  REQUIRE(ts_query(g, kHandlerQuery, &flows) == TS_OK);
  CHECK(take(flows)["flows"].size() == 1);

  const ts_graph* b[] = {before};
  const ts_graph* a[] = {g};
  char* coverage = nullptr;
  REQUIRE(ts_coverage(b, a, 1, &coverage) == TS_OK);
  CHECK(take(coverage)["aggregate"]["delta"].get<double>() > 0.0);

  ts_registry* registry = nullptr;
  REQUIRE(ts_registry_new(&registry) == TS_OK);
  std::string decls = fixture("handler/handler.d.ts");
  REQUIRE(ts_registry_load(registry, decls.data(), decls.size(), TS_DECL_DTS) == TS_OK);
  char* verdicts = nullptr;
  REQUIRE(ts_validate(registry, slices_json.c_str(), predictions_json.c_str(), &verdicts) == TS_OK);
  CHECK_FALSE(take(verdicts)["verdicts"].empty());

  char* graph_json = nullptr;
  REQUIRE(ts_graph_to_json(g, &graph_json) == TS_OK);
  ts_graph* back = nullptr;
  REQUIRE(ts_graph_from_json(graph_json, &back) == TS_OK);
  char* again = nullptr;
  REQUIRE(ts_graph_to_json(back, &again) == TS_OK);
  CHECK(std::strcmp(graph_json, again) == 0);
  ts_free_string(graph_json);
  ts_free_string(again);

  ts_graph_free(back);
  ts_registry_free(registry);
  ts_backend_free(backend);
  ts_graph_free(before);
  ts_graph_free(g);
}

TEST_CASE("error statuses") {
  ts_graph* g = nullptr;
  CHECK(ts_graph_from_json("{\"nodes\": 3}", &g) == TS_FORMAT);
  CHECK(ts_graph_from_json("{", &g) == TS_FORMAT);
  CHECK(g == nullptr);

  ts_registry* registry = nullptr;
  REQUIRE(ts_registry_new(&registry) == TS_OK);
  std::string bad_decls = "interface X { f(: number; }";
  CHECK(ts_registry_load(registry, bad_decls.data(), bad_decls.size(), TS_DECL_DTS) == TS_DECL_PARSE);
  CHECK(ts_registry_load_file(registry, "/nonexistent/x.d.ts") == TS_IO);
  ts_registry_free(registry);

  ts_backend* backend = nullptr;
  CHECK(ts_backend_heuristic("{\"names\": [{\"pattern\": \"(\"}]}", &backend) == TS_LEXICON);
  CHECK(ts_backend_remote("not a url", &backend) == TS_BACKEND_UNAVAILABLE);

  ts_graph* x = build("a.js", "f(1);");
  ts_graph* y = build("a.js", "f(1, 2);");
  const ts_graph* b[] = {x};
  const ts_graph* a[] = {y};
  char* out = nullptr;
  CHECK(ts_coverage(b, a, 1, &out) == TS_MISMATCH);
  CHECK(ts_query(x, "{\"sourceTypes\": []}", &out) != TS_OK);
  ts_graph_free(x);
  ts_graph_free(y);

  std::string annotated = "let x: string = load();\nx.trim();\n";
  ts_graph* t = build("t.ts", annotated);
  char* slices = nullptr;
  REQUIRE(ts_slice(t, &slices) == TS_OK);
  Json target = take(slices)["slices"][0]["targets"][0];
  Json predictions = {{"predictions",
                       Json::array({{{"scope", "t.ts::program"},
                                     {"symbol", "x"},
                                     {"type", "number"},
                                     {"span", target["span"]}}})}};
  int changed = 0;
  CHECK(ts_repropagate(t, predictions.dump().c_str(), 2, &changed) == TS_CONFLICT);
  CHECK(std::string(ts_last_error()).find("conflicts") != std::string::npos);
  ts_graph_free(t);
}

TEST_CASE("declarations as JSON stubs") {
  std::string decls = "declare class A extends B { f(x): C }";
  char* out = nullptr;
  REQUIRE(ts_declarations_to_json(decls.data(), decls.size(), TS_DECL_DTS, &out) == TS_OK);
  Json j = take(out);
  REQUIRE(j["types"].size() == 1);
  CHECK(j["types"][0]["methods"][0]["minArity"] == 1);
  CHECK(j["types"][0]["extends"] == Json::array({"B"}));
}

TEST_CASE("corpus evaluation and pipeline") {
  ts_backend* backend = nullptr;
  REQUIRE(ts_backend_heuristic(nullptr, &backend) == TS_OK);
  std::string corpus = std::string(TYPESLICE_FIXTURES) + "/corpus";
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(ts_eval_corpus(corpus.c_str(), backend, nullptr, &a) == TS_OK);
  REQUIRE(ts_eval_corpus(corpus.c_str(), backend, "{\"mode\": \"greedy\"}", &b) == TS_OK);
  CHECK(std::strcmp(a, b) == 0);
  CHECK(Json::parse(a)["categories"]["overall"]["evaluated"].get<int>() > 0);
  ts_free_string(a);
  ts_free_string(b);
  char* c = nullptr;
  CHECK(ts_eval_corpus(corpus.c_str(), backend, "{\"mode\": \"fuzzy\"}", &c) == TS_INVALID_ARGUMENT);
  ts_backend_free(backend);

  Json config = {{"inputs", {std::string(TYPESLICE_FIXTURES) + "/handler/handler.js"}},
                 {"query", Json::parse(kHandlerQuery)}};
  std::vector<std::string> logged;
  auto log = [](const char* message, void* user) { static_cast<std::vector<std::string>*>(user)->push_back(message); };
  char* summary = nullptr;
  int exit_code = -1;
  REQUIRE(ts_run_pipeline(config.dump().c_str(), log, &logged, &summary, &exit_code) == TS_OK);
  CHECK(exit_code == 0);
  CHECK(logged.size() == 6);
  CHECK(take(summary)["flowCount"] == 1);
  CHECK(ts_run_pipeline("{\"inputs\": []}", nullptr, nullptr, &summary, &exit_code) == TS_INVALID_ARGUMENT);
}
