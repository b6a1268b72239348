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

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::ordered_json;

struct Failure : std::runtime_error {
  Failure(ts_status s, const std::string& message) : std::runtime_error(message), status(s) {}
  ts_status status;
};

void check(ts_status s) {
  if (s != TS_OK) throw Failure(s, ts_last_error());
}

std::string take(char* s) {
  std::string out = s ? s : "";
  ts_free_string(s);
  return out;
}

struct GraphDeleter {
  void operator()(ts_graph* g) const { ts_graph_free(g); }
};
struct RegistryDeleter {
  void operator()(ts_registry* r) const { ts_registry_free(r); }
};
struct BackendDeleter {
  void operator()(ts_backend* b) const { ts_backend_free(b); }
};
using GraphPtr = std::unique_ptr<ts_graph, GraphDeleter>;
using RegistryPtr = std::unique_ptr<ts_registry, RegistryDeleter>;
using BackendPtr = std::unique_ptr<ts_backend, BackendDeleter>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(TS_IO, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Failure(TS_IO, "cannot write '" + out_path + "'");
  out << text << "\n";
}

GraphPtr build(const std::string& path) {
  std::string source = read_file(path);
  ts_graph* g = nullptr;
  check(ts_graph_build(path.c_str(), source.data(), source.size(), &g));
  return GraphPtr(g);
}

int skipped(const ts_graph* g) {
  int n = 0;
  check(ts_graph_skipped_statements(g, &n));
  return n;
}

std::vector<GraphPtr> load_graphs(const std::string& path) {
  Json j = Json::parse(read_file(path));
  std::vector<GraphPtr> out;
  auto add = [&](const Json& one) {
    ts_graph* g = nullptr;
    check(ts_graph_from_json(one.dump().c_str(), &g));
    out.emplace_back(g);
  };
  if (j.is_array()) {
    for (const Json& one : j) add(one);
  } else {
    add(j);
  }
  return out;
}

RegistryPtr registry_from(const std::vector<std::string>& decls) {
  ts_registry* r = nullptr;
  check(ts_registry_new(&r));
  RegistryPtr registry(r);
  for (const std::string& path : decls) check(ts_registry_load_file(registry.get(), path.c_str()));
  return registry;
}

struct BackendChoice {
  std::vector<std::string> backend_args;  // "heuristic" or "remote" [URL]
  std::string lexicon;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--backend", backend_args, "heuristic, or remote followed by the server URL")->expected(1, 2);
    cmd->add_option("--lexicon", lexicon, "Lexicon JSON for the heuristic backend");
  }

  // Kind and URL after applying TYPESLICE_BACKEND_URL.
  std::pair<std::string, std::string> resolve() const {
    const char* env = std::getenv("TYPESLICE_BACKEND_URL");
    if (backend_args.empty()) {
      if (env && *env) return {"remote", env};
      return {"heuristic", ""};
    }
    if (backend_args[0] == "heuristic") return {"heuristic", ""};
    if (backend_args[0] != "remote") throw Failure(TS_INVALID_ARGUMENT, "unknown backend '" + backend_args[0] + "'");
    if (backend_args.size() > 1) return {"remote", backend_args[1]};
    if (env && *env) return {"remote", env};
    throw Failure(TS_INVALID_ARGUMENT, "remote backend needs a URL");
  }

  BackendPtr make() const {
    auto [kind, url] = resolve();
    ts_backend* b = nullptr;
    if (kind == "remote") {
      check(ts_backend_remote(url.c_str(), &b));
    } else {
      std::string lex = lexicon.empty() ? "" : read_file(lexicon);
      check(ts_backend_heuristic(lexicon.empty() ? nullptr : lex.c_str(), &b));
    }
    return BackendPtr(b);
  }
};

int default_budget() {
  const char* env = std::getenv("TYPESLICE_TOKEN_BUDGET");
  if (!env || !*env) return 512;
  try {
    return std::stoi(env);
  } catch (const std::exception&) {
    throw Failure(TS_INVALID_ARGUMENT, "TYPESLICE_TOKEN_BUDGET is not a number");
  }
}

std::vector<std::string> split_commas(const std::vector<std::string>& values) {
  std::vector<std::string> out;
  for (const std::string& v : values) {
    std::stringstream ss(v);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

struct QueryOptions {
  std::vector<std::string> source_types;
  std::string source_member;
  std::string sink;
  std::vector<int> sink_args;
  std::vector<std::string> sanitizers;

  void add_to(CLI::App* cmd, bool required) {
    auto* types = cmd->add_option("--source-types", source_types, "Comma-separated source types");
    cmd->add_option("--source-member", source_member, "Seed only reads of this member");
    auto* sink_opt = cmd->add_option("--sink", sink, "Glob over the sink call's full name");
    cmd->add_option("--sink-arg", sink_args, "Argument positions to check (0 = receiver)");
    cmd->add_option("--sanitizer", sanitizers, "Callee names whose result is clean");
    if (required) {
      types->required();
      sink_opt->required();
    }
  }

  bool given() const { return !source_types.empty() || !sink.empty(); }

  Json to_json() const {
    Json q{{"sourceTypes", split_commas(source_types)}, {"sink", sink}, {"sinkArgs", sink_args},
           {"sanitizers", sanitizers}};
    q["sourceMember"] = source_member.empty() ? Json(nullptr) : Json(source_member);
    return q;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"typeslice: usage slicing, type recovery and taint queries for ECMAScript"};
  app.require_subcommand(0, 1);
  bool show_version = false;
  app.add_flag("--version", show_version, "Print library and schema versions");

  // parse
  std::vector<std::string> parse_files;
  std::string dump_ast;
  std::string parse_out;
  auto* parse_cmd = app.add_subcommand("parse", "Parse files and report diagnostics");
  parse_cmd->add_option("files", parse_files)->required()->check(CLI::ExistingFile);
  parse_cmd->add_option("--dump-ast", dump_ast, "Dump the AST in this format")->check(CLI::IsMember({"json"}));
  parse_cmd->add_option("--out", parse_out);

  // graph
  std::string graph_file;
  std::string graph_out;
  auto* graph_cmd = app.add_subcommand("graph", "Build the code property graph of a file");
  graph_cmd->add_option("file", graph_file)->required()->check(CLI::ExistingFile);
  graph_cmd->add_option("--out", graph_out);

  // propagate
  std::vector<std::string> prop_files;
  int prop_iterations = 2;
  std::string dump_typemap;
  std::string prop_out;
  auto* prop_cmd = app.add_subcommand("propagate", "Run flow-insensitive type propagation");
  prop_cmd->add_option("files", prop_files)->required()->check(CLI::ExistingFile);
  prop_cmd->add_option("--iterations", prop_iterations)->check(CLI::PositiveNumber);
  prop_cmd->add_option("--dump-typemap", dump_typemap, "Print the type map in this format")
      ->check(CLI::IsMember({"json"}));
  prop_cmd->add_option("--out", prop_out, "Write the propagated graphs");

  // slice
  std::vector<std::string> slice_files;
  int slice_iterations = 2;
  bool no_propagate = false;
  std::string slice_out;
  auto* slice_cmd = app.add_subcommand("slice", "Extract usage slices (after propagation)");
  slice_cmd->add_option("files", slice_files)->required()->check(CLI::ExistingFile);
  slice_cmd->add_option("--iterations", slice_iterations)->check(CLI::PositiveNumber);
  slice_cmd->add_flag("--no-propagate", no_propagate, "Slice the untyped graph");
  slice_cmd->add_option("--out", slice_out);

  // infer
  BackendChoice infer_backend;
  std::string infer_slices;
  std::vector<std::string> infer_decls;
  bool no_validate = false;
  std::string infer_policy = "accept-unknown";
  int infer_budget = 0;
  int infer_in_flight = 4;
  std::string infer_out;
  auto* infer_cmd = app.add_subcommand("infer", "Predict types for sliced variables");
  infer_backend.add_to(infer_cmd);
  infer_cmd->add_option("--slices", infer_slices)->required()->check(CLI::ExistingFile);
  infer_cmd->add_option("--decls", infer_decls)->check(CLI::ExistingFile);
  infer_cmd->add_flag("--no-validate", no_validate);
  infer_cmd->add_option("--policy", infer_policy)->check(CLI::IsMember({"strict", "accept-unknown", "off"}));
  infer_cmd->add_option("--budget", infer_budget, "Input token budget")->check(CLI::Range(16, 1 << 20));
  infer_cmd->add_option("--in-flight", infer_in_flight)->check(CLI::PositiveNumber);
  infer_cmd->add_option("--out", infer_out);

  // validate
  std::vector<std::string> val_decls;
  std::string val_slices;
  std::string val_suggestions;
  std::string val_out;
  auto* val_cmd = app.add_subcommand("validate", "Check suggestions against declarations");
  val_cmd->add_option("--decls", val_decls)->check(CLI::ExistingFile);
  val_cmd->add_option("--slices", val_slices)->required()->check(CLI::ExistingFile);
  val_cmd->add_option("--suggestions", val_suggestions)->required()->check(CLI::ExistingFile);
  val_cmd->add_option("--out", val_out);

  // query
  std::string query_graph;
  QueryOptions query;
  std::string query_out;
  auto* query_cmd = app.add_subcommand("query", "Find source-to-sink taint flows");
  query_cmd->add_option("--graph", query_graph)->required()->check(CLI::ExistingFile);
  query.add_to(query_cmd, true);
  query_cmd->add_option("--out", query_out);

  // eval
  std::string eval_corpus;
  BackendChoice eval_backend;
  std::string eval_mode = "greedy";
  std::string eval_report;
  int eval_budget = 0;
  auto* eval_cmd = app.add_subcommand("eval", "Score a backend on an annotated corpus");
  eval_cmd->add_option("--corpus", eval_corpus)->required()->check(CLI::ExistingDirectory);
  eval_backend.add_to(eval_cmd);
  eval_cmd->add_option("--mode", eval_mode)->check(CLI::IsMember({"greedy", "exact"}));
  eval_cmd->add_option("--budget", eval_budget)->check(CLI::Range(16, 1 << 20));
  eval_cmd->add_option("--report", eval_report);

  // pipeline
  std::vector<std::string> pipe_files;
  BackendChoice pipe_backend;
  std::vector<std::string> pipe_decls;
  int pipe_iterations = 2;
  std::string pipe_policy = "accept-unknown";
  std::vector<std::string> pipe_drop;
  int pipe_budget = 0;
  int pipe_in_flight = 4;
  std::string pipe_artifacts;
  std::string pipe_from = "graph";
  std::string pipe_summary;
  QueryOptions pipe_query;
  auto* pipe_cmd = app.add_subcommand("pipeline", "Run every stage: graph to query");
  pipe_cmd->add_option("files", pipe_files)->check(CLI::ExistingFile);
  pipe_backend.add_to(pipe_cmd);
  pipe_cmd->add_option("--decls", pipe_decls)->check(CLI::ExistingFile);
  pipe_cmd->add_option("--iterations", pipe_iterations)->check(CLI::PositiveNumber);
  pipe_cmd->add_option("--policy", pipe_policy)->check(CLI::IsMember({"strict", "accept-unknown", "off"}));
  pipe_cmd->add_option("--drop", pipe_drop, "Replace the set of dropped prediction types");
  pipe_cmd->add_option("--budget", pipe_budget)->check(CLI::Range(16, 1 << 20));
  pipe_cmd->add_option("--in-flight", pipe_in_flight)->check(CLI::PositiveNumber);
  pipe_cmd->add_option("--artifacts", pipe_artifacts, "Directory for per-stage artifacts");
  pipe_cmd->add_option("--from-stage", pipe_from)
      ->check(CLI::IsMember({"graph", "propagate", "slice", "infer", "repropagate", "query"}));
  pipe_cmd->add_option("--summary", pipe_summary);
  pipe_query.add_to(pipe_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (show_version) {
      std::cout << ts_version() << "\n";
      return 0;
    }
    if (parse_cmd->parsed()) {
      Json files = Json::array();
      int issues = 0;
      for (const std::string& path : parse_files) {
        std::string source = read_file(path);
        char* out = nullptr;
        check(ts_parse(source.data(), source.size(), &out));
        Json r = Json::parse(take(out));
        for (const Json& d : r["diagnostics"]) issues += d["kind"] == "skipped-statement";
        Json entry{{"file", path}};
        if (!dump_ast.empty()) entry["ast"] = r["ast"];
        entry["diagnostics"] = r["diagnostics"];
        files.push_back(std::move(entry));
      }
      emit(parse_out, files.dump(1));
      return issues ? 2 : 0;
    }
    if (graph_cmd->parsed()) {
      GraphPtr g = build(graph_file);
      char* out = nullptr;
      check(ts_graph_to_json(g.get(), &out));
      emit(graph_out, Json::parse(take(out)).dump(1));
      return skipped(g.get()) ? 2 : 0;
    }
    if (prop_cmd->parsed()) {
      Json typemaps = Json::object();
      Json graphs = Json::array();
      int issues = 0;
      for (const std::string& path : prop_files) {
        GraphPtr g = build(path);
        issues += skipped(g.get());
        char* map = nullptr;
        check(ts_propagate(g.get(), prop_iterations, &map, nullptr));
        typemaps[path] = Json::parse(take(map));
        char* out = nullptr;
        check(ts_graph_to_json(g.get(), &out));
        graphs.push_back(Json::parse(take(out)));
      }
      if (!prop_out.empty()) emit(prop_out, graphs.dump(1));
      if (!dump_typemap.empty() || prop_out.empty()) std::cout << typemaps.dump(1) << "\n";
      return issues ? 2 : 0;
    }
    if (slice_cmd->parsed()) {
      Json files = Json::array();
      int issues = 0;
      for (const std::string& path : slice_files) {
        GraphPtr g = build(path);
        issues += skipped(g.get());
        if (!no_propagate) check(ts_propagate(g.get(), slice_iterations, nullptr, nullptr));
        char* out = nullptr;
        check(ts_slice(g.get(), &out));
        files.push_back(Json::parse(take(out)));
      }
      emit(slice_out, (files.size() == 1 ? files[0] : files).dump(1));
      return issues ? 2 : 0;
    }
    if (infer_cmd->parsed()) {
      BackendPtr backend = infer_backend.make();
      RegistryPtr registry = registry_from(infer_decls);
      Json options{{"tokenBudget", infer_budget ? infer_budget : default_budget()},
                   {"inFlight", infer_in_flight},
                   {"validation", no_validate ? std::string("off") : infer_policy}};
      std::string slices = read_file(infer_slices);
      char* out = nullptr;
      check(ts_infer(backend.get(), slices.c_str(), registry.get(), options.dump().c_str(), &out));
      emit(infer_out, Json::parse(take(out)).dump(1));
      return 0;
    }
    if (val_cmd->parsed()) {
      RegistryPtr registry = registry_from(val_decls);
      std::string slices = read_file(val_slices);
      std::string suggestions = read_file(val_suggestions);
      char* out = nullptr;
      check(ts_validate(registry.get(), slices.c_str(), suggestions.c_str(), &out));
      emit(val_out, Json::parse(take(out)).dump(1));
      return 0;
    }
    if (query_cmd->parsed()) {
      std::string q = query.to_json().dump();
      Json reports = Json::array();
      for (GraphPtr& g : load_graphs(query_graph)) {
        char* out = nullptr;
        check(ts_query(g.get(), q.c_str(), &out));
        reports.push_back(Json::parse(take(out)));
      }
      emit(query_out, (reports.size() == 1 ? reports[0] : reports).dump(1));
      return 0;
    }
    if (eval_cmd->parsed()) {
      BackendPtr backend = eval_backend.make();
      Json options{{"mode", eval_mode}, {"tokenBudget", eval_budget ? eval_budget : default_budget()}};
      char* out = nullptr;
      check(ts_eval_corpus(eval_corpus.c_str(), backend.get(), options.dump().c_str(), &out));
      emit(eval_report, take(out));
      return 0;
    }
    if (pipe_cmd->parsed()) {
      auto [kind, url] = pipe_backend.resolve();
      Json config{{"inputs", pipe_files},
                  {"backend", kind},
                  {"backendUrl", url},
                  {"lexicon", pipe_backend.lexicon},
                  {"iterations", pipe_iterations},
                  {"declarations", pipe_decls},
                  {"validation", pipe_policy},
                  {"tokenBudget", pipe_budget ? pipe_budget : default_budget()},
                  {"inFlight", pipe_in_flight},
                  {"artifacts", pipe_artifacts},
                  {"fromStage", pipe_from}};
      if (!pipe_drop.empty()) config["dropSet"] = split_commas(pipe_drop);
      if (pipe_query.given()) {
        if (pipe_query.source_types.empty() || pipe_query.sink.empty()) {
          throw Failure(TS_INVALID_ARGUMENT, "a query needs --source-types and --sink");
        }
        config["query"] = pipe_query.to_json();
      }
      char* out = nullptr;
      int exit_code = 0;
      auto log = [](const char* message, void*) { std::cerr << "typeslice: " << message << "\n"; };
      check(ts_run_pipeline(config.dump().c_str(), log, nullptr, &out, &exit_code));
      emit(pipe_summary, take(out));
      return exit_code;
    }
    std::cout << app.help() << "\n";
    return 0;
  } catch (const Failure& e) {
    std::cerr << "typeslice: " << ts_status_name(e.status) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "typeslice: " << e.what() << "\n";
    return 1;
  }
}
