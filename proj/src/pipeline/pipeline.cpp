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
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "common/errors.h"
#include "graph/builder.h"
#include "pipeline/pipeline.h"
#include "propagation/propagation.h"

namespace typeslice {

namespace {

constexpr std::string_view kStages[] = {"graph", "propagate", "slice", "infer", "repropagate", "query"};

template <typename T, typename Fn>
std::vector<T> parallel_map(size_t n, Fn fn) {
  std::vector<T> out(n);
  size_t width = std::max(1u, std::thread::hardware_concurrency());
  for (size_t begin = 0; begin < n; begin += width) {
    size_t end = std::min(n, begin + width);
    std::vector<std::future<T>> futures;
    for (size_t i = begin; i < end; ++i) futures.push_back(std::async(std::launch::async, fn, i));
    for (auto& f : futures) f.wait();
    for (size_t i = begin; i < end; ++i) out[i] = futures[i - begin].get();
  }
  return out;
}

Json graphs_to_json(const std::vector<Graph>& graphs) {
  Json arr = Json::array();
  for (const Graph& g : graphs) arr.push_back(graph_to_json(g));
  return arr;
}

std::vector<Graph> graphs_from_json(const Json& j) {
  std::vector<Graph> out;
  if (j.is_array()) {
    for (const Json& g : j) out.push_back(graph_from_json(g));
  } else {
    out.push_back(graph_from_json(j));
  }
  return out;
}

Json parse_json_file(const std::string& path) {
  std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

Json slices_to_json(const std::vector<FileSlices>& files) {
  Json arr = Json::array();
  for (const FileSlices& f : files) arr.push_back(file_slices_to_json(f));
  return arr;
}

bool belongs_to(const std::string& scope, const Graph& g) { return scope.rfind(g.file + "::", 0) == 0; }

int skipped_statements(const Graph& g) {
  return static_cast<int>(std::count_if(g.diagnostics.begin(), g.diagnostics.end(),
                                        [](const Diagnostic& d) { return d.kind == "skipped-statement"; }));
}

}  // namespace

std::string_view to_string(Stage s) { return kStages[static_cast<int>(s)]; }

Stage stage_from_string(std::string_view s) {
  for (size_t i = 0; i < std::size(kStages); ++i) {
    if (kStages[i] == s) return static_cast<Stage>(i);
  }
  throw std::invalid_argument("unknown stage '" + std::string(s) + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

TaintQuery taint_query_from_json(const Json& j) {
  TaintQuery q;
  try {
    q.source_types = j.at("sourceTypes").get<std::set<std::string>>();
    if (j.contains("sourceMember") && !j["sourceMember"].is_null()) {
      q.source_member = j["sourceMember"].get<std::string>();
    }
    q.sink_callee = j.at("sink").get<std::string>();
    if (j.contains("sinkArgs")) q.sink_args = j["sinkArgs"].get<std::set<int>>();
    if (j.contains("sanitizers")) q.sanitizers = j["sanitizers"].get<std::set<std::string>>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed query: ") + e.what());
  }
  return q;
}

PipelineConfig pipeline_config_from_json(const Json& j) {
  PipelineConfig c;
  try {
    c.inputs = j.value("inputs", std::vector<std::string>{});
    c.backend = j.value("backend", c.backend);
    c.backend_url = j.value("backendUrl", "");
    c.lexicon = j.value("lexicon", "");
    c.iterations = j.value("iterations", c.iterations);
    c.declarations = j.value("declarations", std::vector<std::string>{});
    c.policy = validation_policy_from_string(j.value("validation", std::string(to_string(c.policy))));
    if (j.contains("dropSet")) c.drop_set = j["dropSet"].get<std::vector<std::string>>();
    c.token_budget = j.value("tokenBudget", c.token_budget);
    c.in_flight = j.value("inFlight", c.in_flight);
    c.artifacts = j.value("artifacts", "");
    c.from_stage = stage_from_string(j.value("fromStage", std::string("graph")));
    if (j.contains("query") && !j["query"].is_null()) c.query = taint_query_from_json(j["query"]);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed pipeline configuration: ") + e.what());
  }
  if (c.token_budget < kMinTokenBudget) {
    throw std::invalid_argument("token budget must be at least " + std::to_string(kMinTokenBudget));
  }
  if (c.iterations < 1) throw std::invalid_argument("iterations must be at least 1");
  if (c.backend != "heuristic" && c.backend != "remote") {
    throw std::invalid_argument("unknown backend '" + c.backend + "'");
  }
  if (c.backend == "remote" && c.backend_url.empty()) throw std::invalid_argument("remote backend needs a URL");
  return c;
}

DeclarationRegistry load_registry(const std::vector<std::string>& paths) {
  DeclarationRegistry registry = DeclarationRegistry::with_builtins();
  for (const std::string& path : paths) {
    DeclFormat format = std::filesystem::path(path).extension() == ".json" ? DeclFormat::JsonStub : DeclFormat::DtsSubset;
    registry.add(load_declarations(read_text_file(path), format));
  }
  return registry;
}

std::unique_ptr<InferenceBackend> make_backend(const std::string& kind, const std::string& url,
                                               const std::string& lexicon_path) {
  if (kind == "remote") return make_remote_backend(url);
  if (kind != "heuristic") throw std::invalid_argument("unknown backend '" + kind + "'");
  if (lexicon_path.empty()) return std::make_unique<HeuristicBackend>();
  return std::make_unique<HeuristicBackend>(Lexicon::parse(read_text_file(lexicon_path)));
}

Json validate_suggestions(const std::vector<FileSlices>& files, const InferenceOutcome& suggestions,
                          const DeclarationRegistry& registry) {
  Json verdicts = Json::array();
  for (const InferencePrediction& p : suggestions.accepted) {
    const UsageSlice* match = nullptr;
    for (const FileSlices& f : files) {
      for (const ProgramUsageSlice& g : f.groups) {
        if (g.scope != p.scope) continue;
        for (const UsageSlice& s : g.slices) {
          if (s.target.symbol == p.symbol && s.target.span.start_offset == p.span.start_offset) match = &s;
        }
      }
    }
    Json v{{"scope", p.scope}, {"symbol", p.symbol}, {"type", p.type_name}};
    if (!match) {
      v["verdict"] = nullptr;
      v["details"] = "no slice matches this suggestion";
    } else if (BuiltinTypeSet::is_any(p.type_name) || BuiltinTypeSet::is_nullish(p.type_name)) {
      v["verdict"] = nullptr;
      v["details"] = "ANY and nullish suggestions are filtered before validation";
    } else {
      ValidationResult r = validate(*match, p.type_name, registry);
      v["verdict"] = to_string(r.verdict);
      v["details"] = r.details;
    }
    verdicts.push_back(std::move(v));
  }
  return Json{{"verdicts", std::move(verdicts)}};
}

std::vector<TypeAssignment> accepted_assignments(const InferenceOutcome& outcome) {
  std::vector<TypeAssignment> out;
  for (const InferencePrediction& p : outcome.accepted) out.push_back({p.scope, p.symbol, p.span, p.type_name});
  return out;
}

PipelineResult run_pipeline(const PipelineConfig& config, const StageLogger& log) {
  PipelineResult result;
  const Stage from = config.from_stage;
  const bool save = !config.artifacts.empty();
  if (from != Stage::Graph && !save) throw std::invalid_argument("resuming needs the artifacts directory");
  auto artifact = [&](const char* name) { return (std::filesystem::path(config.artifacts) / name).string(); };
  auto enter = [&](Stage s) {
    result.stages.emplace_back(to_string(s));
    if (log) log("stage " + std::string(to_string(s)));
  };

  std::vector<Graph> graphs;
  if (from == Stage::Graph) {
    enter(Stage::Graph);
    if (config.inputs.empty()) throw std::invalid_argument("no input files");
    graphs = parallel_map<Graph>(config.inputs.size(),
                                 [&](size_t i) { return build_graph(config.inputs[i], read_text_file(config.inputs[i])); });
    if (save) write_text_file(artifact("graph.json"), graphs_to_json(graphs).dump(1));
  } else if (from == Stage::Propagate) {
    graphs = graphs_from_json(parse_json_file(artifact("graph.json")));
  }

  if (from <= Stage::Propagate) {
    enter(Stage::Propagate);
    std::vector<TypeAssignmentMap> maps = parallel_map<TypeAssignmentMap>(
        graphs.size(), [&](size_t i) { return propagate(graphs[i], config.iterations).map; });
    if (save) {
      Json typemaps = Json::object();
      for (size_t i = 0; i < graphs.size(); ++i) typemaps[graphs[i].file] = typemap_to_json(maps[i]);
      write_text_file(artifact("propagated.json"), graphs_to_json(graphs).dump(1));
      write_text_file(artifact("typemap.json"), typemaps.dump(1));
    }
  } else {
    graphs = graphs_from_json(parse_json_file(artifact("propagated.json")));
  }
  const std::vector<Graph> before = graphs;

  std::vector<FileSlices> slices;
  if (from <= Stage::Slice) {
    enter(Stage::Slice);
    slices = parallel_map<FileSlices>(graphs.size(), [&](size_t i) {
      return FileSlices{graphs[i].file, group_program_slices(graphs[i], extract_slices(graphs[i]))};
    });
    if (save) write_text_file(artifact("slices.json"), slices_to_json(slices).dump(1));
  } else if (from == Stage::Infer) {
    slices = file_slices_from_json(parse_json_file(artifact("slices.json")));
  }

  InferenceOutcome outcome;
  if (from <= Stage::Infer) {
    enter(Stage::Infer);
    DeclarationRegistry registry = load_registry(config.declarations);
    std::unique_ptr<InferenceBackend> backend = make_backend(config.backend, config.backend_url, config.lexicon);
    InferenceOptions options;
    options.token_budget = config.token_budget;
    options.in_flight = config.in_flight;
    options.policy = config.policy;
    options.registry = &registry;
    if (config.drop_set) options.drop_set = {config.drop_set->begin(), config.drop_set->end()};
    std::vector<ProgramUsageSlice> groups;
    for (const FileSlices& f : slices) groups.insert(groups.end(), f.groups.begin(), f.groups.end());
    outcome = infer(groups, *backend, options);
    if (save) write_text_file(artifact("predictions.json"), predictions_to_json(outcome).dump(1));
  } else if (from == Stage::Repropagate) {
    outcome = predictions_from_json(parse_json_file(artifact("predictions.json")));
  }

  if (from <= Stage::Repropagate) {
    enter(Stage::Repropagate);
    std::vector<TypeAssignment> accepted = accepted_assignments(outcome);
    for (Graph& g : graphs) {
      std::vector<TypeAssignment> mine;
      for (const TypeAssignment& a : accepted) {
        if (belongs_to(a.scope, g)) mine.push_back(a);
      }
      repropagate_with_inferences(g, mine, config.iterations);
    }
    if (save) write_text_file(artifact("final.json"), graphs_to_json(graphs).dump(1));
  } else {
    graphs = graphs_from_json(parse_json_file(artifact("final.json")));
  }

  enter(Stage::Query);
  std::vector<const Graph*> b;
  std::vector<const Graph*> a;
  for (const Graph& g : before) b.push_back(&g);
  for (const Graph& g : graphs) a.push_back(&g);
  CoverageReport coverage = typed_coverage_report(b, a);
  Json flows = Json::array();
  size_t flow_count = 0;
  if (config.query) {
    for (const Graph& g : graphs) {
      std::vector<TaintFlow> found = run_query(g, *config.query);
      flow_count += found.size();
      flows.push_back(flows_to_json(g, found));
    }
  }
  if (save) {
    write_text_file(artifact("coverage.json"), coverage_to_json(coverage).dump(1));
    if (config.query) write_text_file(artifact("flows.json"), flows.dump(1));
  }

  Json files = Json::array();
  int skipped = 0;
  for (const Graph& g : graphs) {
    skipped += skipped_statements(g);
    files.push_back({{"file", g.file},
                     {"skippedStatements", skipped_statements(g)},
                     {"diagnostics", static_cast<int>(g.diagnostics.size())}});
  }
  result.exit_code = skipped > 0 ? 2 : 0;
  result.summary = Json{{"stages", result.stages},
                        {"files", std::move(files)},
                        {"predictions", outcome.accepted.size()},
                        {"rejected", outcome.rejected.size()},
                        {"backendCalls", outcome.backend_calls},
                        {"coverage", coverage_to_json(coverage)},
                        {"flowCount", flow_count},
                        {"flows", std::move(flows)}};
  return result;
}

}  // namespace typeslice
