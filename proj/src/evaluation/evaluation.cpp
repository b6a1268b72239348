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
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "common/errors.h"
#include "evaluation/evaluation.h"
#include "frontend/parser.h"
#include "graph/builder.h"
#include "propagation/propagation.h"
#include "slicing/slices.h"

namespace typeslice {

namespace {

struct Edit {
  uint32_t start;
  uint32_t end;
  std::string replacement;
  bool constructee = false;
};

bool is_truth_declaration(const GraphNode& n) {
  return (n.kind == NodeKind::Parameter || n.kind == NodeKind::Local) && n.decl_kind != "import" &&
         n.decl_kind != "function";
}

bool is_write_target(const Graph& g, NodeId id) {
  NodeId p = g.parent(id);
  return p != kNoNode && g.node(p).kind == NodeKind::Call && is_assignment_name(g.node(p).name) &&
         g.argument_index(id) == 1;
}

bool has_read(const Graph& g, NodeId decl) {
  for (NodeId r : g.refs_to(decl)) {
    if (!is_write_target(g, r)) return true;
  }
  return false;
}

// Constructee of a `new C(...)` initializer of `decl`, or empty.
std::string constructed_type(const Graph& g, NodeId decl) {
  for (NodeId r : g.refs_to(decl)) {
    if (g.node(r).span != g.node(decl).span || !is_write_target(g, r)) continue;
    NodeId call = g.parent(r);
    if (g.node(call).name != "<operator>.assignment") continue;
    for (auto [index, arg] : g.arguments(call)) {
      const GraphNode& rhs = g.node(arg);
      if (index == 2 && rhs.kind == NodeKind::Call && rhs.name.rfind("new ", 0) == 0) return rhs.name.substr(4);
    }
  }
  return "";
}

bool is_dropped_truth(const std::string& type) {
  std::string base = base_type_name(type);
  bool function_type = type.find("=>") != std::string::npos;
  return type.empty() || function_type || base == "Function" || base == "void" || base == "any" ||
         BuiltinTypeSet::is_any(type);
}

const InferencePrediction* best_of(const std::vector<const InferencePrediction*>& candidates) {
  const InferencePrediction* best = nullptr;
  for (const InferencePrediction* p : candidates) {
    if (!best || std::make_tuple(-p->confidence, p->scope, p->tag_index, p->type_name) <
                     std::make_tuple(-best->confidence, best->scope, best->tag_index, best->type_name)) {
      best = p;
    }
  }
  return best;
}

void judge(EntryVerdict& v, const InferencePrediction* best) {
  if (!best) return;
  v.predicted = best->type_name;
  v.confidence = best->confidence;
  if (canonical_type_text(best->type_name) == "UNK") return;
  v.correct = canonical_type_text(best->type_name) == canonical_type_text(v.true_type);
  v.base_name_correct = base_type_name(best->type_name) == base_type_name(v.true_type);
}

Json category_to_json(const CategoryScore& c) {
  return Json{{"evaluated", c.evaluated},
              {"correct", c.correct},
              {"top1", c.top1()},
              {"baseNameCorrect", c.base_name_correct},
              {"baseNameTop1", c.base_name_top1()}};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string_view to_string(TypeCategory c) {
  switch (c) {
    case TypeCategory::Top100Builtin: return "Top100Builtin";
    case TypeCategory::UserDefined: return "UserDefined";
    case TypeCategory::Other: return "Other";
  }
  return "";
}

std::string_view to_string(ScoreMode m) { return m == ScoreMode::Greedy ? "greedy" : "exact"; }

ScoreMode score_mode_from_string(std::string_view s) {
  if (s == "greedy") return ScoreMode::Greedy;
  if (s == "exact") return ScoreMode::ExactLocation;
  throw std::invalid_argument("unknown score mode '" + std::string(s) + "'");
}

TypeCategory categorize(std::string_view type_name, const std::vector<std::string>& local_types,
                        const BuiltinTypeSet& top100) {
  if (top100.is_top100(type_name)) return TypeCategory::Top100Builtin;
  std::string base = base_type_name(type_name);
  if (std::find(local_types.begin(), local_types.end(), base) != local_types.end()) return TypeCategory::UserDefined;
  return TypeCategory::Other;
}

MaskedSource mask_annotations(std::string_view source, const std::string& file_name, const BuiltinTypeSet& top100) {
  ParseResult parsed = parse(source);
  std::vector<Edit> edits;
  int placeholder = 0;
  walk(parsed.program, [&](const AstNode& n, const AstNode*) {
    if (n.kind == AstKind::TypeAnnotation) {
      edits.push_back({n.span.start_offset, n.span.end_offset, "", false});
    } else if (n.kind == AstKind::New && !n.children.empty()) {
      const SourceSpan& c = n.children[0].span;
      edits.push_back({c.start_offset, c.end_offset, "", true});
    }
  });
  std::sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) { return a.start < b.start; });
  for (Edit& e : edits) {
    if (e.constructee) {
      e.replacement = std::string(kMaskPlaceholder) + std::to_string(placeholder++);
    }
  }

  MaskedSource out;
  out.local_types = parsed.declared_type_names;
  uint32_t pos = 0;
  for (const Edit& e : edits) {
    if (e.start < pos) continue;
    out.source.append(source.substr(pos, e.start - pos));
    out.source += e.replacement;
    pos = e.end;
  }
  out.source.append(source.substr(pos));

  auto shift = [&](uint32_t offset) {
    int64_t moved = offset;
    for (const Edit& e : edits) {
      if (e.end > offset) break;
      moved += static_cast<int64_t>(e.replacement.size()) - static_cast<int64_t>(e.end - e.start);
    }
    return static_cast<uint32_t>(moved);
  };

  Graph g = build_graph(parsed, file_name, std::string(source));
  LineIndex lines(out.source);
  for (const GraphNode& n : g.nodes) {
    if (!is_truth_declaration(n) || !has_read(g, n.id)) continue;
    std::string type = n.annotation ? canonical_type_text(*n.annotation) : constructed_type(g, n.id);
    if (is_dropped_truth(type)) continue;
    GroundTruthEntry t;
    t.file = file_name;
    t.scope = g.node(g.method_of(n.id)).full_name;
    t.symbol = n.name;
    t.span = lines.span(shift(n.span.start_offset), shift(n.span.end_offset));
    t.true_type = type;
    t.category = categorize(type, out.local_types, top100);
    out.truths.push_back(std::move(t));
  }
  return out;
}

MetricsReport score(const std::vector<InferencePrediction>& predictions, const std::vector<GroundTruthEntry>& truth,
                    ScoreMode mode) {
  std::map<TruthLocation, std::vector<const InferencePrediction*>> at;
  for (const InferencePrediction& p : predictions) at[{p.scope, p.span.start_offset}].push_back(&p);

  MetricsReport r;
  r.mode = mode;
  auto tally = [&](const EntryVerdict& v) {
    CategoryScore& c = v.category == TypeCategory::Top100Builtin ? r.top100
                       : v.category == TypeCategory::UserDefined ? r.user_defined
                                                                 : r.other;
    for (CategoryScore* s : {&c, &r.overall}) {
      ++s->evaluated;
      s->correct += v.correct;
      s->base_name_correct += v.base_name_correct;
    }
    r.entries.push_back(v);
  };

  for (const GroundTruthEntry& t : truth) {
    if (base_type_name(t.true_type) == "any" || BuiltinTypeSet::is_any(t.true_type)) {
      ++r.skipped;
      continue;
    }
    EntryVerdict base;
    base.file = t.file;
    base.scope = t.scope;
    base.symbol = t.symbol;
    base.offset = t.span.start_offset;
    base.true_type = t.true_type;
    base.category = t.category;
    std::vector<TruthLocation> locations = t.locations;
    std::sort(locations.begin(), locations.end());
    locations.erase(std::unique(locations.begin(), locations.end()), locations.end());
    if (mode == ScoreMode::Greedy) {
      std::vector<const InferencePrediction*> all;
      for (const TruthLocation& l : locations) {
        if (auto it = at.find(l); it != at.end()) all.insert(all.end(), it->second.begin(), it->second.end());
      }
      judge(base, best_of(all));
      tally(base);
    } else {
      for (const TruthLocation& l : locations) {
        EntryVerdict v = base;
        v.scope = l.scope;
        v.offset = l.offset;
        auto it = at.find(l);
        judge(v, it == at.end() ? nullptr : best_of(it->second));
        tally(v);
      }
    }
  }
  std::sort(r.entries.begin(), r.entries.end(), [](const EntryVerdict& a, const EntryVerdict& b) {
    return std::tie(a.file, a.offset, a.scope, a.symbol) < std::tie(b.file, b.offset, b.scope, b.symbol);
  });
  return r;
}

Json metrics_to_json(const MetricsReport& r) {
  Json entries = Json::array();
  for (const EntryVerdict& v : r.entries) {
    entries.push_back({{"file", v.file},
                       {"scope", v.scope},
                       {"symbol", v.symbol},
                       {"offset", v.offset},
                       {"truth", v.true_type},
                       {"category", to_string(v.category)},
                       {"predicted", v.predicted.empty() ? Json(nullptr) : Json(v.predicted)},
                       {"confidence", v.confidence},
                       {"correct", v.correct},
                       {"baseNameCorrect", v.base_name_correct}});
  }
  return Json{{"mode", to_string(r.mode)},
              {"top1Overall", r.overall.top1()},
              {"top1Top100", r.top100.top1()},
              {"top1UserDefined", r.user_defined.top1()},
              {"categories",
               {{"overall", category_to_json(r.overall)},
                {"top100", category_to_json(r.top100)},
                {"userDefined", category_to_json(r.user_defined)},
                {"other", category_to_json(r.other)}}},
              {"skipped", r.skipped},
              {"entries", std::move(entries)}};
}

MetricsReport evaluate_corpus(const std::string& dir, InferenceBackend& backend, const CorpusOptions& options) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw std::runtime_error("corpus directory '" + dir + "' does not exist");
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    std::string ext = entry.path().extension().string();
    if (entry.is_regular_file() && (ext == ".js" || ext == ".ts")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  const BuiltinTypeSet& top100 = options.top100 ? *options.top100 : BuiltinTypeSet::standard();

  std::vector<GroundTruthEntry> truths;
  std::vector<ProgramUsageSlice> groups;
  for (const fs::path& path : files) {
    std::string name = fs::relative(path, dir).generic_string();
    MaskedSource masked = mask_annotations(read_file(path), name, top100);
    Graph g = build_graph(name, masked.source);
    std::vector<UsageSlice> slices = extract_slices(g);
    std::map<uint32_t, GroundTruthEntry*> by_decl;
    for (GroundTruthEntry& t : masked.truths) by_decl[t.span.start_offset] = &t;
    for (const UsageSlice& s : slices) {
      NodeId decl = find_declaration(g, s.scope, s.target.symbol, s.target.span);
      if (decl == kNoNode) continue;
      auto it = by_decl.find(g.node(decl).span.start_offset);
      if (it != by_decl.end()) it->second->locations.push_back({s.scope, s.target.span.start_offset});
    }
    for (ProgramUsageSlice& grp : group_program_slices(g, slices)) groups.push_back(std::move(grp));
    for (GroundTruthEntry& t : masked.truths) truths.push_back(std::move(t));
  }

  InferenceOptions inference;
  inference.token_budget = options.token_budget;
  inference.policy = ValidationPolicy::Off;
  inference.skip_typed = false;
  InferenceOutcome outcome = infer(groups, backend, inference);
  return score(outcome.raw, truths, options.mode);
}

}  // namespace typeslice
