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

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

#include "evaluation/evaluation.h"
#include "support/fixtures.h"

using namespace typeslice;
using namespace typeslice::testing;

namespace {

const GroundTruthEntry* truth_for(const MaskedSource& m, const std::string& symbol) {
  for (const GroundTruthEntry& t : m.truths) {
    if (t.symbol == symbol) return &t;
  }
  return nullptr;
}

InferencePrediction prediction(const std::string& scope, uint32_t offset, const std::string& type, double confidence,
                               int tag = 0) {
  InferencePrediction p;
  p.scope = scope;
  p.span.start_offset = offset;
  p.type_name = type;
  p.confidence = confidence;
  p.tag_index = tag;
  p.symbol = "v";
  return p;
}

GroundTruthEntry truth(const std::string& symbol, uint32_t offset, const std::string& type, TypeCategory category,
                       std::vector<TruthLocation> locations) {
  GroundTruthEntry t;
  t.file = "f.ts";
  t.scope = "f.ts::program";
  t.symbol = symbol;
  t.span.start_offset = offset;
  t.true_type = type;
  t.category = category;
  t.locations = std::move(locations);
  return t;
}

void check_category_sums(const MetricsReport& r) {
  CHECK(r.overall.evaluated == r.top100.evaluated + r.user_defined.evaluated + r.other.evaluated);
  CHECK(r.overall.correct == r.top100.correct + r.user_defined.correct + r.other.correct);
  CHECK(r.overall.base_name_correct ==
        r.top100.base_name_correct + r.user_defined.base_name_correct + r.other.base_name_correct);
  CHECK(static_cast<int>(r.entries.size()) == r.overall.evaluated);
}

}  // namespace

TEST_CASE("masking removes annotations and constructee names") {
  MaskedSource m = mask_annotations("let x: Foo = new Foo();\nx.go();\n", "a.ts");
  CHECK(m.source == "let x = new __OBF0();\nx.go();\n");
  REQUIRE(m.truths.size() == 1);
  CHECK(m.truths[0].true_type == "Foo");
  CHECK(m.truths[0].category == TypeCategory::Other);
  CHECK(m.source.substr(m.truths[0].span.start_offset, 1) == "x");

  MaskedSource p = mask_annotations("function f(a: string, b: number): string {\n  return a.trim() + b;\n}\n", "p.ts");
  CHECK(p.source == "function f(a, b) {\n  return a.trim() + b;\n}\n");
  REQUIRE(p.truths.size() == 2);
  const GroundTruthEntry* a = truth_for(p, "a");
  REQUIRE(a);
  CHECK(a->true_type == "string");
  CHECK(a->category == TypeCategory::Top100Builtin);
  CHECK(a->scope == "p.ts::program:f");
  CHECK(p.source.substr(a->span.start_offset, 1) == "a");
  const GroundTruthEntry* b = truth_for(p, "b");
  REQUIRE(b);
  CHECK(p.source.substr(b->span.start_offset, 1) == "b");
}

TEST_CASE("truths from constructors of locally declared classes") {
  MaskedSource m = mask_annotations("class Cart {}\nconst c = new Cart();\nconst d = new Cart();\nc.add(d);\n", "c.ts");
  CHECK(m.local_types == std::vector<std::string>{"Cart"});
  CHECK(m.source.find("new __OBF0()") != std::string::npos);
  CHECK(m.source.find("new __OBF1()") != std::string::npos);
  CHECK(m.source.find("new Cart") == std::string::npos);
  REQUIRE(m.truths.size() == 2);
  for (const GroundTruthEntry& t : m.truths) {
    CHECK(t.true_type == "Cart");
    CHECK(t.category == TypeCategory::UserDefined);
  }
}

TEST_CASE("unhelpful or unused truths are dropped") {
  MaskedSource m = mask_annotations(
      "let f: Function = g; f();\nlet v: void = h(); v.x;\nlet a: any = 1; a.y;\n"
      "let cb: (x: number) => void = k; cb(1);\nlet unused: string = 's';\nlet kept: number = 1; kept.toFixed();\n",
      "d.ts");
  REQUIRE(m.truths.size() == 1);
  CHECK(m.truths[0].symbol == "kept");
  CHECK(m.source.find(':') == std::string::npos);
}

TEST_CASE("categories") {
  const BuiltinTypeSet& top = BuiltinTypeSet::standard();
  CHECK(categorize("string", {}, top) == TypeCategory::Top100Builtin);
  // Arrays are categorized by their base name.
  CHECK(categorize("CartItem[]", {"CartItem"}, top) == TypeCategory::Top100Builtin);
  CHECK(categorize("CartItem", {"CartItem"}, top) == TypeCategory::UserDefined);
  CHECK(categorize("Gizmo", {}, top) == TypeCategory::Other);
  BuiltinTypeSet custom = BuiltinTypeSet::from_list("# comment\nGizmo\n\n");
  CHECK(categorize("Gizmo", {}, custom) == TypeCategory::Top100Builtin);
}

TEST_CASE("greedy scoring takes the best prediction over all locations") {
  const std::string s = "f.ts::program";
  const std::string c = "f.ts::program:anonymous";
  std::vector<GroundTruthEntry> truths = {
      truth("r", 10, "Request", TypeCategory::UserDefined, {{s, 10}, {c, 40}}),
      truth("n", 20, "number", TypeCategory::Top100Builtin, {{s, 20}}),
      truth("q", 30, "string", TypeCategory::Top100Builtin, {{s, 30}}),
      truth("w", 50, "any", TypeCategory::Other, {{s, 50}}),
      truth("z", 60, "Array<string>", TypeCategory::Top100Builtin, {{s, 60}}),
  };
  std::vector<InferencePrediction> preds = {
      prediction(s, 10, "string", 0.5, 0), prediction(c, 40, "Request", 0.9, 1),
      prediction(s, 20, "number", 0.7, 2), prediction(s, 30, "UNK", 1.0, 3),
      prediction(s, 50, "Thing", 1.0, 4),  prediction(s, 60, "Array<number>", 1.0, 5),
  };

  MetricsReport g = score(preds, truths, ScoreMode::Greedy);
  CHECK(g.skipped == 1);
  CHECK(g.overall.evaluated == 4);
  CHECK(g.overall.correct == 2);            // r, n
  CHECK(g.overall.base_name_correct == 3);  // r, n, z
  CHECK(g.user_defined.correct == 1);
  CHECK(g.top100.evaluated == 3);
  CHECK(g.top100.correct == 1);
  CHECK(g.overall.top1() == doctest::Approx(0.5));
  check_category_sums(g);
  for (const EntryVerdict& v : g.entries) {
    if (v.symbol == "r") CHECK(v.predicted == "Request");
    if (v.symbol == "q") {
      CHECK(v.predicted == "UNK");
      CHECK_FALSE(v.correct);
      CHECK_FALSE(v.base_name_correct);
    }
  }

  // Exact mode scores each location: r's first location is wrong.
  MetricsReport e = score(preds, truths, ScoreMode::ExactLocation);
  CHECK(e.overall.evaluated == 5);
  CHECK(e.overall.correct == 2);
  CHECK(e.user_defined.evaluated == 2);
  CHECK(e.user_defined.correct == 1);
  check_category_sums(e);

  // Prediction order does not matter.
  std::mt19937 rng(7);
  for (int i = 0; i < 10; ++i) {
    std::vector<InferencePrediction> shuffled = preds;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(metrics_to_json(score(shuffled, truths, ScoreMode::Greedy)) == metrics_to_json(g));
    CHECK(metrics_to_json(score(shuffled, truths, ScoreMode::ExactLocation)) == metrics_to_json(e));
  }
}

TEST_CASE("no predictions") {
  std::vector<GroundTruthEntry> truths = {truth("a", 1, "string", TypeCategory::Top100Builtin, {{"f.ts::program", 1}}),
                                          truth("b", 2, "Gizmo", TypeCategory::Other, {})};
  MetricsReport r = score({}, truths, ScoreMode::Greedy);
  CHECK(r.overall.evaluated == 2);
  CHECK(r.overall.correct == 0);
  CHECK(r.overall.top1() == 0.0);
  CHECK(r.user_defined.top1() == 0.0);
  check_category_sums(r);
  Json j = metrics_to_json(r);
  CHECK(j["entries"][0]["predicted"].is_null());
  CHECK(score({}, {}, ScoreMode::Greedy).overall.evaluated == 0);
}

TEST_CASE("corpus evaluation is deterministic") {
  HeuristicBackend h;
  MetricsReport a = evaluate_corpus(fixture_path("corpus"), h);
  MetricsReport b = evaluate_corpus(fixture_path("corpus"), h);
  CHECK(metrics_to_json(a).dump() == metrics_to_json(b).dump());
  CHECK(a.overall.evaluated > 20);
  CHECK(a.top100.evaluated > 0);
  CHECK(a.user_defined.evaluated > 0);
  check_category_sums(a);
  CorpusOptions exact;
  exact.mode = ScoreMode::ExactLocation;
  MetricsReport e = evaluate_corpus(fixture_path("corpus"), h, exact);
  CHECK(e.overall.evaluated >= a.overall.evaluated);
  check_category_sums(e);
  CHECK_THROWS(evaluate_corpus(fixture_path("no-such-dir"), h));
  CHECK(score_mode_from_string("exact") == ScoreMode::ExactLocation);
  CHECK_THROWS_AS(score_mode_from_string("fuzzy"), std::invalid_argument);
}
