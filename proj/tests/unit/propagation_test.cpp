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
#include <set>
#include <stdexcept>
#include <string>

#include "common/errors.h"
#include "graph/builder.h"
#include "graph/builtin_types.h"
#include "propagation/propagation.h"
#include "support/fixtures.h"
#include "support/program_gen.h"

using namespace typeslice;
using namespace typeslice::testing;

namespace {

const GraphNode& local(const Graph& g, const std::string& name) {
  for (const GraphNode& n : g.nodes) {
    if ((n.kind == NodeKind::Local || n.kind == NodeKind::Parameter) && n.name == name) return n;
  }
  FAIL("no declaration " << name);
  throw std::logic_error("unreachable");
}

std::vector<std::string> types_of(const PropagationResult& r, const std::string& key) {
  const auto* set = r.map.find(key);
  return set ? *set : std::vector<std::string>{};
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

bool submap(const TypeAssignmentMap& a, const TypeAssignmentMap& b) {
  for (const auto& [key, set] : a.entries) {
    const auto* other = b.find(key);
    if (!other) return false;
    for (const std::string& t : set) {
      if (std::find(other->begin(), other->end(), t) == other->end()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("two writes of different types keep both and leave the variable untyped") {
  Graph g = build_graph("t.js", "let x = 1; x = \"foo\";");
  PropagationResult r = propagate(g);
  CHECK(types_of(r, "t.js::program.x") ==
        std::vector<std::string>{std::string(types::kInteger), std::string(types::kString)});
  CHECK(local(g, "x").type_full_name == "ANY");
}

TEST_CASE("a single write types the variable") {
  Graph g = build_graph("t.js", "let x = 1;");
  PropagationResult r = propagate(g);
  CHECK(types_of(r, "t.js::program.x") == std::vector<std::string>{std::string(types::kInteger)});
  CHECK(local(g, "x").type_full_name == types::kInteger);
}

TEST_CASE("return types reach call sites on the second iteration") {
  const std::string src = "function f() { return 'a'; }\nlet y = f();";
  Graph one = build_graph("t.js", src);
  propagate(one, 1);
  CHECK(local(one, "y").type_full_name == "ANY");

  Graph two = build_graph("t.js", src);
  PropagationResult r = propagate(two, 2);
  CHECK(local(two, "y").type_full_name == types::kString);
  bool hint = false;
  for (const TypeHint& h : r.hints) {
    hint |= h.subject == HintSubject::ReturnOf && h.method == "t.js::program:f" && h.type_name == types::kString &&
            h.provenance == HintProvenance::CallSiteResult;
  }
  CHECK(hint);
}

TEST_CASE("call-site arguments type parameters") {
  Graph g = build_graph("t.js", "function f(a) { return a; }\nf(3);");
  PropagationResult r = propagate(g);
  CHECK(local(g, "a").type_full_name == types::kInteger);
  bool hint = false;
  for (const TypeHint& h : r.hints) {
    hint |= h.subject == HintSubject::ParameterOf && h.index == 0 && h.type_name == types::kInteger;
  }
  CHECK(hint);
}

TEST_CASE("iteration count must be positive") {
  Graph g = build_graph("t.js", "let x = 1;");
  CHECK_THROWS_AS(propagate(g, 0), std::invalid_argument);
}

TEST_CASE("accepted inferences flow through assignments") {
  Graph g = build_graph("t.js", "let x = load();\nlet z = x;");
  REQUIRE(local(g, "z").type_full_name == "ANY");
  const GraphNode& x = local(g, "x");
  PropagationResult r;
  int written = repropagate_with_inferences(g, {{"t.js::program", "x", x.span, "Foo"}}, kDefaultIterations, &r);
  CHECK(written == 1);
  CHECK(local(g, "x").type_full_name == "Foo");
  CHECK(local(g, "z").type_full_name == "Foo");
  CHECK(types_of(r, "t.js::program.z") == std::vector<std::string>{"Foo"});
  CHECK(repropagate_with_inferences(g, {}) == 0);
}

TEST_CASE("an inference contradicting an annotation is a conflict") {
  Graph g = build_graph("t.ts", "let x: string = load();");
  const GraphNode& x = local(g, "x");
  CHECK_THROWS_AS(repropagate_with_inferences(g, {{"t.ts::program", "x", x.span, "number"}}), ConflictError);
  CHECK_NOTHROW(repropagate_with_inferences(g, {{"t.ts::program", "x", x.span, "string"}}));
}

TEST_CASE("type map JSON round-trips") {
  Graph g = build_graph("handler.js", read_fixture("handler/handler.js"));
  PropagationResult r = propagate(g);
  CHECK(typemap_from_json(typemap_to_json(r.map)) == r.map);
  CHECK_THROWS_AS(typemap_from_json(Json::parse("{\"k\": [1]}")), FormatError);
}

TEST_CASE("propagation properties on random programs") {
  size_t multi_typed = 0;
  size_t keys = 0;
  for (uint32_t seed = 1; seed <= 100; ++seed) {
    std::string src = generate_program(seed);
    INFO("seed " << seed << "\n" << src);

    // Monotone in the number of iterations.
    TypeAssignmentMap previous;
    for (int k = 1; k <= 4; ++k) {
      Graph g = build_graph("p.js", src);
      TypeAssignmentMap m = propagate(g, k).map;
      CHECK(submap(previous, m));
      previous = std::move(m);
    }

    // Enough iterations reach a fixed point; propagating again changes nothing.
    Graph g = build_graph("p.js", src);
    TypeAssignmentMap fixed = propagate(g, 50).map;
    Graph more = build_graph("p.js", src);
    CHECK(propagate(more, 51).map == fixed);
    std::string typed = graph_to_json(g).dump();
    TypeAssignmentMap again = propagate(g, 50).map;
    CHECK(graph_to_json(g).dump() == typed);
    CHECK(submap(fixed, again));

    // ANY never enters the map.
    for (const auto& [key, set] : fixed.entries) {
      ++keys;
      multi_typed += set.size() > 1;
      for (const std::string& t : set) CHECK_FALSE(BuiltinTypeSet::is_any(t));
    }

    // Edge order does not matter: the same types are found for every key.
    Graph shuffled = build_graph("p.js", src);
    std::mt19937 rng(seed);
    std::shuffle(shuffled.edges.begin(), shuffled.edges.end(), rng);
    shuffled.index();
    TypeAssignmentMap permuted = propagate(shuffled, 2).map;
    Graph plain = build_graph("p.js", src);
    TypeAssignmentMap reference = propagate(plain, 2).map;
    CHECK(permuted.entries.size() == reference.entries.size());
    for (const auto& [key, set] : reference.entries) {
      const auto* other = permuted.find(key);
      REQUIRE(other);
      CHECK(as_set(*other) == as_set(set));
    }
  }
  MESSAGE("typed keys " << keys << ", keys with several types " << multi_typed);
  CHECK(keys > 300);
  CHECK(multi_typed > 20);
}
