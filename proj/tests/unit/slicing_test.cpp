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

#include <chrono>
#include <map>
#include <string>

#include "frontend/parser.h"
#include "graph/builder.h"
#include "slicing/slices.h"
#include "support/fixtures.h"
#include "support/program_gen.h"
#include "support/slice_oracle.h"

using namespace typeslice;
using namespace typeslice::testing;

namespace {

const UsageSlice* find_slice(const std::vector<UsageSlice>& slices, const std::string& scope_suffix,
                             const std::string& symbol) {
  for (const UsageSlice& s : slices) {
    if (s.target.symbol == symbol && s.scope.size() >= scope_suffix.size() &&
        s.scope.compare(s.scope.size() - scope_suffix.size(), scope_suffix.size(), scope_suffix) == 0) {
      return &s;
    }
  }
  return nullptr;
}

std::vector<UsageSlice> slices_of(const std::string& source) { return extract_slices(build_graph("t.js", source)); }

}  // namespace

TEST_CASE("variable without usages yields no slice") {
  CHECK(slices_of("let a = 1;").empty());
}

TEST_CASE("reassignment splits a variable into two slices") {
  std::string src = "let x = f(); x.m(); x = g(); x.n();";
  auto slices = slices_of(src);
  CHECK(canonical_slices(slices) == canonical_slices(oracle_slices(src, "t.js")));
  REQUIRE(slices.size() == 2);
  REQUIRE(slices[0].calls.size() == 1);
  CHECK(slices[0].calls[0].callee == "m");
  CHECK(slices[0].calls[0].role == CallRole::InvokedOn);
  CHECK(slices[0].def_source.kind == DefKind::CallResult);
  CHECK(slices[0].def_source.detail == "f");
  REQUIRE(slices[1].calls.size() == 1);
  CHECK(slices[1].calls[0].callee == "n");
  CHECK(slices[1].def_source.detail == "g");
}

TEST_CASE("compound assignment is a slice boundary") {
  std::string src = "let s = 'a'; s.trim(); s += 1; s.toFixed();";
  auto slices = slices_of(src);
  CHECK(canonical_slices(slices) == canonical_slices(oracle_slices(src, "t.js")));
  REQUIRE(slices.size() == 2);
  CHECK(slices[1].def_source.symbol == "<operator>.assignmentPlus");
}

TEST_CASE("nested call arguments belong to the innermost call") {
  auto slices = slices_of("let x = 1; f(g(x));");
  REQUIRE(slices.size() == 1);
  REQUIRE(slices[0].calls.size() == 1);
  CHECK(slices[0].calls[0].callee == "g");
  CHECK(slices[0].calls[0].position == 1);
}

TEST_CASE("parameters define themselves") {
  auto slices = slices_of("function f(a, b) { b.go(a); }");
  const UsageSlice* b = find_slice(slices, ":f", "b");
  REQUIRE(b);
  CHECK(b->target.kind == DefKind::Parameter);
  CHECK(b->target.detail == "1");
  CHECK(b->def_source == b->target);
  const UsageSlice* a = find_slice(slices, ":f", "a");
  REQUIRE(a);
  REQUIRE(a->calls.size() == 1);
  CHECK(a->calls[0].role == CallRole::ArgumentTo);
}

TEST_CASE("slices without calls or member reads are kept and flagged") {
  auto slices = slices_of("let a = 1; let b = a;");
  REQUIRE(slices.size() == 1);
  CHECK(slices[0].target.symbol == "a");
  CHECK(slices[0].low_signal);
}

TEST_CASE("grouping: three slices in two scopes") {
  Graph g = build_graph("t.js", "let a = f(); a.m(); let b = 2; b.n();\nfunction h(p) { p.x(); }\n");
  auto slices = extract_slices(g);
  REQUIRE(slices.size() == 3);
  auto groups = group_program_slices(g, slices);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].slices.size() == 2);
  CHECK(groups[1].slices.size() == 1);
  CHECK(groups[1].source == "function h(p) { p.x(); }");
  CHECK(group_program_slices(g, {}).empty());
}

TEST_CASE("slice boundary: no write of the target completes inside a slice") {
  for (uint32_t seed = 1; seed <= 60; ++seed) {
    std::string src = generate_program(seed);
    Graph g = build_graph("gen.js", src);
    std::map<uint32_t, NodeId> identifier_at;
    for (const GraphNode& n : g.nodes) {
      if (n.kind == NodeKind::Identifier) identifier_at[n.span.start_offset] = n.id;
    }
    for (const UsageSlice& s : extract_slices(g)) {
      if (s.usages.empty()) continue;
      NodeId decl = g.ref(identifier_at.at(s.usages.front().start_offset));
      for (const GraphNode& n : g.nodes) {
        if (n.kind != NodeKind::Call || !is_assignment_name(n.name)) continue;
        // Writes inside nested closures do not end the enclosing method's slice.
        if (g.node(g.method_of(n.id)).full_name != s.scope) continue;
        for (auto [index, arg] : g.arguments(n.id)) {
          if (index != 1 || g.ref(arg) != decl || g.node(arg).span == s.target.span) continue;
          uint32_t done = n.span.end_offset;
          for (const SourceSpan& u : s.usages) {
            INFO("seed " << seed << " symbol " << s.target.symbol);
            CHECK_FALSE((s.target.span.start_offset < done && done <= u.start_offset));
          }
        }
      }
    }
  }
}

TEST_CASE("slicer agrees with the brute-force oracle on random programs") {
  auto start = std::chrono::steady_clock::now();
  int compared = 0;
  int nonempty = 0;
  int captured = 0;
  int rewritten = 0;
  int arguments = 0;
  for (uint32_t seed = 1; seed <= 250; ++seed) {
    std::string src = generate_program(seed);
    ParseResult parsed = parse(src);
    for (const Diagnostic& d : parsed.diagnostics) REQUIRE_MESSAGE(d.kind != "skipped-statement", src);
    Graph g = build_graph(parsed, "gen.js", src);
    std::vector<UsageSlice> slices = extract_slices(g);
    for (const UsageSlice& s : slices) {
      captured += s.target.kind == DefKind::Capture;
      rewritten += !(s.def_source == s.target) && s.target.kind != DefKind::Capture;
      for (const ObservedCall& c : s.calls) arguments += c.role == CallRole::ArgumentTo;
    }
    std::string actual = canonical_slices(slices);
    std::string expected = canonical_slices(oracle_slices(src, "gen.js"));
    INFO("seed " << seed << "\n" << src);
    CHECK(actual == expected);
    ++compared;
    nonempty += !expected.empty();
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(compared == 250);
  CHECK(nonempty > 200);
  MESSAGE("capture slices " << captured << ", write-started slices " << rewritten << ", argument calls " << arguments);
  CHECK(captured > 100);
  CHECK(rewritten > 100);
  CHECK(arguments > 100);
  CHECK(seconds < 30.0);
}

TEST_CASE("handler example slices") {
  std::string src = read_fixture("handler/handler.js");
  Graph g = build_graph("handler.js", src);
  auto slices = extract_slices(g);
  CHECK(canonical_slices(slices) == canonical_slices(oracle_slices(src, "handler.js")));

  const std::string closure = "handler.js::program:anonymous";
  const UsageSlice* req = find_slice(slices, ":anonymous", "req");
  const UsageSlice* res = find_slice(slices, ":anonymous", "res");
  const UsageSlice* params = find_slice(slices, ":anonymous", "params");
  const UsageSlice* client = find_slice(slices, ":anonymous", "documentClient");
  REQUIRE(req);
  REQUIRE(res);
  REQUIRE(params);
  REQUIRE(client);
  CHECK(req->scope == closure);

  CHECK(req->calls.empty());
  REQUIRE(req->members.size() == 1);
  CHECK(req->members[0].name == "body");

  // res is only used inside the child closure, whose body is not traced here.
  CHECK(res->calls.empty());
  CHECK(res->usages.empty());

  REQUIRE(params->calls.size() == 1);
  CHECK(params->calls[0].callee == "query");
  CHECK(params->calls[0].role == CallRole::ArgumentTo);
  CHECK(params->calls[0].position == 1);
  CHECK(params->def_source.kind == DefKind::Literal);

  CHECK(client->target.kind == DefKind::Capture);
  CHECK(client->target.scope == "handler.js::program");
  REQUIRE(client->calls.size() == 1);
  CHECK(client->calls[0].callee == "query");
  CHECK(client->calls[0].role == CallRole::InvokedOn);
  CHECK(client->calls[0].arity() == 2);

  auto groups = group_program_slices(g, slices);
  const ProgramUsageSlice* handler = nullptr;
  for (const ProgramUsageSlice& p : groups) {
    if (p.scope == closure) handler = &p;
  }
  REQUIRE(handler);
  CHECK(handler->slices.size() == 4);

  std::string golden = read_fixture("handler/slices.golden.json");
  CHECK(file_slices_to_json({"handler.js", groups}).dump(1) + "\n" == golden);
}

TEST_CASE("annotation types on definitions") {
  auto by_symbol = [](const std::vector<Definition>& defs, const std::string& symbol) {
    for (const Definition& d : defs) {
      if (d.symbol == symbol) return d.type_name;
    }
    return std::string("<missing>");
  };
  Graph annotated = build_graph("a.ts", read_fixture("handler/handler_annotated.ts"));
  auto defs = slice_types_with_annotations(annotated);
  CHECK(by_symbol(defs, "req") == "NextApiRequest");
  CHECK(by_symbol(defs, "res") == "NextApiResponse");
  CHECK(by_symbol(defs, "params") == "Object");
  CHECK(by_symbol(defs, "err") == "Error");
  CHECK(by_symbol(defs, "data") == "Object");
  CHECK(by_symbol(defs, "documentClient") == "DocumentClient");

  Graph plain = build_graph("h.js", read_fixture("handler/handler.js"));
  for (const Definition& d : slice_types_with_annotations(plain)) CHECK(d.type_name == "ANY");

  auto one = slice_types_with_annotations(build_graph("p.ts", "function f(a: string, b) { return b; }"));
  CHECK(by_symbol(one, "a") == "string");
  CHECK(by_symbol(one, "b") == "ANY");
}

TEST_CASE("slice JSON round-trips") {
  Graph g = build_graph("handler.js", read_fixture("handler/handler.js"));
  FileSlices f{"handler.js", group_program_slices(g, extract_slices(g))};
  Json j = file_slices_to_json(f);
  auto back = file_slices_from_json(j);
  REQUIRE(back.size() == 1);
  CHECK(back[0].file == "handler.js");
  CHECK(back[0].groups == f.groups);
}
