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
#include <deque>
#include <map>
#include <stdexcept>

#include "common/errors.h"
#include "dataflow/dataflow.h"
#include "graph/builtin_types.h"

namespace typeslice {

namespace {

bool is_declaration(const GraphNode& n) { return n.kind == NodeKind::Local || n.kind == NodeKind::Parameter; }

NodeId assignment_of_target(const Graph& g, NodeId id) {
  NodeId p = g.parent(id);
  if (p != kNoNode && g.node(p).kind == NodeKind::Call && is_assignment_name(g.node(p).name) &&
      g.argument_index(id) == 1) {
    return p;
  }
  return kNoNode;
}

bool is_source_declaration(const Graph& g, NodeId decl, const TaintQuery& q) {
  const GraphNode& d = g.node(decl);
  if (q.source_types.count(canonical_type_text(d.type_full_name))) return true;
  return d.annotation && q.source_types.count(canonical_type_text(*d.annotation));
}

// Taint successors of `id` in a fixed order.
std::vector<NodeId> successors(const Graph& g, NodeId id, const TaintQuery& q) {
  std::vector<NodeId> out;
  const GraphNode& n = g.node(id);
  if (is_declaration(n)) {
    for (NodeId r : g.refs_to(id)) {
      if (assignment_of_target(g, r) == kNoNode) out.push_back(r);
    }
    return out;
  }
  NodeId p = g.parent(id);
  if (p == kNoNode) return out;
  const GraphNode& parent = g.node(p);
  switch (parent.kind) {
    case NodeKind::MemberAccess:
      out.push_back(p);
      break;
    case NodeKind::Literal:
      if (parent.name == "object" || parent.name == "array") out.push_back(p);
      break;
    case NodeKind::Call: {
      int index = g.argument_index(id);
      if (index < 0) break;
      if (is_assignment_name(parent.name)) {
        if (index != 2) break;
        for (auto [i, arg] : g.arguments(p)) {
          if (i == 1 && g.node(arg).kind == NodeKind::Identifier && g.ref(arg) != kNoNode) out.push_back(g.ref(arg));
        }
        out.push_back(p);
      } else if (!q.sanitizers.count(parent.name) && !q.sanitizers.count(parent.full_name)) {
        out.push_back(p);
      }
      break;
    }
    default:
      break;
  }
  return out;
}

}  // namespace

bool glob_match(std::string_view pattern, std::string_view text) {
  size_t p = 0;
  size_t t = 0;
  size_t star = std::string_view::npos;
  size_t resume = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      resume = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++resume;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

bool is_taint_step(const Graph& g, NodeId from, NodeId to, const TaintQuery& query) {
  std::vector<NodeId> next = successors(g, from, query);
  return std::find(next.begin(), next.end(), to) != next.end();
}

std::vector<TaintFlow> run_query(const Graph& g, const TaintQuery& query) {
  if (query.source_types.empty()) throw std::invalid_argument("a taint query needs at least one source type");
  if (query.sink_callee.empty()) throw std::invalid_argument("a taint query needs a sink pattern");
  TaintQuery q = query;
  q.source_types.clear();
  for (const std::string& t : query.source_types) q.source_types.insert(canonical_type_text(t));

  std::vector<NodeId> seeds;
  for (const GraphNode& n : g.nodes) {
    if (n.kind != NodeKind::Identifier || g.ref(n.id) == kNoNode) continue;
    if (assignment_of_target(g, n.id) != kNoNode || !is_source_declaration(g, g.ref(n.id), q)) continue;
    if (!q.source_member) {
      seeds.push_back(n.id);
      continue;
    }
    NodeId p = g.parent(n.id);
    if (p != kNoNode && g.node(p).kind == NodeKind::MemberAccess && g.node(p).name == *q.source_member) {
      seeds.push_back(p);
    }
  }

  std::map<NodeId, NodeId> pred;
  std::deque<NodeId> queue;
  for (NodeId s : seeds) {
    if (pred.emplace(s, kNoNode).second) queue.push_back(s);
  }
  while (!queue.empty()) {
    NodeId id = queue.front();
    queue.pop_front();
    for (NodeId next : successors(g, id, q)) {
      if (pred.emplace(next, id).second) queue.push_back(next);
    }
  }

  std::vector<TaintFlow> flows;
  for (const GraphNode& n : g.nodes) {
    if (n.kind != NodeKind::Call || is_operator_name(n.name)) continue;
    if (!glob_match(q.sink_callee, n.full_name.empty() ? n.name : n.full_name)) continue;
    for (auto [index, arg] : g.arguments(n.id)) {
      if (!q.sink_args.empty() && !q.sink_args.count(index)) continue;
      if (!pred.count(arg)) continue;
      TaintFlow flow;
      flow.sink = n.id;
      flow.scope = g.node(g.method_of(n.id)).full_name;
      for (NodeId step = arg; step != kNoNode; step = pred.at(step)) flow.steps.push_back(step);
      std::reverse(flow.steps.begin(), flow.steps.end());
      flows.push_back(std::move(flow));
      break;
    }
  }
  return flows;
}

Json flows_to_json(const Graph& g, const std::vector<TaintFlow>& flows) {
  Json arr = Json::array();
  for (const TaintFlow& f : flows) {
    Json steps = Json::array();
    for (NodeId id : f.steps) {
      const GraphNode& n = g.node(id);
      steps.push_back({{"node", id},
                       {"kind", to_string(n.kind)},
                       {"code", std::string(g.text(id))},
                       {"span", span_to_json(n.span)}});
    }
    const GraphNode& sink = g.node(f.sink);
    arr.push_back({{"scope", f.scope},
                   {"sink", {{"node", f.sink}, {"callee", sink.full_name}, {"span", span_to_json(sink.span)}}},
                   {"steps", std::move(steps)}});
  }
  return Json{{"file", g.file}, {"flows", std::move(arr)}};
}

CoverageDelta typed_coverage_delta(const Graph& before, const Graph& after) {
  bool same = before.nodes.size() == after.nodes.size() && before.edges.size() == after.edges.size();
  for (size_t i = 0; same && i < before.nodes.size(); ++i) {
    same = before.nodes[i].kind == after.nodes[i].kind && before.nodes[i].span == after.nodes[i].span;
  }
  if (!same) throw MismatchError("graphs of '" + before.file + "' and '" + after.file + "' differ structurally");
  CoverageDelta d;
  d.file = after.file;
  d.before = typed_node_ratio(before);
  d.after = typed_node_ratio(after);
  d.delta = d.after - d.before;
  return d;
}

CoverageReport typed_coverage_report(const std::vector<const Graph*>& before, const std::vector<const Graph*>& after) {
  if (before.size() != after.size()) throw MismatchError("before and after cover different file counts");
  CoverageReport r;
  for (size_t i = 0; i < before.size(); ++i) r.files.push_back(typed_coverage_delta(*before[i], *after[i]));
  if (r.files.empty()) return r;
  for (const CoverageDelta& d : r.files) {
    r.before += d.before;
    r.after += d.after;
    r.delta += d.delta;
  }
  double n = static_cast<double>(r.files.size());
  r.before /= n;
  r.after /= n;
  r.delta /= n;
  return r;
}

Json coverage_to_json(const CoverageReport& report) {
  Json files = Json::array();
  for (const CoverageDelta& d : report.files) {
    files.push_back({{"file", d.file}, {"before", d.before}, {"after", d.after}, {"delta", d.delta}});
  }
  return Json{{"files", std::move(files)},
              {"aggregate", {{"before", report.before}, {"after", report.after}, {"delta", report.delta}}}};
}

}  // namespace typeslice
