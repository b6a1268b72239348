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

#include "graph/graph.h"

#include <algorithm>

#include "common/errors.h"
#include "graph/builtin_types.h"

namespace typeslice {

namespace {

constexpr std::string_view kNodeKinds[] = {"File",  "Method", "Parameter",    "Local",  "Identifier",
                                           "Literal", "Call", "MemberAccess", "Return", "MethodRef"};
constexpr std::string_view kEdgeKinds[] = {"AST", "REF", "CALL", "CAPTURE", "ARGUMENT", "EVAL_TYPE"};

}  // namespace

std::string_view to_string(NodeKind kind) { return kNodeKinds[static_cast<int>(kind)]; }
std::string_view to_string(EdgeKind kind) { return kEdgeKinds[static_cast<int>(kind)]; }

NodeKind node_kind_from_string(std::string_view s) {
  for (size_t i = 0; i < std::size(kNodeKinds); ++i) {
    if (kNodeKinds[i] == s) return static_cast<NodeKind>(i);
  }
  throw FormatError("unknown node kind '" + std::string(s) + "'");
}

EdgeKind edge_kind_from_string(std::string_view s) {
  for (size_t i = 0; i < std::size(kEdgeKinds); ++i) {
    if (kEdgeKinds[i] == s) return static_cast<EdgeKind>(i);
  }
  throw FormatError("unknown edge kind '" + std::string(s) + "'");
}

bool is_operator_name(std::string_view name) { return name.rfind("<operator>.", 0) == 0; }

bool is_assignment_name(std::string_view name) { return name.rfind("<operator>.assignment", 0) == 0; }

void Graph::index() {
  size_t n = nodes.size();
  children_.assign(n, {});
  parent_.assign(n, kNoNode);
  ref_.assign(n, kNoNode);
  refs_to_.assign(n, {});
  args_.assign(n, {});
  arg_index_.assign(n, -1);
  call_target_.assign(n, kNoNode);
  captures_.assign(n, {});
  method_of_.assign(n, kNoNode);
  methods_.clear();
  file_node_ = kNoNode;

  for (const GraphEdge& e : edges) {
    if (e.src >= n || e.dst >= n) throw FormatError("edge endpoint out of range");
    switch (e.kind) {
      case EdgeKind::Ast:
        children_[e.src].push_back(e.dst);
        parent_[e.dst] = e.src;
        break;
      case EdgeKind::Ref:
        ref_[e.src] = e.dst;
        refs_to_[e.dst].push_back(e.src);
        break;
      case EdgeKind::Argument:
        args_[e.src].emplace_back(e.index, e.dst);
        arg_index_[e.dst] = e.index;
        break;
      case EdgeKind::Call:
        call_target_[e.src] = e.dst;
        break;
      case EdgeKind::Capture:
        captures_[e.src].push_back(e.dst);
        break;
      case EdgeKind::EvalType:
        break;
    }
  }
  for (auto& c : children_) {
    std::stable_sort(c.begin(), c.end(), [&](NodeId a, NodeId b) { return nodes[a].order < nodes[b].order; });
  }
  for (auto& a : args_) std::sort(a.begin(), a.end());
  for (NodeId id = 0; id < n; ++id) {
    if (nodes[id].kind == NodeKind::File) file_node_ = id;
    if (nodes[id].kind == NodeKind::Method) methods_.push_back(id);
    NodeId p = parent_[id];
    while (p != kNoNode && nodes[p].kind != NodeKind::Method) p = parent_[p];
    method_of_[id] = p;
  }
  std::sort(methods_.begin(), methods_.end(), [&](NodeId a, NodeId b) {
    const SourceSpan& x = nodes[a].span;
    const SourceSpan& y = nodes[b].span;
    if (x.start_offset != y.start_offset) return x.start_offset < y.start_offset;
    if (x.end_offset != y.end_offset) return x.end_offset > y.end_offset;
    return a < b;
  });
}

Json graph_to_json(const Graph& g) {
  Json j;
  j["version"] = kGraphSchemaVersion;
  j["file"] = g.file;
  j["source"] = g.source;
  Json nodes = Json::array();
  for (const GraphNode& n : g.nodes) {
    Json o;
    o["id"] = n.id;
    o["kind"] = to_string(n.kind);
    o["name"] = n.name;
    o["fullName"] = n.full_name;
    o["typeFullName"] = n.type_full_name;
    o["span"] = span_to_json(n.span);
    o["order"] = n.order;
    if (!n.decl_kind.empty()) o["declKind"] = n.decl_kind;
    if (n.annotation) o["annotation"] = *n.annotation;
    if (n.kind == NodeKind::Method) o["statementEnds"] = n.statement_ends;
    nodes.push_back(std::move(o));
  }
  j["nodes"] = std::move(nodes);
  Json edges = Json::array();
  for (const GraphEdge& e : g.edges) {
    Json o;
    o["kind"] = to_string(e.kind);
    o["src"] = e.src;
    o["dst"] = e.dst;
    if (e.kind == EdgeKind::Argument) o["index"] = e.index;
    edges.push_back(std::move(o));
  }
  j["edges"] = std::move(edges);
  Json diags = Json::array();
  for (const Diagnostic& d : g.diagnostics) diags.push_back(diagnostic_to_json(d));
  j["diagnostics"] = std::move(diags);
  return j;
}

Graph graph_from_json(const Json& j) {
  try {
    Graph g;
    if (j.at("version").get<int>() != kGraphSchemaVersion) throw FormatError("unsupported graph version");
    g.file = j.at("file").get<std::string>();
    g.source = j.at("source").get<std::string>();
    for (const Json& o : j.at("nodes")) {
      GraphNode n;
      n.id = o.at("id").get<NodeId>();
      if (n.id != g.nodes.size()) throw FormatError("node ids must be dense and ordered");
      n.kind = node_kind_from_string(o.at("kind").get<std::string>());
      n.name = o.value("name", "");
      n.full_name = o.value("fullName", "");
      n.type_full_name = o.value("typeFullName", std::string(types::kAny));
      if (n.type_full_name.empty()) throw FormatError("empty typeFullName");
      n.span = span_from_json(o.at("span"));
      n.order = o.value("order", 0);
      n.decl_kind = o.value("declKind", "");
      if (o.contains("annotation")) n.annotation = o["annotation"].get<std::string>();
      if (o.contains("statementEnds")) n.statement_ends = o["statementEnds"].get<std::vector<uint32_t>>();
      g.nodes.push_back(std::move(n));
    }
    for (const Json& o : j.at("edges")) {
      GraphEdge e;
      e.kind = edge_kind_from_string(o.at("kind").get<std::string>());
      e.src = o.at("src").get<NodeId>();
      e.dst = o.at("dst").get<NodeId>();
      e.index = o.value("index", -1);
      g.edges.push_back(e);
    }
    if (j.contains("diagnostics")) {
      for (const Json& o : j["diagnostics"]) {
        g.diagnostics.push_back({o.at("kind").get<std::string>(), o.at("message").get<std::string>(),
                                 span_from_json(o.at("span"))});
      }
    }
    g.index();
    return g;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed graph JSON: ") + e.what());
  }
}

bool counts_toward_typed_ratio(NodeKind kind) {
  return kind == NodeKind::Parameter || kind == NodeKind::Local || kind == NodeKind::Call ||
         kind == NodeKind::Literal || kind == NodeKind::Identifier;
}

double typed_node_ratio(const Graph& g) {
  size_t counted = 0;
  size_t typed = 0;
  for (const GraphNode& n : g.nodes) {
    if (!counts_toward_typed_ratio(n.kind)) continue;
    ++counted;
    if (!BuiltinTypeSet::is_any(n.type_full_name)) ++typed;
  }
  return counted == 0 ? 0.0 : static_cast<double>(typed) / static_cast<double>(counted);
}

}  // namespace typeslice
