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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "common/json.h"
#include "common/span.h"
#include "frontend/ast.h"

namespace typeslice {

using NodeId = uint32_t;
inline constexpr NodeId kNoNode = UINT32_MAX;

enum class NodeKind { File, Method, Parameter, Local, Identifier, Literal, Call, MemberAccess, Return, MethodRef };
enum class EdgeKind { Ast, Ref, Call, Capture, Argument, EvalType };

std::string_view to_string(NodeKind kind);
std::string_view to_string(EdgeKind kind);
NodeKind node_kind_from_string(std::string_view s);
EdgeKind edge_kind_from_string(std::string_view s);

struct GraphNode {
  NodeId id = kNoNode;
  NodeKind kind = NodeKind::File;
  std::string name;
  std::string full_name;
  std::string type_full_name = "ANY";
  SourceSpan span;
  int order = 0;
  // Parameter/Local: "var", "let", "const", "import", "function" or "param".
  std::string decl_kind;
  // User-written annotation (declarations: variable type; Method: return type).
  std::optional<std::string> annotation;
  // Method: end offsets of the top-level statements of the body.
  std::vector<uint32_t> statement_ends;
};

struct GraphEdge {
  EdgeKind kind = EdgeKind::Ast;
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  int index = -1;  // ARGUMENT only; 0 is the receiver
};

// One file's code property graph. Node ids are positions in `nodes`; after
// build_graph or from_json they are canonical (sorted by span, then kind).
class Graph {
 public:
  std::string file;
  std::string source;
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  std::vector<Diagnostic> diagnostics;

  // Rebuilds adjacency; call after mutating nodes or edges structurally.
  void index();

  const GraphNode& node(NodeId id) const { return nodes.at(id); }
  GraphNode& node(NodeId id) { return nodes.at(id); }

  // AST children ordered by `order`.
  const std::vector<NodeId>& children(NodeId id) const { return children_[id]; }
  NodeId parent(NodeId id) const { return parent_[id]; }
  // Declaration an identifier refers to, or kNoNode.
  NodeId ref(NodeId id) const { return ref_[id]; }
  // Identifiers referring to a declaration, in id order.
  const std::vector<NodeId>& refs_to(NodeId decl) const { return refs_to_[decl]; }
  // (index, node) pairs of a call's ARGUMENT edges, by index.
  const std::vector<std::pair<int, NodeId>>& arguments(NodeId call) const { return args_[call]; }
  // ARGUMENT index of `id` within its parent call, or -1.
  int argument_index(NodeId id) const { return arg_index_[id]; }
  NodeId call_target(NodeId call) const { return call_target_[call]; }
  const std::vector<NodeId>& captures(NodeId method) const { return captures_[method]; }
  // Nearest strict Method ancestor.
  NodeId method_of(NodeId id) const { return method_of_[id]; }
  // Method nodes ordered by span.
  const std::vector<NodeId>& methods() const { return methods_; }
  NodeId file_node() const { return file_node_; }

  std::string_view text(const SourceSpan& span) const {
    return std::string_view(source).substr(span.start_offset, span.length());
  }
  std::string_view text(NodeId id) const { return text(node(id).span); }

 private:
  std::vector<std::vector<NodeId>> children_;
  std::vector<NodeId> parent_;
  std::vector<NodeId> ref_;
  std::vector<std::vector<NodeId>> refs_to_;
  std::vector<std::vector<std::pair<int, NodeId>>> args_;
  std::vector<int> arg_index_;
  std::vector<NodeId> call_target_;
  std::vector<std::vector<NodeId>> captures_;
  std::vector<NodeId> method_of_;
  std::vector<NodeId> methods_;
  NodeId file_node_ = kNoNode;
};

inline constexpr int kGraphSchemaVersion = 1;

// Canonical serialization; byte-identical for identical inputs.
Json graph_to_json(const Graph& g);
// Throws FormatError on malformed input.
Graph graph_from_json(const Json& j);

bool is_operator_name(std::string_view call_name);
bool is_assignment_name(std::string_view call_name);

// Parameter, Local, Call, Literal and Identifier nodes form the denominator.
bool counts_toward_typed_ratio(NodeKind kind);
double typed_node_ratio(const Graph& g);

}  // namespace typeslice
