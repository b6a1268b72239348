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
#include <map>
#include <set>

#include "graph/builtin_types.h"
#include "slicing/slices.h"

namespace typeslice {

namespace {

bool is_sliced_declaration(const GraphNode& n) {
  return (n.kind == NodeKind::Parameter || n.kind == NodeKind::Local) && n.decl_kind != "import" &&
         n.decl_kind != "function";
}

// Where a declaration is defined, seen from `scope`.
Definition declaration_definition(const Graph& g, NodeId decl, NodeId scope) {
  const GraphNode& d = g.node(decl);
  Definition def;
  def.symbol = d.name;
  def.type_name = d.type_full_name;
  def.span = d.span;
  NodeId owner = g.method_of(decl);
  def.scope = g.node(owner).full_name;
  if (owner != scope) {
    def.kind = DefKind::Capture;
  } else if (d.kind == NodeKind::Parameter) {
    def.kind = DefKind::Parameter;
    def.detail = std::to_string(d.order);
  } else {
    def.kind = DefKind::Local;
  }
  return def;
}

class MethodSlicer {
 public:
  MethodSlicer(const Graph& g, NodeId method) : g_(g), method_(method), scope_(g.node(method).full_name) {}

  void run(std::vector<UsageSlice>& out) {
    std::map<NodeId, std::vector<NodeId>> uses;  // declaration -> identifiers in this method
    std::vector<NodeId> child_methods;
    for (const GraphNode& n : g_.nodes) {
      if (g_.method_of(n.id) != method_) continue;
      if (n.kind == NodeKind::Identifier && g_.ref(n.id) != kNoNode) uses[g_.ref(n.id)].push_back(n.id);
      if (n.kind == NodeKind::Method) child_methods.push_back(n.id);
    }

    std::vector<UsageSlice> slices;
    for (NodeId child : g_.children(method_)) {
      if (is_sliced_declaration(g_.node(child))) slice_declaration(child, uses[child], child_methods, slices);
    }
    for (NodeId decl : g_.captures(method_)) {
      if (is_sliced_declaration(g_.node(decl))) slice_captured(decl, uses[decl], child_methods, slices);
    }
    std::stable_sort(slices.begin(), slices.end(), [](const UsageSlice& a, const UsageSlice& b) {
      return a.target.span.start_offset < b.target.span.start_offset;
    });
    for (UsageSlice& s : slices) out.push_back(std::move(s));
  }

 private:
  enum class EventKind { Write, Read, ChildCapture };
  struct Event {
    uint32_t position;
    EventKind kind;
    NodeId node;  // identifier, or the child Method
  };

  struct Segment {
    UsageSlice slice;
    bool has_read = false;
    bool child_capture = false;
  };

  bool is_write(NodeId id) const {
    NodeId p = g_.parent(id);
    return p != kNoNode && g_.node(p).kind == NodeKind::Call && is_assignment_name(g_.node(p).name) &&
           g_.argument_index(id) == 1;
  }

  std::vector<Event> events(NodeId decl, const std::vector<NodeId>& uses,
                            const std::vector<NodeId>& child_methods) const {
    std::vector<Event> ev;
    for (NodeId id : uses) {
      if (is_write(id)) {
        ev.push_back({g_.node(g_.parent(id)).span.end_offset, EventKind::Write, id});
      } else {
        ev.push_back({g_.node(id).span.start_offset, EventKind::Read, id});
      }
    }
    for (NodeId child : child_methods) {
      const auto& caps = g_.captures(child);
      if (std::find(caps.begin(), caps.end(), decl) != caps.end()) {
        ev.push_back({g_.node(child).span.start_offset, EventKind::ChildCapture, child});
      }
    }
    std::stable_sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) { return a.position < b.position; });
    return ev;
  }

  Definition rhs_definition(NodeId assignment) const {
    const GraphNode& call = g_.node(assignment);
    Definition def;
    def.scope = scope_;
    if (call.name != "<operator>.assignment") {
      def.kind = DefKind::CallResult;
      def.symbol = call.name;
      def.detail = call.full_name;
      def.span = call.span;
      def.type_name = call.type_full_name;
      return def;
    }
    NodeId rhs = kNoNode;
    for (auto [index, arg] : g_.arguments(assignment)) {
      if (index == 2) rhs = arg;
    }
    while (rhs != kNoNode && g_.node(rhs).kind == NodeKind::Call && g_.node(rhs).name == "<operator>.await") {
      const auto& args = g_.arguments(rhs);
      rhs = args.empty() ? kNoNode : args.front().second;
    }
    if (rhs == kNoNode) return def;
    const GraphNode& r = g_.node(rhs);
    def.span = r.span;
    def.type_name = r.type_full_name;
    switch (r.kind) {
      case NodeKind::Literal:
        def.kind = DefKind::Literal;
        def.detail = r.name;
        break;
      case NodeKind::MethodRef:
        def.kind = DefKind::Literal;
        def.detail = "function";
        break;
      case NodeKind::Identifier:
        if (g_.ref(rhs) != kNoNode) return declaration_definition(g_, g_.ref(rhs), method_);
        def.kind = DefKind::Local;
        def.symbol = r.name;
        def.detail = "unresolved";
        break;
      case NodeKind::MemberAccess:
        def.kind = DefKind::CallResult;
        def.symbol = "<operator>.fieldAccess";
        def.detail = r.full_name;
        break;
      default:
        def.kind = DefKind::CallResult;
        def.symbol = r.name;
        def.detail = r.full_name;
        break;
    }
    return def;
  }

  void add_read(Segment& seg, NodeId id) const {
    seg.has_read = true;
    seg.slice.usages.push_back(g_.node(id).span);
    NodeId p = g_.parent(id);
    if (p == kNoNode) return;
    const GraphNode& parent = g_.node(p);
    int index = g_.argument_index(id);
    if (parent.kind == NodeKind::Call && index >= 0 && !is_operator_name(parent.name)) {
      ObservedCall c;
      c.callee = parent.name;
      c.role = index == 0 ? CallRole::InvokedOn : CallRole::ArgumentTo;
      c.position = index;
      c.span = parent.span;
      for (auto [i, arg] : g_.arguments(p)) {
        if (i >= 1) c.arg_types.push_back(g_.node(arg).type_full_name);
      }
      seg.slice.calls.push_back(std::move(c));
    } else if (parent.kind == NodeKind::MemberAccess) {
      seg.slice.members.push_back({parent.name, parent.span});
    }
  }

  void flush(Segment& seg, std::vector<UsageSlice>& out) const {
    if (!seg.has_read && !seg.child_capture) return;
    seg.slice.low_signal = seg.slice.calls.empty() && seg.slice.members.empty();
    out.push_back(std::move(seg.slice));
  }

  Definition target_of(NodeId decl) const { return declaration_definition(g_, decl, method_); }

  void run_segments(Segment first, bool emit_first, const std::vector<Event>& ev, NodeId decl,
                    std::vector<UsageSlice>& out) {
    Segment seg = std::move(first);
    bool active = emit_first;
    for (const Event& e : ev) {
      switch (e.kind) {
        case EventKind::Read:
          if (active) add_read(seg, e.node);
          break;
        case EventKind::ChildCapture:
          if (active) seg.child_capture = true;
          break;
        case EventKind::Write: {
          if (active) flush(seg, out);
          seg = Segment{};
          seg.slice.scope = scope_;
          seg.slice.target = target_of(decl);
          seg.slice.target.span = g_.node(e.node).span;
          seg.slice.def_source = rhs_definition(g_.parent(e.node));
          active = true;
          break;
        }
      }
    }
    if (active) flush(seg, out);
  }

  void slice_declaration(NodeId decl, const std::vector<NodeId>& uses, const std::vector<NodeId>& child_methods,
                         std::vector<UsageSlice>& out) {
    Segment first;
    first.slice.scope = scope_;
    first.slice.target = target_of(decl);
    first.slice.def_source = first.slice.target;
    run_segments(std::move(first), true, events(decl, uses, child_methods), decl, out);
  }

  // A variable captured from an enclosing method starts with a Capture
  // definition whose target is its first read here.
  void slice_captured(NodeId decl, const std::vector<NodeId>& uses, const std::vector<NodeId>& child_methods,
                      std::vector<UsageSlice>& out) {
    std::vector<Event> ev = events(decl, uses, child_methods);
    Segment first;
    first.slice.scope = scope_;
    first.slice.def_source = target_of(decl);
    first.slice.target = first.slice.def_source;
    bool emit_first = false;
    for (const Event& e : ev) {
      if (e.kind == EventKind::Write) break;
      if (e.kind == EventKind::Read) {
        emit_first = true;
        first.slice.target.span = g_.node(e.node).span;
        break;
      }
    }
    run_segments(std::move(first), emit_first, ev, decl, out);
  }

  const Graph& g_;
  NodeId method_;
  std::string scope_;
};

}  // namespace

std::vector<UsageSlice> extract_slices(const Graph& g) {
  std::vector<UsageSlice> out;
  for (NodeId m : g.methods()) MethodSlicer(g, m).run(out);
  return out;
}

std::vector<ProgramUsageSlice> group_program_slices(const Graph& g, const std::vector<UsageSlice>& slices) {
  std::vector<ProgramUsageSlice> groups;
  for (NodeId m : g.methods()) {
    const GraphNode& method = g.node(m);
    ProgramUsageSlice group;
    for (const UsageSlice& s : slices) {
      if (s.scope == method.full_name) group.slices.push_back(s);
    }
    if (group.slices.empty()) continue;
    group.scope = method.full_name;
    group.source = std::string(g.text(m));
    group.span = method.span;
    group.statement_ends = method.statement_ends;
    groups.push_back(std::move(group));
  }
  return groups;
}

std::vector<Definition> slice_types_with_annotations(const Graph& g) {
  std::vector<Definition> defs;
  for (const GraphNode& n : g.nodes) {
    if (!is_sliced_declaration(n)) continue;
    NodeId m = g.method_of(n.id);
    Definition d = declaration_definition(g, n.id, m);
    d.type_name = n.annotation.value_or(std::string(types::kAny));
    defs.push_back(std::move(d));
  }
  return defs;
}

}  // namespace typeslice
