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

#include "propagation/propagation.h"

#include <algorithm>
#include <regex>
#include <set>
#include <stdexcept>

#include "common/errors.h"
#include "graph/builtin_types.h"

namespace typeslice {

namespace {

bool is_declaration(const GraphNode& n) { return n.kind == NodeKind::Parameter || n.kind == NodeKind::Local; }

// Placeholder constructees produced by annotation masking carry no type.
bool is_placeholder(std::string_view name) {
  static const std::regex kPlaceholder("__OBF[0-9]+");
  return std::regex_match(name.begin(), name.end(), kPlaceholder);
}

bool usable(const std::string& t) { return !t.empty() && !BuiltinTypeSet::is_any(t) && !BuiltinTypeSet::is_nullish(t); }

bool is_comparison(std::string_view op) {
  static const std::set<std::string_view> kOps = {
      "<operator>.equals",        "<operator>.notEquals",        "<operator>.strictEquals",
      "<operator>.strictNotEquals", "<operator>.lessThan",        "<operator>.greaterThan",
      "<operator>.lessEqualsThan", "<operator>.greaterEqualsThan", "<operator>.instanceOf",
      "<operator>.in",            "<operator>.logicalNot"};
  return kOps.count(op) > 0;
}

class Propagator {
 public:
  explicit Propagator(Graph& g) : g_(g) { assign_keys(); }

  PropagationResult run(int iterations) {
    TypeAssignmentMap map;
    seed(map);
    for (int i = 0; i < iterations; ++i) {
      TypeAssignmentMap next = map;
      iterate(map, next);
      if (next == map) break;  // further iterations would repeat this one
      map = std::move(next);
    }
    write_back(map);
    PropagationResult result;
    result.hints = collect_hints(map);
    result.map = std::move(map);
    return result;
  }

  const std::string& key_of(NodeId decl) const { return keys_.at(decl); }

 private:
  void assign_keys() {
    std::map<std::string, int> seen;
    for (const GraphNode& n : g_.nodes) {
      if (!is_declaration(n)) continue;
      std::string key = g_.node(g_.method_of(n.id)).full_name + "." + n.name;
      int count = ++seen[key];
      keys_[n.id] = count == 1 ? key : key + "#" + std::to_string(count);
    }
  }

  std::string return_key(NodeId method) const { return g_.node(method).full_name + ".<return>"; }

  std::string field_key(NodeId member) const {
    return g_.node(g_.method_of(member)).full_name + "." + g_.node(member).full_name;
  }

  void seed(TypeAssignmentMap& map) const {
    for (const GraphNode& n : g_.nodes) {
      if (is_declaration(n) && usable(n.type_full_name)) map.add(keys_.at(n.id), n.type_full_name);
      if (n.kind == NodeKind::Method && n.annotation && usable(*n.annotation)) {
        map.add(return_key(n.id), *n.annotation);
      }
    }
  }

  static std::string singleton(const TypeAssignmentMap& map, const std::string& key) {
    const auto* set = map.find(key);
    return set && set->size() == 1 ? set->front() : std::string(types::kAny);
  }

  // Type of a declaration as seen by readers: its annotation, else a type
  // already on the node, else its singleton set.
  std::string declaration_type(const TypeAssignmentMap& map, NodeId decl) const {
    const GraphNode& d = g_.node(decl);
    if (d.annotation) return *d.annotation;
    if (usable(d.type_full_name)) return d.type_full_name;
    return singleton(map, keys_.at(decl));
  }

  NodeId argument(NodeId call, int index) const {
    for (auto [i, arg] : g_.arguments(call)) {
      if (i == index) return arg;
    }
    return kNoNode;
  }

  std::string type_of(const TypeAssignmentMap& map, NodeId id) const {
    const GraphNode& n = g_.node(id);
    switch (n.kind) {
      case NodeKind::Literal:
        return std::string(literal_type(n.name, g_.text(id)));
      case NodeKind::Identifier:
        return g_.ref(id) == kNoNode ? std::string(types::kAny) : declaration_type(map, g_.ref(id));
      case NodeKind::MemberAccess:
        return singleton(map, field_key(id));
      case NodeKind::Call: {
        if (n.name.rfind("new ", 0) == 0) {
          std::string constructee = n.name.substr(4);
          return is_placeholder(constructee) ? std::string(types::kAny) : constructee;
        }
        if (g_.call_target(id) != kNoNode) return singleton(map, return_key(g_.call_target(id)));
        if (is_comparison(n.name)) return std::string(types::kBoolean);
        if (n.name == "<operator>.typeOf") return std::string(types::kString);
        if (n.name == "<operator>.addition") {
          std::string a = type_of(map, argument(id, 1));
          std::string b = type_of(map, argument(id, 2));
          if (a == types::kString || b == types::kString) return std::string(types::kString);
          if (a == types::kInteger && b == types::kInteger) return std::string(types::kInteger);
          return std::string(types::kAny);
        }
        if (n.name == "<operator>.conditional") {
          std::string a = type_of(map, argument(id, 2));
          return a == type_of(map, argument(id, 3)) ? a : std::string(types::kAny);
        }
        if (is_assignment_name(n.name) && n.name == "<operator>.assignment") return type_of(map, argument(id, 2));
        return std::string(types::kAny);
      }
      default:
        return std::string(types::kAny);
    }
  }

  void add(TypeAssignmentMap& next, const std::string& key, const std::string& t) const {
    if (usable(t)) next.add(key, t);
  }

  void iterate(const TypeAssignmentMap& prev, TypeAssignmentMap& next) const {
    for (const GraphNode& n : g_.nodes) {
      if (n.kind == NodeKind::Call && n.name == "<operator>.assignment") {
        NodeId lhs = argument(n.id, 1);
        NodeId rhs = argument(n.id, 2);
        if (lhs == kNoNode || rhs == kNoNode) continue;
        const GraphNode& target = g_.node(lhs);
        if (target.kind == NodeKind::Identifier && g_.ref(lhs) != kNoNode) {
          add(next, keys_.at(g_.ref(lhs)), type_of(prev, rhs));
        } else if (target.kind == NodeKind::MemberAccess) {
          add(next, field_key(lhs), type_of(prev, rhs));
        }
      } else if (n.kind == NodeKind::Parameter) {
        for (NodeId c : g_.children(n.id)) add(next, keys_.at(n.id), type_of(prev, c));
      } else if (n.kind == NodeKind::Return) {
        NodeId method = g_.method_of(n.id);
        for (NodeId c : g_.children(n.id)) add(next, return_key(method), type_of(prev, c));
      } else if (n.kind == NodeKind::Call && g_.call_target(n.id) != kNoNode) {
        NodeId callee = g_.call_target(n.id);
        std::vector<NodeId> params = parameters(callee);
        for (auto [index, arg] : g_.arguments(n.id)) {
          if (index >= 1 && static_cast<size_t>(index) <= params.size()) {
            add(next, keys_.at(params[index - 1]), type_of(prev, arg));
          }
        }
      }
    }
  }

  std::vector<NodeId> parameters(NodeId method) const {
    std::vector<NodeId> params;
    for (NodeId c : g_.children(method)) {
      if (g_.node(c).kind == NodeKind::Parameter) params.push_back(c);
    }
    return params;
  }

  void write_back(const TypeAssignmentMap& map) {
    for (GraphNode& n : g_.nodes) {
      if (is_declaration(n) && !usable(n.type_full_name)) {
        std::string t = singleton(map, keys_.at(n.id));
        if (usable(t)) n.type_full_name = t;
      }
    }
    for (GraphNode& n : g_.nodes) {
      if (!BuiltinTypeSet::is_any(n.type_full_name)) continue;
      if (n.kind == NodeKind::Identifier || n.kind == NodeKind::Literal || n.kind == NodeKind::Call ||
          n.kind == NodeKind::MemberAccess) {
        std::string t = type_of(map, n.id);
        if (!BuiltinTypeSet::is_any(t)) n.type_full_name = t;
      }
    }
  }

  std::vector<TypeHint> collect_hints(const TypeAssignmentMap& map) const {
    std::vector<TypeHint> hints;
    std::set<std::tuple<int, std::string, int, std::string>> seen;
    auto push = [&](TypeHint h) {
      if (seen.insert({static_cast<int>(h.subject), h.method, h.index, h.type_name}).second) {
        hints.push_back(std::move(h));
      }
    };
    for (const GraphNode& n : g_.nodes) {
      if (n.kind != NodeKind::Call || g_.call_target(n.id) == kNoNode) continue;
      NodeId callee = g_.call_target(n.id);
      const std::string& name = g_.node(callee).full_name;
      for (auto [index, arg] : g_.arguments(n.id)) {
        std::string t = type_of(map, arg);
        if (index >= 1 && usable(t)) push({HintSubject::ParameterOf, name, index - 1, t, HintProvenance::CallSiteArgument});
      }
      if (const auto* ret = map.find(return_key(callee))) {
        HintProvenance p = g_.node(callee).annotation ? HintProvenance::Annotation : HintProvenance::CallSiteResult;
        for (const std::string& t : *ret) push({HintSubject::ReturnOf, name, -1, t, p});
      }
    }
    return hints;
  }

  Graph& g_;
  std::map<NodeId, std::string> keys_;
};

std::string_view to_string(HintProvenance p) {
  switch (p) {
    case HintProvenance::Annotation: return "Annotation";
    case HintProvenance::Assignment: return "Assignment";
    case HintProvenance::CallSiteArgument: return "CallSiteArgument";
    case HintProvenance::CallSiteResult: return "CallSiteResult";
    case HintProvenance::Inference: return "Inference";
  }
  return "";
}

}  // namespace

bool TypeAssignmentMap::add(const std::string& key, const std::string& type_name) {
  auto& set = entries[key];
  if (std::find(set.begin(), set.end(), type_name) != set.end()) return false;
  set.push_back(type_name);
  return true;
}

const std::vector<std::string>* TypeAssignmentMap::find(const std::string& key) const {
  auto it = entries.find(key);
  return it == entries.end() ? nullptr : &it->second;
}

PropagationResult propagate(Graph& g, int iterations) {
  if (iterations < 1) throw std::invalid_argument("iterations must be at least 1");
  return Propagator(g).run(iterations);
}

NodeId find_declaration(const Graph& g, const std::string& scope, const std::string& symbol, const SourceSpan& span) {
  NodeId method = kNoNode;
  for (NodeId m : g.methods()) {
    if (g.node(m).full_name == scope) method = m;
  }
  if (method == kNoNode) return kNoNode;
  for (const GraphNode& n : g.nodes) {
    if (n.span.start_offset != span.start_offset || n.span.end_offset != span.end_offset || n.name != symbol) continue;
    if (n.kind == NodeKind::Identifier && g.ref(n.id) != kNoNode) return g.ref(n.id);
    if (is_declaration(n)) return n.id;
  }
  for (NodeId c : g.children(method)) {
    if (is_declaration(g.node(c)) && g.node(c).name == symbol) return c;
  }
  for (NodeId c : g.captures(method)) {
    if (g.node(c).name == symbol) return c;
  }
  return kNoNode;
}

int repropagate_with_inferences(Graph& g, const std::vector<TypeAssignment>& accepted, int iterations,
                                PropagationResult* result) {
  if (accepted.empty()) return 0;
  int written = 0;
  for (const TypeAssignment& a : accepted) {
    NodeId decl = find_declaration(g, a.scope, a.symbol, a.span);
    if (decl == kNoNode) continue;
    GraphNode& d = g.node(decl);
    if (d.annotation && *d.annotation != a.type_name) {
      throw ConflictError("prediction " + a.type_name + " for " + a.scope + "." + a.symbol +
                          " conflicts with annotation " + *d.annotation);
    }
    if (!BuiltinTypeSet::is_any(d.type_full_name)) continue;
    d.type_full_name = a.type_name;
    ++written;
  }
  PropagationResult r = propagate(g, iterations);
  if (result) *result = std::move(r);
  return written;
}

Json typemap_to_json(const TypeAssignmentMap& map) {
  Json j = Json::object();
  for (const auto& [key, set] : map.entries) j[key] = set;
  return j;
}

TypeAssignmentMap typemap_from_json(const Json& j) {
  TypeAssignmentMap map;
  try {
    for (const auto& [key, set] : j.items()) {
      for (const Json& t : set) map.add(key, t.get<std::string>());
    }
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed type map: ") + e.what());
  }
  return map;
}

Json hints_to_json(const std::vector<TypeHint>& hints) {
  Json a = Json::array();
  for (const TypeHint& h : hints) {
    Json o;
    o["subject"] = h.subject == HintSubject::ParameterOf ? "ParameterOf" : "ReturnOf";
    o["method"] = h.method;
    if (h.subject == HintSubject::ParameterOf) o["index"] = h.index;
    o["type"] = h.type_name;
    o["provenance"] = to_string(h.provenance);
    a.push_back(std::move(o));
  }
  return a;
}

}  // namespace typeslice
