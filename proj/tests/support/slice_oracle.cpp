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

#include "support/slice_oracle.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "frontend/parser.h"

namespace typeslice::testing {

namespace {

std::string collapse_spaces(std::string_view text) {
  std::string out;
  bool gap = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      gap = !out.empty();
      continue;
    }
    if (gap) out.push_back(' ');
    gap = false;
    out.push_back(c);
  }
  return out;
}

struct Method {
  std::string full_name;
  int parent = -1;
  SourceSpan span;
};

struct Decl {
  std::string name;
  SourceSpan span;
  int owner = 0;
  std::string kind;  // let, const, var, param, function, import
  int param_index = -1;
  std::optional<std::string> annotation;
};

enum class Context { Plain, Member, CallArgument };

struct Use {
  const AstNode* id = nullptr;
  int method = 0;
  int decl = -1;
  bool write = false;
  const AstNode* writer = nullptr;  // Assignment or VarDecl
  Context context = Context::Plain;
  const AstNode* owner = nullptr;   // MemberAccess, Call or New
  int position = 0;
};

struct Frame {
  std::map<std::string, int> symbols;
  bool function_scope = false;
  int method = 0;
};

class Oracle {
 public:
  Oracle(std::string_view source, std::string file) : source_(source), file_(std::move(file)) {}

  std::vector<UsageSlice> run() {
    parsed_ = parse(source_);
    const AstNode& program = parsed_.program;
    methods_.push_back({file_ + "::program", -1, program.span});
    method_names_.insert(methods_[0].full_name);
    frames_.push_back({{}, true, 0});
    predeclare(program.children);
    for (const AstNode& s : program.children) statement(s, 0);
    frames_.pop_back();

    std::vector<UsageSlice> out;
    for (int m = 0; m < static_cast<int>(methods_.size()); ++m) slice_method(m, out);
    return out;
  }

 private:
  // ---- scopes ----

  Frame& function_frame() {
    for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
      if (it->function_scope) return *it;
    }
    return frames_.front();
  }

  void declare(Frame& frame, const std::string& name, const SourceSpan& span, const std::string& kind,
               const std::optional<std::string>& annotation, int param_index = -1) {
    if (frame.symbols.count(name)) return;
    decls_.push_back({name, span, frame.method, kind, param_index, annotation});
    frame.symbols[name] = static_cast<int>(decls_.size()) - 1;
  }

  void predeclare_vars(const AstNode& s) {
    if (s.kind == AstKind::Block) {
      for (const AstNode& c : s.children) {
        if (c.kind == AstKind::VarDecl && c.declarator == DeclaratorKind::Var) {
          declare(function_frame(), c.name, c.children[0].span, "var", c.annotation);
        }
        predeclare_vars(c);
      }
    } else if (s.kind == AstKind::If) {
      for (size_t i = 1; i < s.children.size(); ++i) predeclare_vars(s.children[i]);
    }
  }

  void predeclare(const std::vector<AstNode>& statements) {
    for (const AstNode& s : statements) {
      if (s.kind == AstKind::VarDecl) {
        Frame& target = s.declarator == DeclaratorKind::Var ? function_frame() : frames_.back();
        std::string kind = s.declarator == DeclaratorKind::Var ? "var"
                           : s.declarator == DeclaratorKind::Let ? "let"
                                                                 : "const";
        declare(target, s.name, s.children[0].span, kind, s.annotation);
      } else if (s.kind == AstKind::FunctionDecl && !s.name.empty()) {
        declare(frames_.back(), s.name, function_name_span(s), "function", std::nullopt);
      } else if (s.kind == AstKind::Import) {
        for (const AstNode& id : s.children) declare(frames_.back(), id.name, id.span, "import", std::nullopt);
      }
      predeclare_vars(s);
    }
  }

  SourceSpan function_name_span(const AstNode& fn) const {
    std::string_view text = source_.substr(fn.span.start_offset, fn.span.length());
    size_t keyword = text.find("function");
    size_t at = text.find(fn.name, keyword == std::string_view::npos ? 0 : keyword + 8);
    uint32_t start = fn.span.start_offset + static_cast<uint32_t>(at);
    return LineIndex(source_).span(start, start + static_cast<uint32_t>(fn.name.size()), fn.span.file_id);
  }

  int resolve(const std::string& name, int use_method) {
    for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
      auto found = it->symbols.find(name);
      if (found == it->symbols.end()) continue;
      int decl = found->second;
      for (int m = use_method; m != decls_[decl].owner && m != -1; m = methods_[m].parent) {
        captures_[m].insert(decl);
      }
      return decl;
    }
    return -1;
  }

  // ---- walk ----

  void statement(const AstNode& s, int method) {
    switch (s.kind) {
      case AstKind::VarDecl: {
        size_t fixed = s.annotation ? 2 : 1;
        if (s.children.size() <= fixed) return;
        record_use(s.children[0], method, true, &s);
        expression(s.children.back(), method, s.name);
        return;
      }
      case AstKind::FunctionDecl:
        function(s, method, s.name);
        return;
      case AstKind::Return:
        if (!s.children.empty()) expression(s.children[0], method, "");
        return;
      case AstKind::If:
        expression(s.children[0], method, "");
        for (size_t i = 1; i < s.children.size(); ++i) statement(s.children[i], method);
        return;
      case AstKind::Block:
        frames_.push_back({{}, false, method});
        predeclare(s.children);
        for (const AstNode& c : s.children) statement(c, method);
        frames_.pop_back();
        return;
      case AstKind::Import:
        return;
      default:
        expression(s, method, "");
        return;
    }
  }

  void function(const AstNode& fn, int enclosing, const std::string& hint) {
    std::string name = !fn.name.empty() ? fn.name : hint;
    if (name.empty()) {
      name = anonymous_ == 0 ? "anonymous" : "anonymous" + std::to_string(anonymous_);
      ++anonymous_;
    }
    std::string full = methods_[enclosing].full_name + ":" + name;
    if (method_names_.count(full)) {
      int k = 1;
      while (method_names_.count(full + std::to_string(k))) ++k;
      full += std::to_string(k);
    }
    method_names_.insert(full);
    methods_.push_back({full, enclosing, fn.span});
    int method = static_cast<int>(methods_.size()) - 1;

    frames_.push_back({{}, true, method});
    int index = 0;
    for (const AstNode& c : fn.children) {
      if (c.kind != AstKind::Param) continue;
      declare(frames_.back(), c.name, c.children[0].span, "param", c.annotation, index++);
      size_t fixed = c.annotation ? 2 : 1;
      if (c.children.size() > fixed) expression(c.children.back(), method, "");
    }
    const AstNode& body = fn.body();
    predeclare(body.children);
    for (const AstNode& s : body.children) statement(s, method);
    frames_.pop_back();
  }

  void record_use(const AstNode& id, int method, bool write, const AstNode* writer, Context context = Context::Plain,
                  const AstNode* owner = nullptr, int position = 0) {
    int decl = resolve(id.name, method);
    if (decl < 0) return;
    Use u;
    u.id = &id;
    u.method = method;
    u.decl = decl;
    u.write = write;
    u.writer = writer;
    u.context = context;
    u.owner = owner;
    u.position = position;
    uses_.push_back(u);
    resolved_[&id] = decl;
  }

  // `e` appearing as argument `position` of `call` (0 = receiver).
  void argument(const AstNode& e, int method, const AstNode& call, int position) {
    if (e.kind == AstKind::Identifier) {
      record_use(e, method, false, nullptr, Context::CallArgument, &call, position);
    } else {
      expression(e, method, "");
    }
  }

  void expression(const AstNode& e, int method, const std::string& hint) {
    switch (e.kind) {
      case AstKind::Identifier:
        record_use(e, method, false, nullptr);
        return;
      case AstKind::FunctionDecl:
      case AstKind::ArrowFunction:
        function(e, method, hint);
        return;
      case AstKind::MemberAccess: {
        const AstNode& object = e.children[0];
        if (object.kind == AstKind::Identifier) {
          record_use(object, method, false, nullptr, Context::Member, &e);
        } else {
          expression(object, method, "");
        }
        return;
      }
      case AstKind::Assignment: {
        const AstNode& target = e.children[0];
        if (target.kind == AstKind::Identifier) {
          record_use(target, method, true, &e);
        } else {
          expression(target, method, "");
        }
        expression(e.children[1], method, target.kind == AstKind::Identifier ? target.name : "");
        return;
      }
      case AstKind::New:
        expression(e.children[0], method, "");
        for (size_t i = 1; i < e.children.size(); ++i) argument(e.children[i], method, e, static_cast<int>(i));
        return;
      case AstKind::Call: {
        if (e.is_operator_call()) {
          for (const AstNode& c : e.children) expression(c, method, "");
          return;
        }
        const AstNode& callee = e.children[0];
        if (callee.kind == AstKind::MemberAccess) {
          argument(callee.children[0], method, e, 0);
        } else {
          expression(callee, method, "");
        }
        for (size_t i = 1; i < e.children.size(); ++i) argument(e.children[i], method, e, static_cast<int>(i));
        return;
      }
      case AstKind::TypeAnnotation:
        return;
      default:
        for (const AstNode& c : e.children) expression(c, method, "");
        return;
    }
  }

  // ---- slicing ----

  Definition declaration_definition(int decl, int method) const {
    const Decl& d = decls_[decl];
    Definition def;
    def.symbol = d.name;
    def.type_name = d.annotation.value_or("ANY");
    def.span = d.span;
    def.scope = methods_[d.owner].full_name;
    if (d.owner != method) {
      def.kind = DefKind::Capture;
    } else if (d.kind == "param") {
      def.kind = DefKind::Parameter;
      def.detail = std::to_string(d.param_index);
    } else {
      def.kind = DefKind::Local;
    }
    return def;
  }

  std::string call_name(const AstNode& call) const {
    if (call.kind == AstKind::New) return "new " + call.name;
    if (call.kind == AstKind::Assignment) return assignment_name(call.op);
    return call.name;
  }

  static std::string assignment_name(const std::string& op) {
    static const std::map<std::string, std::string> kSuffix = {
        {"=", ""},          {"+=", "Plus"},   {"-=", "Minus"},       {"*=", "Multiplication"},
        {"/=", "Division"}, {"%=", "Modulo"}, {"**=", "Exponentiation"}, {"?\?=", "Nullish"},
        {"||=", "LogicalOr"}, {"&&=", "LogicalAnd"}, {"<<=", "ShiftLeft"}, {">>=", "ArithmeticShiftRight"},
        {">>>=", "LogicalShiftRight"}, {"&=", "And"}, {"|=", "Or"}, {"^=", "Xor"}};
    auto it = kSuffix.find(op);
    return "<operator>.assignment" + (it == kSuffix.end() ? std::string() : it->second);
  }

  Definition source_definition(const AstNode& writer, int method) const {
    Definition def;
    def.scope = methods_[method].full_name;
    const AstNode* rhs = nullptr;
    if (writer.kind == AstKind::VarDecl) {
      rhs = &writer.children.back();
    } else {
      if (writer.op != "=") {
        def.kind = DefKind::CallResult;
        def.symbol = assignment_name(writer.op);
        def.detail = def.symbol;
        def.span = writer.span;
        return def;
      }
      rhs = &writer.children[1];
    }
    while (rhs && rhs->kind == AstKind::Call && rhs->name == "<operator>.await") {
      rhs = rhs->children.empty() ? nullptr : &rhs->children[0];
    }
    if (!rhs) return def;
    def.span = rhs->span;
    switch (rhs->kind) {
      case AstKind::StringLit: def.kind = DefKind::Literal; def.detail = "string"; break;
      case AstKind::NumberLit: def.kind = DefKind::Literal; def.detail = "number"; break;
      case AstKind::BoolLit: def.kind = DefKind::Literal; def.detail = "boolean"; break;
      case AstKind::NullLit: def.kind = DefKind::Literal; def.detail = "null"; break;
      case AstKind::ObjectLit: def.kind = DefKind::Literal; def.detail = "object"; break;
      case AstKind::ArrayLit: def.kind = DefKind::Literal; def.detail = "array"; break;
      case AstKind::FunctionDecl:
      case AstKind::ArrowFunction: def.kind = DefKind::Literal; def.detail = "function"; break;
      case AstKind::Identifier: {
        auto it = resolved_.find(rhs);
        if (it != resolved_.end()) return declaration_definition(it->second, method);
        def.kind = DefKind::Local;
        def.symbol = rhs->name;
        def.detail = "unresolved";
        break;
      }
      case AstKind::MemberAccess:
        def.kind = DefKind::CallResult;
        def.symbol = "<operator>.fieldAccess";
        def.detail = collapse_spaces(source_.substr(rhs->span.start_offset, rhs->span.length()));
        break;
      case AstKind::Call:
      case AstKind::New:
      case AstKind::Assignment: {
        def.kind = DefKind::CallResult;
        def.symbol = call_name(*rhs);
        if (rhs->kind == AstKind::Call && !rhs->is_operator_call()) {
          const SourceSpan& c = rhs->children[0].span;
          def.detail = collapse_spaces(source_.substr(c.start_offset, c.length()));
        } else {
          def.detail = def.symbol;
        }
        break;
      }
      default:
        def.kind = DefKind::Literal;
        def.detail = "unknown";
        break;
    }
    return def;
  }

  struct Event {
    uint32_t position;
    int kind;  // 0 read, 1 write, 2 child capture
    const Use* use;
  };

  struct Segment {
    UsageSlice slice;
    bool has_read = false;
    bool child_capture = false;
  };

  void add_read(Segment& seg, const Use& u) const {
    seg.has_read = true;
    seg.slice.usages.push_back(u.id->span);
    if (u.context == Context::Member) {
      seg.slice.members.push_back({u.owner->name, u.owner->span});
    } else if (u.context == Context::CallArgument) {
      ObservedCall c;
      c.callee = call_name(*u.owner);
      c.role = u.position == 0 ? CallRole::InvokedOn : CallRole::ArgumentTo;
      c.position = u.position;
      c.span = u.owner->span;
      c.arg_types.assign(u.owner->children.size() - 1, "ANY");
      seg.slice.calls.push_back(std::move(c));
    }
  }

  static void flush(Segment& seg, std::vector<UsageSlice>& out) {
    if (!seg.has_read && !seg.child_capture) return;
    seg.slice.low_signal = seg.slice.calls.empty() && seg.slice.members.empty();
    out.push_back(std::move(seg.slice));
  }

  void slice_method(int method, std::vector<UsageSlice>& out) const {
    std::set<int> candidates;
    for (int d = 0; d < static_cast<int>(decls_.size()); ++d) {
      if (decls_[d].owner == method) candidates.insert(d);
    }
    auto caps = captures_.find(method);
    if (caps != captures_.end()) candidates.insert(caps->second.begin(), caps->second.end());

    for (int decl : candidates) {
      const Decl& d = decls_[decl];
      if (d.kind == "function" || d.kind == "import") continue;

      std::vector<const Use*> mine;
      for (const Use& u : uses_) {
        if (u.decl == decl && u.method == method) mine.push_back(&u);
      }
      std::stable_sort(mine.begin(), mine.end(),
                       [](const Use* a, const Use* b) { return a->id->span.start_offset < b->id->span.start_offset; });
      std::vector<Event> events;
      for (const Use* u : mine) {
        if (u->write) {
          events.push_back({u->writer->span.end_offset, 1, u});
        } else {
          events.push_back({u->id->span.start_offset, 0, u});
        }
      }
      std::vector<uint32_t> child_starts;
      for (int c = 0; c < static_cast<int>(methods_.size()); ++c) {
        if (methods_[c].parent != method) continue;
        auto cc = captures_.find(c);
        if (cc != captures_.end() && cc->second.count(decl)) child_starts.push_back(methods_[c].span.start_offset);
      }
      std::sort(child_starts.begin(), child_starts.end());
      for (uint32_t start : child_starts) events.push_back({start, 2, nullptr});
      std::stable_sort(events.begin(), events.end(),
                       [](const Event& a, const Event& b) { return a.position < b.position; });

      Definition target = declaration_definition(decl, method);
      Segment seg;
      seg.slice.scope = methods_[method].full_name;
      seg.slice.target = target;
      seg.slice.def_source = target;
      bool active = true;
      if (d.owner != method) {
        active = false;
        for (const Event& e : events) {
          if (e.kind == 1) break;
          if (e.kind == 0) {
            active = true;
            seg.slice.target.span = e.use->id->span;
            break;
          }
        }
      }
      for (const Event& e : events) {
        if (e.kind == 0) {
          if (active) add_read(seg, *e.use);
        } else if (e.kind == 2) {
          if (active) seg.child_capture = true;
        } else {
          if (active) flush(seg, out);
          seg = Segment{};
          seg.slice.scope = methods_[method].full_name;
          seg.slice.target = target;
          seg.slice.target.span = e.use->id->span;
          seg.slice.def_source = source_definition(*e.use->writer, method);
          active = true;
        }
      }
      if (active) flush(seg, out);
    }
  }

  std::string_view source_;
  std::string file_;
  ParseResult parsed_;
  std::vector<Method> methods_;
  std::set<std::string> method_names_;
  std::vector<Decl> decls_;
  std::vector<Frame> frames_;
  std::vector<Use> uses_;
  std::map<const AstNode*, int> resolved_;
  std::map<int, std::set<int>> captures_;
  int anonymous_ = 0;
};

std::string span_text(const SourceSpan& s) {
  std::ostringstream o;
  o << s.start_offset << "-" << s.end_offset << "@" << s.start_line << ":" << s.start_col << "-" << s.end_line << ":"
    << s.end_col;
  return o.str();
}

std::string definition_text(const Definition& d) {
  return "{" + d.symbol + "|" + d.type_name + "|" + std::string(to_string(d.kind)) + "|" + d.detail + "|" +
         span_text(d.span) + "|" + d.scope + "}";
}

}  // namespace

std::vector<UsageSlice> oracle_slices(std::string_view source, const std::string& file) {
  return Oracle(source, file).run();
}

std::string canonical_slices(const std::vector<UsageSlice>& slices) {
  std::vector<std::string> lines;
  for (const UsageSlice& s : slices) {
    std::string line = s.scope + " target=" + definition_text(s.target) + " def=" + definition_text(s.def_source);
    line += " calls=[";
    for (const ObservedCall& c : s.calls) {
      line += "(" + c.callee + "," + std::string(to_string(c.role)) + "," + std::to_string(c.position) + "," +
              span_text(c.span) + ",";
      for (const std::string& t : c.arg_types) line += t + ";";
      line += ")";
    }
    line += "] members=[";
    for (const MemberRead& m : s.members) line += "(" + m.name + "," + span_text(m.span) + ")";
    line += "] usages=[";
    for (const SourceSpan& u : s.usages) line += span_text(u) + ",";
    line += "] low_signal=" + std::string(s.low_signal ? "1" : "0");
    lines.push_back(std::move(line));
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const std::string& l : lines) out += l + "\n";
  return out;
}

}  // namespace typeslice::testing
