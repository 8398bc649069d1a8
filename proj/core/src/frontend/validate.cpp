#include "adapt/frontend/validate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "adapt/frontend/parser.hpp"

namespace adapt::asl {

namespace {

struct CallSite {
  std::string target;  // "Class.method"
  Span span;
};

class Validator {
 public:
  explicit Validator(const AdaptableProgram& p) : prog_(p) {}

  std::vector<Diagnostic> run() {
    index_classes();
    check_alternatives();
    check_coverage();
    check_calls();
    check_cycles();
    return std::move(diags_);
  }

 private:
  struct ClassInfo {
    bool adaptable = false;
    std::map<std::string, std::size_t> arity;  // every method, adaptable or plain
    std::set<std::string> adaptable_methods;
  };

  void error(std::string_view code, std::string message, Span span) {
    diags_.push_back({Severity::error, std::string(code), std::move(message), span});
  }

  void add_method(ClassInfo& info, const std::string& cls, const MethodSig& sig, Span span) {
    if (!info.arity.emplace(sig.name, sig.params.size()).second) {
      error(codes::kDuplicateDefinition,
            "duplicate method '" + cls + "." + sig.name + "'", span);
    }
  }

  void index_classes() {
    for (const auto& c : prog_.plain_classes) {
      if (classes_.count(c.name)) {
        error(codes::kDuplicateDefinition, "duplicate class '" + c.name + "'", c.span);
        continue;
      }
      ClassInfo& info = classes_[c.name];
      for (const auto& m : c.methods) add_method(info, c.name, m.sig, m.span);
    }
    for (const auto& c : prog_.adaptable_classes) {
      if (classes_.count(c.name)) {
        error(codes::kDuplicateDefinition, "duplicate class '" + c.name + "'", c.span);
        continue;
      }
      ClassInfo& info = classes_[c.name];
      info.adaptable = true;
      for (const auto& s : c.adaptable_methods) {
        add_method(info, c.name, s, s.span);
        info.adaptable_methods.insert(s.name);
      }
      for (const auto& m : c.plain_methods) add_method(info, c.name, m.sig, m.span);
    }
  }

  void check_alternatives() {
    std::set<std::string> seen;
    for (const auto& alt : prog_.alternatives) {
      if (!seen.insert(alt.name).second) {
        error(codes::kDuplicateDefinition, "duplicate alternative '" + alt.name + "'", alt.span);
        continue;
      }
      if (alt.method_defs.empty()) {
        diags_.push_back({Severity::warning, std::string(codes::kUnusedAlternative),
                          "alternative '" + alt.name + "' defines no methods", alt.span});
      }
      auto cls = classes_.find(alt.adapts);
      if (cls == classes_.end()) {
        error(codes::kMissingAdaptsTarget,
              "alternative '" + alt.name + "' adapts unknown class '" + alt.adapts + "'",
              alt.adapts_span);
        continue;
      }
      if (!cls->second.adaptable) {
        error(codes::kMissingAdaptsTarget,
              "alternative '" + alt.name + "' adapts '" + alt.adapts +
                  "', which is not an adaptable class",
              alt.adapts_span);
        continue;
      }
      std::set<std::string> defined;
      for (const auto& m : alt.method_defs) {
        if (!defined.insert(m.sig.name).second) {
          error(codes::kDuplicateDefinition,
                "alternative '" + alt.name + "' defines '" + m.sig.name + "' twice", m.span);
          continue;
        }
        if (!cls->second.adaptable_methods.count(m.sig.name)) {
          error(codes::kSignatureMismatch,
                "'" + alt.name + "." + m.sig.name + "' does not match any adaptable method of '" +
                    alt.adapts + "'",
                m.span);
          continue;
        }
        std::size_t want = cls->second.arity.at(m.sig.name);
        if (want != m.sig.params.size()) {
          error(codes::kSignatureMismatch,
                "'" + alt.name + "." + m.sig.name + "' takes " +
                    std::to_string(m.sig.params.size()) + " parameter(s), declaration takes " +
                    std::to_string(want),
                m.span);
          continue;
        }
        covered_.insert(alt.adapts + "." + m.sig.name);
      }
    }
  }

  void check_coverage() {
    for (const auto& c : prog_.adaptable_classes) {
      for (const auto& s : c.adaptable_methods) {
        if (!covered_.count(c.name + "." + s.name)) {
          error(codes::kUncoveredMethod,
                "adaptable method '" + c.name + "." + s.name + "' has no defining alternative",
                s.span);
        }
      }
    }
  }

  void collect_calls(const Block& block, const std::string& from) {
    for (const auto& stmt : block) {
      if (const auto* call = std::get_if<CallStmt>(&stmt.node)) {
        auto cls = classes_.find(call->target_class);
        std::string target = call->target_class + "." + call->method;
        if (cls == classes_.end() || !cls->second.arity.count(call->method)) {
          error(codes::kUnresolvedCall, "call to unknown method '" + target + "'", stmt.span);
          continue;
        }
        std::size_t want = cls->second.arity.at(call->method);
        if (want != call->args.size()) {
          error(codes::kSignatureMismatch,
                "call to '" + target + "' passes " + std::to_string(call->args.size()) +
                    " argument(s), expected " + std::to_string(want),
                stmt.span);
        }
        graph_[from].push_back({target, stmt.span});
      } else if (const auto* r = std::get_if<RepeatStmt>(&stmt.node)) {
        collect_calls(r->body, from);
      } else if (const auto* ch = std::get_if<ChooseStmt>(&stmt.node)) {
        for (const auto& b : ch->branches) collect_calls(b, from);
      }
    }
  }

  void check_calls() {
    for (const auto& c : prog_.plain_classes) {
      for (const auto& m : c.methods) collect_calls(m.body, c.name + "." + m.sig.name);
    }
    for (const auto& c : prog_.adaptable_classes) {
      for (const auto& m : c.plain_methods) collect_calls(m.body, c.name + "." + m.sig.name);
    }
    // An adaptable method's node carries the calls of every alternative that
    // defines it: any of them may be bound.
    for (const auto& alt : prog_.alternatives) {
      for (const auto& m : alt.method_defs) collect_calls(m.body, alt.adapts + "." + m.sig.name);
    }
  }

  void check_cycles() {
    for (auto& [node, edges] : graph_) {
      std::stable_sort(edges.begin(), edges.end(),
                       [](const CallSite& a, const CallSite& b) { return a.target < b.target; });
    }
    std::map<std::string, int> color;  // 0 white, 1 on stack, 2 done
    std::vector<std::string> stack;
    for (const auto& [node, edges] : graph_) {
      if (color[node] == 0) dfs(node, color, stack);
    }
  }

  void dfs(const std::string& node, std::map<std::string, int>& color,
           std::vector<std::string>& stack) {
    color[node] = 1;
    stack.push_back(node);
    auto it = graph_.find(node);
    if (it != graph_.end()) {
      for (const auto& edge : it->second) {
        int c = color[edge.target];
        if (c == 1) {
          auto from = std::find(stack.begin(), stack.end(), edge.target);
          std::string path;
          for (auto s = from; s != stack.end(); ++s) path += *s + " -> ";
          path += edge.target;
          error(codes::kCallCycle, "call cycle " + path, edge.span);
        } else if (c == 0) {
          dfs(edge.target, color, stack);
        }
      }
    }
    stack.pop_back();
    color[node] = 2;
  }

  const AdaptableProgram& prog_;
  std::vector<Diagnostic> diags_;
  std::map<std::string, ClassInfo> classes_;
  std::set<std::string> covered_;
  std::map<std::string, std::vector<CallSite>> graph_;
};

}  // namespace

std::vector<Diagnostic> validate(const AdaptableProgram& program) {
  return Validator(program).run();
}

std::vector<Diagnostic> check_plain(std::string_view source) {
  ParseResult parsed = parse(source, Dialect::plain);
  if (!parsed.ok()) return parsed.diagnostics;
  std::vector<Diagnostic> diags = std::move(parsed.diagnostics);
  auto more = validate(*parsed.program);
  diags.insert(diags.end(), more.begin(), more.end());
  return diags;
}

}  // namespace adapt::asl
