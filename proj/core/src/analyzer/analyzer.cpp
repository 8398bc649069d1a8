#include "adapt/analyzer/analyzer.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "adapt/error.hpp"
#include "adapt/json_read.hpp"

namespace adapt::analysis {

using res::ResourceDemand;

std::vector<MethodRef> entry_points(const asl::AdaptableProgram& program) {
  std::vector<MethodRef> out = adaptable_methods(program);
  auto add_plain = [&](const std::string& cls, const std::vector<asl::MethodDef>& methods) {
    for (const auto& m : methods) {
      if (m.exported || m.sig.name == "main") out.push_back({cls, m.sig.name});
    }
  };
  for (const auto& c : program.plain_classes) add_plain(c.name, c.methods);
  for (const auto& c : program.adaptable_classes) add_plain(c.name, c.plain_methods);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ResourceAnalyzer::ResourceAnalyzer(const asl::AdaptableProgram& program, const Binding& binding)
    : program_(program), binding_(binding) {}

const asl::MethodDef& ResourceAnalyzer::resolve(const MethodRef& m) const {
  auto find_def = [&](const std::vector<asl::MethodDef>& defs) -> const asl::MethodDef* {
    auto it = std::find_if(defs.begin(), defs.end(),
                           [&](const asl::MethodDef& d) { return d.sig.name == m.method; });
    return it == defs.end() ? nullptr : &*it;
  };
  if (const auto* c = program_.find_plain_class(m.cls)) {
    if (const auto* d = find_def(c->methods)) return *d;
  } else if (const auto* ac = program_.find_adaptable_class(m.cls)) {
    if (const auto* d = find_def(ac->plain_methods)) return *d;
    bool adaptable = std::any_of(ac->adaptable_methods.begin(), ac->adaptable_methods.end(),
                                 [&](const asl::MethodSig& s) { return s.name == m.method; });
    if (adaptable) {
      const std::string* alt_name = binding_.alternative_for(m);
      if (!alt_name) {
        throw Error(Errc::binding, "no binding entry for adaptable method '" + m.str() + "'");
      }
      const auto* alt = program_.find_alternative(*alt_name);
      if (!alt || alt->adapts != m.cls) {
        throw Error(Errc::binding, "'" + *alt_name + "' is not an alternative of '" + m.cls + "'");
      }
      if (const auto* d = find_def(alt->method_defs)) return *d;
      throw Error(Errc::binding,
                  "alternative '" + *alt_name + "' does not define '" + m.method + "'");
    }
  }
  throw Error(Errc::binding, "unknown method '" + m.str() + "'");
}

const ResourceDemand& ResourceAnalyzer::method_demand(const MethodRef& method) {
  if (auto it = memo_.find(method); it != memo_.end()) return it->second;
  if (!in_progress_.insert(method).second) {
    throw Error(Errc::validation, "recursive call through '" + method.str() + "'");
  }
  ResourceDemand d = block_demand(resolve(method).body);
  in_progress_.erase(method);
  return memo_.emplace(method, std::move(d)).first->second;
}

ResourceDemand ResourceAnalyzer::block_demand(const asl::Block& block) {
  ResourceDemand acc;
  for (const auto& s : block) acc = res::seq(acc, stmt_demand(s));
  return acc;
}

ResourceDemand ResourceAnalyzer::stmt_demand(const asl::Stmt& stmt) {
  return std::visit(
      [&](const auto& s) -> ResourceDemand {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, asl::UseStmt>) {
          return ResourceDemand::use(s.resource);
        } else if constexpr (std::is_same_v<T, asl::ConsumeStmt>) {
          return ResourceDemand::consume(s.resource, s.amount);
        } else if constexpr (std::is_same_v<T, asl::ReserveStmt>) {
          return ResourceDemand::reserve(s.resource, s.amount);
        } else if constexpr (std::is_same_v<T, asl::CallStmt>) {
          return method_demand({s.target_class, s.method});
        } else if constexpr (std::is_same_v<T, asl::RepeatStmt>) {
          return res::scale(block_demand(s.body), s.count);
        } else {
          ResourceDemand acc = block_demand(s.branches.front());
          for (std::size_t i = 1; i < s.branches.size(); ++i) {
            acc = res::branch(acc, block_demand(s.branches[i]));
          }
          return acc;
        }
      },
      stmt.node);
}

ResourceDemand analyze_method(const asl::AdaptableProgram& program, const Binding& binding,
                              const MethodRef& method) {
  ResourceAnalyzer analyzer(program, binding);
  return analyzer.method_demand(method);
}

DemandReport analyze_adaptation(const asl::AdaptableProgram& program, const Binding& binding) {
  check_binding(program, binding);
  ResourceAnalyzer analyzer(program, binding);
  DemandReport report;
  for (const auto& ep : entry_points(program)) {
    const ResourceDemand& d = analyzer.method_demand(ep);
    report.presence_union.insert(d.presence.begin(), d.presence.end());
    report.per_entry_point.emplace(ep.str(), d);
  }
  return report;
}

DemandReport analyze_plain(const asl::AdaptableProgram& program) {
  if (!program.is_plain()) {
    throw Error(Errc::validation, "program '" + program.name + "' still has adaptation constructs");
  }
  return analyze_adaptation(program, Binding{});
}

std::string ReportFit::explain() const {
  if (ok) return "fits";
  std::string out;
  for (const auto& [ep, fit] : failing) {
    if (!out.empty()) out += "; ";
    out += ep + ": " + fit.explain();
  }
  return out;
}

ReportFit report_fits(const DemandReport& report, const res::ResourceSupply& supply) {
  ReportFit out;
  for (const auto& [ep, demand] : report.per_entry_point) {
    auto fit = res::fits(demand, supply);
    if (!fit) {
      out.ok = false;
      out.failing.emplace(ep, std::move(fit));
    }
  }
  return out;
}

namespace {

struct ResourceUse {
  res::ResourceKind kind;
  asl::Span span;
};

void collect_uses(const asl::Block& block, std::vector<std::pair<std::string, ResourceUse>>& out) {
  for (const auto& s : block) {
    if (const auto* u = std::get_if<asl::UseStmt>(&s.node)) {
      out.push_back({u->resource, {res::ResourceKind::presence, s.span}});
    } else if (const auto* c = std::get_if<asl::ConsumeStmt>(&s.node)) {
      out.push_back({c->resource, {res::ResourceKind::additive, s.span}});
    } else if (const auto* r = std::get_if<asl::ReserveStmt>(&s.node)) {
      out.push_back({r->resource, {res::ResourceKind::maximal, s.span}});
    } else if (const auto* rep = std::get_if<asl::RepeatStmt>(&s.node)) {
      collect_uses(rep->body, out);
    } else if (const auto* ch = std::get_if<asl::ChooseStmt>(&s.node)) {
      for (const auto& b : ch->branches) collect_uses(b, out);
    }
  }
}

}  // namespace

std::vector<asl::Diagnostic> check_resources(const asl::AdaptableProgram& program,
                                             const res::ResourceProfile* profile) {
  std::vector<std::pair<std::string, ResourceUse>> uses;
  for (const auto& c : program.plain_classes) {
    for (const auto& m : c.methods) collect_uses(m.body, uses);
  }
  for (const auto& c : program.adaptable_classes) {
    for (const auto& m : c.plain_methods) collect_uses(m.body, uses);
  }
  for (const auto& a : program.alternatives) {
    for (const auto& m : a.method_defs) collect_uses(m.body, uses);
  }

  std::vector<asl::Diagnostic> diags;
  std::map<std::string, res::ResourceKind> first_kind;
  std::set<std::string> reported_unknown;
  for (const auto& [name, use] : uses) {
    if (profile) {
      const auto* spec = profile->find(name);
      if (!spec) {
        if (reported_unknown.insert(name).second) {
          diags.push_back({asl::Severity::error, std::string(asl::codes::kUnknownResource),
                           "resource '" + name + "' is not declared in the profile", use.span});
        }
        continue;
      }
      if (spec->kind != use.kind) {
        diags.push_back({asl::Severity::error, std::string(asl::codes::kResourceKind),
                         "resource '" + name + "' is " + res::to_string(spec->kind) +
                             " in the profile but used as " + res::to_string(use.kind),
                         use.span});
      }
      continue;
    }
    auto [it, inserted] = first_kind.emplace(name, use.kind);
    if (!inserted && it->second != use.kind) {
      diags.push_back({asl::Severity::error, std::string(asl::codes::kResourceKind),
                       "resource '" + name + "' used as " + res::to_string(use.kind) +
                           " after being used as " + res::to_string(it->second),
                       use.span});
    }
  }
  return diags;
}

DemandReport read_report(const nlohmann::json& j, const std::string& path) {
  DemandReport r;
  std::string eps_path = json_read::child(path, "per_entry_point");
  const auto& eps = json_read::object(json_read::field(j, "per_entry_point", path), eps_path);
  for (const auto& [ep, d] : eps.items()) {
    r.per_entry_point.emplace(ep, res::read_demand(d, json_read::child(eps_path, ep)));
  }
  std::string pu_path = json_read::child(path, "presence_union");
  const auto& pu = json_read::array(json_read::field(j, "presence_union", path), pu_path);
  for (std::size_t i = 0; i < pu.size(); ++i) {
    r.presence_union.insert(json_read::string(pu[i], json_read::child(pu_path, i)));
  }
  std::set<std::string> expected;
  for (const auto& [ep, d] : r.per_entry_point) expected.insert(d.presence.begin(), d.presence.end());
  if (expected != r.presence_union) {
    json_read::fail(pu_path, "presence_union differs from the union of entry-point presence sets");
  }
  return r;
}

void to_json(nlohmann::json& j, const DemandReport& r) {
  j = nlohmann::json::object();
  j["per_entry_point"] = nlohmann::json::object();
  for (const auto& [ep, d] : r.per_entry_point) j["per_entry_point"][ep] = d;
  j["presence_union"] = nlohmann::json::array();
  for (const auto& p : r.presence_union) j["presence_union"].push_back(p);
}

void from_json(const nlohmann::json& j, DemandReport& r) { r = read_report(j, ""); }

}  // namespace adapt::analysis
