#include "adapt/customizer/descriptor.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "adapt/digest.hpp"
#include "adapt/error.hpp"
#include "adapt/frontend/validate.hpp"
#include "adapt/json_read.hpp"

namespace adapt::customizer {

namespace jr = json_read;

namespace {

std::size_t arity_of(const asl::AdaptableProgram& program, const analysis::MethodRef& m) {
  auto find_in = [&](const std::vector<asl::MethodDef>& defs) -> std::optional<std::size_t> {
    for (const auto& d : defs) {
      if (d.sig.name == m.method) return d.sig.params.size();
    }
    return std::nullopt;
  };
  if (const auto* c = program.find_plain_class(m.cls)) return find_in(c->methods).value_or(0);
  if (const auto* c = program.find_adaptable_class(m.cls)) {
    for (const auto& s : c->adaptable_methods) {
      if (s.name == m.method) return s.params.size();
    }
    return find_in(c->plain_methods).value_or(0);
  }
  return 0;
}

bool is_hex_digest(const std::string& s) {
  return s.size() == 64 && std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

std::string first_error(const std::vector<asl::Diagnostic>& diags) {
  for (const auto& d : diags) {
    if (d.severity == asl::Severity::error) return asl::format_diagnostic(d, "<program>");
  }
  return {};
}

}  // namespace

const PublishedAlternative* ExtendedServiceDescriptor::find(const std::string& key) const {
  auto it = std::find_if(alternatives.begin(), alternatives.end(),
                         [&](const PublishedAlternative& a) { return a.key == key; });
  return it == alternatives.end() ? nullptr : &*it;
}

PublishBundle build_descriptor(const asl::AdaptableProgram& program,
                               const res::ResourceProfile* profile,
                               const analysis::SlsRuleSet& rules,
                               const std::map<std::string, std::string>& metadata,
                               const DescriptorOptions& options) {
  if (program.name.empty()) {
    throw Error(Errc::validation, "program has no service name");
  }
  auto diags = asl::validate(program);
  if (asl::has_errors(diags)) throw Error(Errc::validation, first_error(diags));
  auto res_diags = analysis::check_resources(program, profile);
  if (asl::has_errors(res_diags)) throw Error(Errc::validation, first_error(res_diags));

  std::vector<Candidate> candidates;
  for (auto& binding : enumerate_bindings(program, options.max_bindings)) {
    Candidate c;
    c.report = analysis::analyze_adaptation(program, binding);
    c.offered = analysis::derive_offered_sls(c.report, rules);
    c.binding = std::move(binding);
    candidates.push_back(std::move(c));
  }
  if (options.prune) candidates = prune_dominated(rules.schema(), std::move(candidates));

  PublishBundle bundle;
  auto& d = bundle.descriptor;
  d.service_id = program.name;
  d.functionality.name = program.name;
  for (const auto& ep : analysis::entry_points(program)) {
    d.functionality.entry_points.push_back({ep.str(), arity_of(program, ep)});
  }
  d.schema = rules.schema();
  d.metadata = metadata;
  for (auto& c : candidates) {
    TailoredProgram t = tailor(program, c.binding);
    std::string key = c.binding.key();
    d.alternatives.push_back({key, std::move(c.offered), std::move(c.report), t.digest});
    bundle.artifacts.emplace(std::move(key), std::move(t.source));
  }
  return bundle;
}

void check_descriptor(const ExtendedServiceDescriptor& d, const std::string& path) {
  if (d.functionality.name.empty()) jr::fail(path + "/functionality/name", "must not be empty");
  std::set<std::string> eps;
  for (const auto& ep : d.functionality.entry_points) eps.insert(ep.name);
  std::set<std::string> keys;
  for (std::size_t i = 0; i < d.alternatives.size(); ++i) {
    const auto& alt = d.alternatives[i];
    std::string at = path + "/alternatives/" + std::to_string(i);
    if (alt.key.empty()) jr::fail(at + "/key", "must not be empty");
    if (alt.key.find('/') != std::string::npos) jr::fail(at + "/key", "must not contain '/'");
    if (!keys.insert(alt.key).second) {
      jr::fail(at + "/key", "duplicate alternative_key '" + alt.key + "'");
    }
    for (const auto& [dim, level] : alt.offered_sls.levels) {
      if (!d.schema.contains(dim)) {
        jr::fail(at + "/offered_sls/" + dim, "dimension not in the declared schema");
      }
    }
    std::set<std::string> report_eps;
    for (const auto& [ep, demand] : alt.demand_report.per_entry_point) report_eps.insert(ep);
    if (report_eps != eps) {
      jr::fail(at + "/demand_report/per_entry_point",
               "entry points differ from the functionality's entry points");
    }
    if (!is_hex_digest(alt.artifact_digest)) {
      jr::fail(at + "/artifact_digest", "expected a lower-case hex sha256 digest");
    }
  }
}

void check_bundle(const PublishBundle& b) {
  check_descriptor(b.descriptor, "/descriptor");
  for (std::size_t i = 0; i < b.descriptor.alternatives.size(); ++i) {
    const auto& alt = b.descriptor.alternatives[i];
    auto it = b.artifacts.find(alt.key);
    if (it == b.artifacts.end()) jr::fail("/artifacts/" + alt.key, "missing artifact");
    if (sha256_hex(it->second) != alt.artifact_digest) {
      jr::fail("/descriptor/alternatives/" + std::to_string(i) + "/artifact_digest",
               "does not match the artifact bytes");
    }
  }
  for (const auto& [key, text] : b.artifacts) {
    if (!b.descriptor.find(key)) jr::fail("/artifacts/" + key, "no alternative with this key");
  }
}

ExtendedServiceDescriptor read_descriptor(const nlohmann::json& j, const std::string& path) {
  ExtendedServiceDescriptor d;
  d.service_id = jr::string(jr::field(j, "service_id", path), jr::child(path, "service_id"));

  std::string fpath = jr::child(path, "functionality");
  const auto& f = jr::field(j, "functionality", path);
  d.functionality.name = jr::string(jr::field(f, "name", fpath), jr::child(fpath, "name"));
  std::string eps_path = jr::child(fpath, "entry_points");
  const auto& eps = jr::array(jr::field(f, "entry_points", fpath), eps_path);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    std::string at = jr::child(eps_path, i);
    EntryPointSig sig;
    sig.name = jr::string(jr::field(eps[i], "name", at), jr::child(at, "name"));
    sig.arity = jr::unsigned_int(jr::field(eps[i], "arity", at), jr::child(at, "arity"));
    d.functionality.entry_points.push_back(std::move(sig));
  }

  d.schema = res::read_schema(jr::field(j, "schema", path), jr::child(path, "schema"));

  std::string alts_path = jr::child(path, "alternatives");
  const auto& alts = jr::array(jr::field(j, "alternatives", path), alts_path);
  for (std::size_t i = 0; i < alts.size(); ++i) {
    std::string at = jr::child(alts_path, i);
    PublishedAlternative a;
    a.key = jr::string(jr::field(alts[i], "alternative_key", at), jr::child(at, "alternative_key"));
    a.offered_sls = res::read_sls(jr::field(alts[i], "offered_sls", at), jr::child(at, "offered_sls"));
    a.demand_report = analysis::read_report(jr::field(alts[i], "demand_report", at),
                                            jr::child(at, "demand_report"));
    a.artifact_digest =
        jr::string(jr::field(alts[i], "artifact_digest", at), jr::child(at, "artifact_digest"));
    d.alternatives.push_back(std::move(a));
  }

  if (const auto* m = jr::optional_field(j, "metadata", path)) {
    std::string mpath = jr::child(path, "metadata");
    jr::object(*m, mpath);
    for (const auto& [k, v] : m->items()) d.metadata.emplace(k, jr::string(v, jr::child(mpath, k)));
  }
  check_descriptor(d, path);
  return d;
}

PublishBundle read_bundle(const nlohmann::json& j) {
  PublishBundle b;
  b.descriptor = read_descriptor(jr::field(j, "descriptor", ""), "/descriptor");
  const auto& arts = jr::object(jr::field(j, "artifacts", ""), "/artifacts");
  for (const auto& [k, v] : arts.items()) b.artifacts.emplace(k, jr::string(v, "/artifacts/" + k));
  check_bundle(b);
  return b;
}

std::string artifact_file_name(const std::string& service, const std::string& key) {
  return service + "_" + key + ".asl";
}

std::string canonical_json(const nlohmann::json& j) { return j.dump(); }

void to_json(nlohmann::json& j, const PublishedAlternative& a) {
  j = {{"alternative_key", a.key},
       {"offered_sls", a.offered_sls},
       {"demand_report", a.demand_report},
       {"artifact_digest", a.artifact_digest}};
}

void to_json(nlohmann::json& j, const ExtendedServiceDescriptor& d) {
  nlohmann::json eps = nlohmann::json::array();
  for (const auto& ep : d.functionality.entry_points) {
    eps.push_back({{"name", ep.name}, {"arity", ep.arity}});
  }
  nlohmann::json alts = nlohmann::json::array();
  for (const auto& a : d.alternatives) alts.push_back(a);
  j = {{"service_id", d.service_id},
       {"functionality", {{"name", d.functionality.name}, {"entry_points", std::move(eps)}}},
       {"schema", d.schema},
       {"alternatives", std::move(alts)},
       {"metadata", d.metadata}};
}

void to_json(nlohmann::json& j, const PublishBundle& b) {
  j = {{"descriptor", b.descriptor}, {"artifacts", b.artifacts}};
}

}  // namespace adapt::customizer
