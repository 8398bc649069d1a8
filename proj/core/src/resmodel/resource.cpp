#include "adapt/resmodel/resource.hpp"

#include <algorithm>

#include "adapt/error.hpp"
#include "adapt/json_read.hpp"

namespace adapt::res {

namespace {

Quantity checked_add(Quantity a, Quantity b, const std::string& name) {
  Quantity r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw Error(Errc::overflow, "demand out of range for resource '" + name + "'");
  }
  return r;
}

Quantity checked_mul(Quantity a, Quantity k, const std::string& name) {
  Quantity r;
  if (__builtin_mul_overflow(a, k, &r)) {
    throw Error(Errc::overflow, "demand out of range for resource '" + name + "'");
  }
  return r;
}

Quantity lookup(const std::map<std::string, Quantity>& m, const std::string& name) {
  auto it = m.find(name);
  return it == m.end() ? 0 : it->second;
}

template <typename Merge>
std::map<std::string, Quantity> merge(const std::map<std::string, Quantity>& a,
                                      const std::map<std::string, Quantity>& b, Merge f) {
  std::map<std::string, Quantity> out = a;
  for (const auto& [name, q] : b) {
    auto [it, inserted] = out.emplace(name, q);
    if (!inserted) it->second = f(it->second, q, name);
  }
  return out;
}

std::map<std::string, Quantity> read_quantities(const nlohmann::json& j, const std::string& path) {
  json_read::object(j, path);
  std::map<std::string, Quantity> out;
  for (const auto& [k, v] : j.items()) {
    Quantity q = json_read::unsigned_int(v, json_read::child(path, k));
    if (q != 0) out.emplace(k, q);
  }
  return out;
}

std::set<std::string> read_names(const nlohmann::json& j, const std::string& path) {
  json_read::array(j, path);
  std::set<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.insert(json_read::string(j[i], json_read::child(path, i)));
  }
  return out;
}

}  // namespace

std::string to_string(ResourceKind kind) {
  switch (kind) {
    case ResourceKind::additive: return "Additive";
    case ResourceKind::maximal: return "Maximal";
    case ResourceKind::presence: return "Presence";
  }
  return "?";
}

ResourceKind resource_kind_from_string(const std::string& s) {
  if (s == "Additive") return ResourceKind::additive;
  if (s == "Maximal") return ResourceKind::maximal;
  if (s == "Presence") return ResourceKind::presence;
  throw Error(Errc::validation, "unknown resource kind '" + s + "'");
}

ResourceProfile::ResourceProfile(std::vector<ResourceSpec> specs) : specs_(std::move(specs)) {
  std::set<std::string> seen;
  for (const auto& s : specs_) {
    if (!seen.insert(s.name).second) {
      throw Error(Errc::config, "resource '" + s.name + "' declared twice in profile");
    }
  }
}

const ResourceSpec* ResourceProfile::find(const std::string& name) const {
  auto it = std::find_if(specs_.begin(), specs_.end(),
                         [&](const ResourceSpec& s) { return s.name == name; });
  return it == specs_.end() ? nullptr : &*it;
}

ResourceDemand ResourceDemand::consume(const std::string& name, Quantity n) {
  ResourceDemand d;
  if (n) d.additive.emplace(name, n);
  return d;
}

ResourceDemand ResourceDemand::reserve(const std::string& name, Quantity n) {
  ResourceDemand d;
  if (n) d.maximal.emplace(name, n);
  return d;
}

ResourceDemand ResourceDemand::use(const std::string& name) {
  ResourceDemand d;
  d.presence.insert(name);
  return d;
}

std::string FitResult::explain() const {
  if (ok) return "fits";
  std::string out;
  for (const auto& f : failures) {
    if (!out.empty()) out += "; ";
    if (f.kind == ResourceKind::presence) {
      out += f.resource + ": capability required but not supplied";
    } else {
      out += f.resource + " (" + to_string(f.kind) + "): demanded " + std::to_string(f.demanded) +
             ", supplied " + std::to_string(f.supplied);
    }
  }
  return out;
}

FitResult fits(const ResourceDemand& demand, const ResourceSupply& supply) {
  FitResult r;
  for (const auto& name : demand.presence) {
    if (!supply.capabilities.count(name)) {
      r.failures.push_back({name, ResourceKind::presence, 1, 0});
    }
  }
  auto check = [&](const std::map<std::string, Quantity>& m, ResourceKind kind) {
    for (const auto& [name, q] : m) {
      Quantity have = lookup(supply.quantities, name);
      if (q > have) r.failures.push_back({name, kind, q, have});
    }
  };
  check(demand.additive, ResourceKind::additive);
  check(demand.maximal, ResourceKind::maximal);
  r.ok = r.failures.empty();
  return r;
}

ResourceDemand seq(const ResourceDemand& a, const ResourceDemand& b) {
  ResourceDemand out;
  out.additive = merge(a.additive, b.additive, checked_add);
  out.maximal = merge(a.maximal, b.maximal,
                      [](Quantity x, Quantity y, const std::string&) { return std::max(x, y); });
  out.presence = a.presence;
  out.presence.insert(b.presence.begin(), b.presence.end());
  return out;
}

ResourceDemand branch(const ResourceDemand& a, const ResourceDemand& b) {
  auto peak = [](Quantity x, Quantity y, const std::string&) { return std::max(x, y); };
  ResourceDemand out;
  out.additive = merge(a.additive, b.additive, peak);
  out.maximal = merge(a.maximal, b.maximal, peak);
  out.presence = a.presence;
  out.presence.insert(b.presence.begin(), b.presence.end());
  return out;
}

ResourceDemand scale(const ResourceDemand& a, std::uint64_t k) {
  if (k == 0) throw Error(Errc::validation, "scale factor must be at least 1");
  ResourceDemand out = a;
  for (auto& [name, q] : out.additive) q = checked_mul(q, k, name);
  return out;
}

bool demand_leq(const ResourceDemand& a, const ResourceDemand& b) {
  auto leq = [](const std::map<std::string, Quantity>& x, const std::map<std::string, Quantity>& y) {
    return std::all_of(x.begin(), x.end(),
                       [&](const auto& kv) { return kv.second <= lookup(y, kv.first); });
  };
  return leq(a.additive, b.additive) && leq(a.maximal, b.maximal) &&
         std::includes(b.presence.begin(), b.presence.end(), a.presence.begin(), a.presence.end());
}

ResourceDemand read_demand(const nlohmann::json& j, const std::string& path) {
  json_read::object(j, path);
  ResourceDemand d;
  if (auto* a = json_read::optional_field(j, "additive", path)) {
    d.additive = read_quantities(*a, json_read::child(path, "additive"));
  }
  if (auto* m = json_read::optional_field(j, "maximal", path)) {
    d.maximal = read_quantities(*m, json_read::child(path, "maximal"));
  }
  if (auto* p = json_read::optional_field(j, "presence", path)) {
    d.presence = read_names(*p, json_read::child(path, "presence"));
  }
  return d;
}

ResourceSupply read_supply(const nlohmann::json& j, const std::string& path) {
  json_read::object(j, path);
  ResourceSupply s;
  if (auto* q = json_read::optional_field(j, "quantities", path)) {
    s.quantities = read_quantities(*q, json_read::child(path, "quantities"));
  }
  if (auto* c = json_read::optional_field(j, "capabilities", path)) {
    s.capabilities = read_names(*c, json_read::child(path, "capabilities"));
  }
  return s;
}

ResourceProfile read_profile(const nlohmann::json& j, const std::string& path) {
  json_read::array(j, path);
  std::vector<ResourceSpec> specs;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string at = json_read::child(path, i);
    ResourceSpec spec;
    spec.name = json_read::string(json_read::field(j[i], "name", at), json_read::child(at, "name"));
    std::string kind =
        json_read::string(json_read::field(j[i], "kind", at), json_read::child(at, "kind"));
    try {
      spec.kind = resource_kind_from_string(kind);
    } catch (const Error& e) {
      json_read::fail(json_read::child(at, "kind"), e.what());
    }
    if (auto* u = json_read::optional_field(j[i], "unit", at)) {
      spec.unit = json_read::string(*u, json_read::child(at, "unit"));
    }
    specs.push_back(std::move(spec));
  }
  try {
    return ResourceProfile(std::move(specs));
  } catch (const Error& e) {
    json_read::fail(path, e.what());
  }
}

void to_json(nlohmann::json& j, const ResourceDemand& d) {
  j = nlohmann::json::object();
  j["additive"] = d.additive;
  j["maximal"] = d.maximal;
  j["presence"] = nlohmann::json::array();
  for (const auto& p : d.presence) j["presence"].push_back(p);
}

void from_json(const nlohmann::json& j, ResourceDemand& d) { d = read_demand(j, ""); }

void to_json(nlohmann::json& j, const ResourceSupply& s) {
  j = nlohmann::json::object();
  j["quantities"] = s.quantities;
  j["capabilities"] = nlohmann::json::array();
  for (const auto& c : s.capabilities) j["capabilities"].push_back(c);
}

void from_json(const nlohmann::json& j, ResourceSupply& s) { s = read_supply(j, ""); }

void to_json(nlohmann::json& j, const ResourceProfile& p) {
  j = nlohmann::json::array();
  for (const auto& s : p.specs()) {
    j.push_back({{"name", s.name}, {"kind", to_string(s.kind)}, {"unit", s.unit}});
  }
}

void from_json(const nlohmann::json& j, ResourceProfile& p) { p = read_profile(j, ""); }

void to_json(nlohmann::json& j, const FitFailure& f) {
  j = {{"resource", f.resource},
       {"kind", to_string(f.kind)},
       {"demanded", f.demanded},
       {"supplied", f.supplied}};
}

}  // namespace adapt::res
