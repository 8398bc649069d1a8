#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace adapt::res {

using Quantity = std::uint64_t;

enum class ResourceKind {
  additive,  // consumed; sequential uses add up (energy, bandwidth)
  maximal,   // held; only the peak matters (memory)
  presence,  // a capability that is either there or not (radio adapter)
};

std::string to_string(ResourceKind kind);
ResourceKind resource_kind_from_string(const std::string& s);

struct ResourceSpec {
  std::string name;
  ResourceKind kind = ResourceKind::additive;
  std::string unit;  // informational only

  bool operator==(const ResourceSpec&) const = default;
};

/// Declared resource kinds. Names are unique.
class ResourceProfile {
 public:
  ResourceProfile() = default;
  explicit ResourceProfile(std::vector<ResourceSpec> specs);

  const ResourceSpec* find(const std::string& name) const;
  const std::vector<ResourceSpec>& specs() const { return specs_; }

 private:
  std::vector<ResourceSpec> specs_;
};

/// What a program variant needs. A missing key is the same as zero / not
/// required; zero entries are never stored.
struct ResourceDemand {
  std::map<std::string, Quantity> additive;
  std::map<std::string, Quantity> maximal;
  std::set<std::string> presence;

  static ResourceDemand consume(const std::string& name, Quantity n);
  static ResourceDemand reserve(const std::string& name, Quantity n);
  static ResourceDemand use(const std::string& name);

  bool empty() const { return additive.empty() && maximal.empty() && presence.empty(); }
  bool operator==(const ResourceDemand&) const = default;
};

/// What an execution environment offers. `quantities` serves as the budget
/// for additive demands and the capacity for maximal ones.
struct ResourceSupply {
  std::map<std::string, Quantity> quantities;
  std::set<std::string> capabilities;

  bool operator==(const ResourceSupply&) const = default;
};

struct FitFailure {
  std::string resource;
  ResourceKind kind = ResourceKind::additive;
  Quantity demanded = 0;  // 1/0 for presence
  Quantity supplied = 0;

  bool operator==(const FitFailure&) const = default;
};

struct FitResult {
  bool ok = true;
  std::vector<FitFailure> failures;

  explicit operator bool() const { return ok; }
  std::string explain() const;
};

/// Every presence name is a supplied capability and every additive or
/// maximal quantity is within the supplied amount.
FitResult fits(const ResourceDemand& demand, const ResourceSupply& supply);

/// Sequential composition: additive sums, maximal peaks, presence unions.
/// Throws Error(Errc::overflow) instead of saturating.
ResourceDemand seq(const ResourceDemand& a, const ResourceDemand& b);

/// Worst case over two branches: componentwise max, presence union.
ResourceDemand branch(const ResourceDemand& a, const ResourceDemand& b);

/// k sequential repetitions: additive scaled by k, the rest unchanged.
/// Requires k >= 1.
ResourceDemand scale(const ResourceDemand& a, std::uint64_t k);

/// Componentwise a <= b with presence(a) a subset of presence(b).
bool demand_leq(const ResourceDemand& a, const ResourceDemand& b);

/// Path-aware readers; malformed input throws Error(Errc::validation) naming
/// the offending field.
ResourceDemand read_demand(const nlohmann::json& j, const std::string& path);
ResourceSupply read_supply(const nlohmann::json& j, const std::string& path);
ResourceProfile read_profile(const nlohmann::json& j, const std::string& path);

void to_json(nlohmann::json& j, const ResourceDemand& d);
void from_json(const nlohmann::json& j, ResourceDemand& d);
void to_json(nlohmann::json& j, const ResourceSupply& s);
void from_json(const nlohmann::json& j, ResourceSupply& s);
void to_json(nlohmann::json& j, const ResourceProfile& p);
void from_json(const nlohmann::json& j, ResourceProfile& p);
void to_json(nlohmann::json& j, const FitFailure& f);

}  // namespace adapt::res
