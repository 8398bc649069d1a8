#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "adapt/analyzer/analyzer.hpp"
#include "adapt/analyzer/sls_rules.hpp"
#include "adapt/customizer/customizer.hpp"
#include "adapt/resmodel/resource.hpp"
#include "adapt/resmodel/sls.hpp"

namespace adapt::customizer {

struct EntryPointSig {
  std::string name;  // `Class.method`
  std::size_t arity = 0;
  bool operator==(const EntryPointSig&) const = default;
};

/// What the service does, independent of how it is adapted.
struct Functionality {
  std::string name;
  std::vector<EntryPointSig> entry_points;
  bool operator==(const Functionality&) const = default;
};

struct PublishedAlternative {
  std::string key;  // canonical binding key
  res::Sls offered_sls;
  DemandReport demand_report;
  std::string artifact_digest;
  bool operator==(const PublishedAlternative&) const = default;
};

/// Service description extended with one offered SLS per published
/// adaptation alternative.
struct ExtendedServiceDescriptor {
  std::string service_id;  // provider-side name of the service
  Functionality functionality;
  std::vector<PublishedAlternative> alternatives;
  res::SlsSchema schema;
  std::map<std::string, std::string> metadata;

  const PublishedAlternative* find(const std::string& key) const;
  bool operator==(const ExtendedServiceDescriptor&) const = default;
};

/// A descriptor together with the tailored source of every alternative,
/// keyed by alternative key. This is what gets published.
struct PublishBundle {
  ExtendedServiceDescriptor descriptor;
  std::map<std::string, std::string> artifacts;
  bool operator==(const PublishBundle&) const = default;
};

struct DescriptorOptions {
  bool prune = true;
  std::size_t max_bindings = kDefaultBindingCap;
};

/// enumerate -> analyze -> derive SLS -> prune -> tailor. Throws
/// Error(Errc::validation) if the program does not validate or misuses
/// resources against `profile` (which may be null).
PublishBundle build_descriptor(const asl::AdaptableProgram& program,
                               const res::ResourceProfile* profile,
                               const analysis::SlsRuleSet& rules,
                               const std::map<std::string, std::string>& metadata,
                               const DescriptorOptions& options = {});

/// Structural checks: unique keys, offered SLSs within the schema, report
/// entry points equal to the functionality's, well-formed digests. Throws
/// Error(Errc::validation) with a field path.
void check_descriptor(const ExtendedServiceDescriptor& d, const std::string& path = "");

/// Additionally checks that every alternative has an artifact whose digest
/// matches, and that there are no stray artifacts.
void check_bundle(const PublishBundle& b);

ExtendedServiceDescriptor read_descriptor(const nlohmann::json& j, const std::string& path);
PublishBundle read_bundle(const nlohmann::json& j);

/// `<service>_<alternative_key>.asl`
std::string artifact_file_name(const std::string& service, const std::string& key);

/// Sorted keys, no insignificant whitespace.
std::string canonical_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const ExtendedServiceDescriptor& d);
void to_json(nlohmann::json& j, const PublishBundle& b);
void to_json(nlohmann::json& j, const PublishedAlternative& a);

}  // namespace adapt::customizer
