#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "adapt/registry/types.hpp"

namespace adapt::client {

struct DeployResult {
  std::filesystem::path artifact_path;
  std::filesystem::path manifest_path;
  nlohmann::json manifest;
};

/// Checks a fetched artifact and installs it under `out_dir`.
///
/// The bytes must hash to `artifact.digest` (Errc::integrity), parse and
/// validate as a plain program (Errc::validation), and their demand must fit
/// `local_supply` (Errc::unfit, naming the resource). On success writes
/// `<service>_<key>.asl` and `<service>_<key>.manifest.json`.
DeployResult deploy(const registry::Artifact& artifact, const registry::Sla& sla,
                    const res::ResourceSupply& local_supply,
                    const std::filesystem::path& out_dir, const std::string& deployed_at);

}  // namespace adapt::client
