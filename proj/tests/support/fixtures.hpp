#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "adapt/analyzer/sls_rules.hpp"
#include "adapt/error.hpp"
#include "adapt/frontend/ast.hpp"
#include "adapt/frontend/parser.hpp"
#include "adapt/resmodel/resource.hpp"
#include "adapt/resmodel/sls.hpp"

namespace adapt::testing {

std::string read_file(const std::filesystem::path& path);

/// Parses and validates; throws std::runtime_error with the diagnostics on
/// failure.
asl::AdaptableProgram parse_valid(std::string_view source,
                                  asl::Dialect dialect = asl::Dialect::adaptable);

std::filesystem::path corpus_dir();
std::filesystem::path samples_dir();
std::vector<std::filesystem::path> corpus_files();

/// Speed (HigherBetter) and Cost (LowerBetter).
res::SlsSchema connection_schema();
/// WiFi presence gives Speed=High and Cost=High; otherwise both Low.
analysis::SlsRuleSet connection_rules();
res::ResourceSupply capabilities(std::initializer_list<const char*> names);

/// Code of the adapt::Error thrown by `f`, nullopt if it returns.
std::optional<Errc> error_code(const std::function<void()>& f);

/// Fresh empty directory, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace adapt::testing
