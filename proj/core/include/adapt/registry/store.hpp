#pragma once

#include <atomic>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "adapt/customizer/descriptor.hpp"
#include "adapt/registry/types.hpp"

namespace adapt::registry {

struct ServiceRecord {
  std::string service_id;
  int version = 1;
  std::string published_at;
  customizer::PublishBundle bundle;
};

/// One canonical JSON document per entity:
///   <dir>/services/<service_id>.json
///   <dir>/sessions/<session_id>.json
///   <dir>/slas/<sla_id>.json
/// Every write goes to a temporary file in the same directory and is then
/// renamed over the target, so readers only ever see complete documents.
class FileStore {
 public:
  explicit FileStore(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  void save(const ServiceRecord& record);
  void save(const NegotiationSession& session);
  void save(const Sla& sla);

  struct Snapshot {
    std::vector<ServiceRecord> services;
    std::vector<NegotiationSession> sessions;
    std::vector<Sla> slas;
  };

  /// Reads every document. A document that does not parse or does not
  /// match its schema aborts the load with Error(Errc::store) naming the
  /// file.
  Snapshot load() const;

 private:
  void write_atomic(const std::filesystem::path& target, const std::string& bytes);

  std::filesystem::path dir_;
  std::atomic<std::uint64_t> temp_counter_{0};
};

nlohmann::json service_record_json(const ServiceRecord& r);
ServiceRecord read_service_record(const nlohmann::json& j, const std::string& path);

}  // namespace adapt::registry
