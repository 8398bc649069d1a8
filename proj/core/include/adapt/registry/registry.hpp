#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <vector>

#include "adapt/customizer/descriptor.hpp"
#include "adapt/registry/store.hpp"
#include "adapt/registry/types.hpp"

namespace adapt::registry {

/// Publication, discovery with SLS matching, negotiation sessions, SLA
/// formation and artifact delivery.
///
/// Thread-safe. Calls on one session serialize on that session's lock, so
/// per-session operations are linearizable; different sessions and
/// different services proceed independently. With a store directory every
/// state change is written through before the call returns.
class Registry {
 public:
  struct Options {
    std::optional<std::filesystem::path> store_dir;
    /// Returns the timestamp recorded on sessions and SLAs. Defaults to UTC
    /// ISO-8601 wall-clock time.
    std::function<std::string()> clock;
    /// Seed for session ids; 0 draws one from std::random_device.
    std::uint64_t seed = 0;
  };

  Registry();
  explicit Registry(Options options);
  ~Registry();

  Registry(const Registry&) = delete;
  Registry& operator=(const Registry&) = delete;

  /// Stores a new version of the bundle's service and returns its id
  /// (`svc-0001`, `svc-0002`, ...). Throws Error(Errc::validation) on a
  /// malformed bundle.
  std::string publish(const customizer::PublishBundle& bundle);

  std::vector<ServiceSummary> list() const;
  std::optional<ServiceRecord> service(const std::string& service_id) const;

  DiscoveryOutcome discover(const DiscoveryQuery& query);

  /// Re-runs matching with a new requested SLS. Errc::not_found for an
  /// unknown session, Errc::conflict unless it is Open.
  DiscoveryOutcome counter(const std::string& session_id, const res::Sls& requested);

  /// Agrees on one of the current round's proposals.
  Sla accept(const std::string& session_id, const std::string& alternative_key);

  void abort(const std::string& session_id);

  /// Tailored bytes of an alternative. Requires an Agreed session on that
  /// service and alternative (Errc::forbidden otherwise); a digest mismatch
  /// is Errc::integrity.
  Artifact fetch_artifact(const std::string& service_id, const std::string& alternative_key,
                          const std::string& session_id) const;

  std::optional<NegotiationSession> session(const std::string& session_id) const;
  std::vector<NegotiationSession> sessions() const;
  std::vector<Sla> slas() const;

 private:
  struct SessionSlot {
    std::mutex mu;
    NegotiationSession session;
  };

  std::shared_ptr<const ServiceRecord> latest_by_name(const std::string& name) const;
  std::shared_ptr<const ServiceRecord> by_id(const std::string& id) const;
  std::shared_ptr<SessionSlot> slot(const std::string& session_id) const;
  std::string new_session_id();  // unused by any loaded or live session
  std::string random_session_id();
  std::string now() const;
  Sla make_sla(const NegotiationSession& s, const ServiceRecord& svc, const std::string& key);
  void apply_match(NegotiationSession& s, const ServiceRecord& svc, const res::Sls& requested,
                   DiscoveryOutcome& out);
  void persist(const NegotiationSession& s);
  void persist(const Sla& sla);

  Options options_;
  std::unique_ptr<FileStore> store_;

  mutable std::shared_mutex services_mu_;
  std::map<std::string, std::shared_ptr<const ServiceRecord>> services_;
  std::map<std::string, std::vector<std::string>> versions_;  // name -> ids, oldest first
  int next_service_ = 1;

  mutable std::mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<SessionSlot>> sessions_;

  mutable std::mutex slas_mu_;
  std::map<std::string, Sla> slas_;

  std::mutex rng_mu_;
  std::mt19937_64 rng_;
};

/// Current UTC time as `YYYY-MM-DDTHH:MM:SSZ`.
std::string utc_timestamp();

}  // namespace adapt::registry
