#pragma once

#include <memory>
#include <string>

#include "adapt/registry/registry.hpp"
#include "adapt/registry/types.hpp"

namespace adapt::client {

/// The registry protocol as seen by a consumer. Failures are adapt::Error;
/// transport failures are Errc::network.
class RegistryApi {
 public:
  virtual ~RegistryApi() = default;

  virtual registry::DiscoveryOutcome discover(const registry::DiscoveryQuery& query) = 0;
  virtual registry::DiscoveryOutcome counter(const std::string& session_id,
                                             const res::Sls& requested) = 0;
  virtual registry::Sla accept(const std::string& session_id, const std::string& key) = 0;
  virtual void abort(const std::string& session_id) = 0;
  virtual registry::Artifact fetch_artifact(const std::string& service_id, const std::string& key,
                                            const std::string& session_id) = 0;
};

/// Calls a Registry in the same process.
class LocalRegistryApi final : public RegistryApi {
 public:
  explicit LocalRegistryApi(registry::Registry& registry) : registry_(registry) {}

  registry::DiscoveryOutcome discover(const registry::DiscoveryQuery& q) override {
    return registry_.discover(q);
  }
  registry::DiscoveryOutcome counter(const std::string& id, const res::Sls& r) override {
    return registry_.counter(id, r);
  }
  registry::Sla accept(const std::string& id, const std::string& key) override {
    return registry_.accept(id, key);
  }
  void abort(const std::string& id) override { registry_.abort(id); }
  registry::Artifact fetch_artifact(const std::string& sid, const std::string& key,
                                    const std::string& session) override {
    return registry_.fetch_artifact(sid, key, session);
  }

 private:
  registry::Registry& registry_;
};

/// Talks to a RegistryServer over HTTP. `base_url` is e.g.
/// `http://127.0.0.1:8080`.
class HttpRegistryClient final : public RegistryApi {
 public:
  explicit HttpRegistryClient(const std::string& base_url, int timeout_seconds = 10);
  ~HttpRegistryClient() override;

  std::string publish(const customizer::PublishBundle& bundle);
  std::vector<registry::ServiceSummary> list();

  registry::DiscoveryOutcome discover(const registry::DiscoveryQuery& query) override;
  registry::DiscoveryOutcome counter(const std::string& session_id,
                                     const res::Sls& requested) override;
  registry::Sla accept(const std::string& session_id, const std::string& key) override;
  void abort(const std::string& session_id) override;
  registry::Artifact fetch_artifact(const std::string& service_id, const std::string& key,
                                    const std::string& session_id) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace adapt::client
