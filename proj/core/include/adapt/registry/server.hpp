#pragma once

#include <memory>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "adapt/error.hpp"
#include "adapt/registry/registry.hpp"

namespace adapt::registry {

/// HTTP + JSON front end for a Registry.
///
///   POST /services                                  publish a bundle -> 201 {service_id}
///   GET  /services                                  list published services
///   GET  /services/{sid}                            service record
///   POST /discover                                  DiscoveryOutcome
///   GET  /sessions/{id}                             session state
///   POST /sessions/{id}/counter   {requested_sls}   DiscoveryOutcome
///   POST /sessions/{id}/accept    {alternative_key} SLA
///   POST /sessions/{id}/abort                       {session_id, state}
///   GET  /services/{sid}/alternatives/{key}/artifact?session={id}
///                                                   tailored bytes + X-Artifact-Digest
///
/// Errors are `{"error": {"code", "message", "path"?}}`.
class RegistryServer {
 public:
  explicit RegistryServer(Registry& registry);
  ~RegistryServer();

  RegistryServer(const RegistryServer&) = delete;
  RegistryServer& operator=(const RegistryServer&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Serves on the bound socket until stop(). Blocks.
  void listen();
  /// listen() on a background thread; returns once the server accepts.
  void start();
  void stop();
  int port() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

int http_status(Errc code);
nlohmann::json error_body(const Error& e);

}  // namespace adapt::registry
