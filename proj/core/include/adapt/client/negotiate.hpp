#pragma once

#include <chrono>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "adapt/client/policy.hpp"
#include "adapt/client/registry_api.hpp"

namespace adapt::client {

enum class NegotiationStatus {
  agreed,        // an SLA was formed
  no_fit,        // no alternative fits the supply, or the service is unknown
  no_agreement,  // the policy gave up or ran out of rounds
  aborted,       // the policy refused the first counter-proposal
};

std::string to_string(NegotiationStatus s);

struct NegotiationOptions {
  NegotiationPolicy policy = AcceptFirstFeasible{};
  /// Extra attempts for idempotent calls (discover, fetch) on Errc::network.
  int retries = 2;
  std::chrono::milliseconds backoff{100};
  /// Fetch the agreed alternative's artifact.
  bool fetch = true;
};

/// One line of the transcript: {round, sent, received, decision}.
struct TranscriptEntry {
  int round = 0;
  nlohmann::json sent;
  nlohmann::json received;
  std::string decision;
};

struct NegotiationResult {
  NegotiationStatus status = NegotiationStatus::no_fit;
  std::optional<registry::Sla> sla;
  std::optional<registry::Artifact> artifact;
  std::vector<TranscriptEntry> transcript;
  int rounds = 0;  // discover + counters actually exchanged
  std::string message;
};

/// Runs discovery and negotiation to completion under `options.policy`.
/// Protocol errors other than retried network failures propagate as
/// adapt::Error; a fetched artifact whose bytes do not hash to its digest is
/// Errc::integrity.
NegotiationResult run_discovery(RegistryApi& api, const registry::DiscoveryQuery& query,
                                const res::SlsSchema& schema, const NegotiationOptions& options);

nlohmann::json to_json(const TranscriptEntry& e);

/// Writes one JSON object per line.
void write_transcript(std::ostream& out, const std::vector<TranscriptEntry>& transcript);

}  // namespace adapt::client
