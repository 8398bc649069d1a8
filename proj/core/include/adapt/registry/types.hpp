#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "adapt/customizer/descriptor.hpp"
#include "adapt/resmodel/resource.hpp"
#include "adapt/resmodel/sls.hpp"

namespace adapt::registry {

struct DiscoveryQuery {
  std::string functionality;
  res::ResourceSupply supply;
  res::Sls requested;
};

struct Proposal {
  std::string alternative_key;
  res::Sls offered;
  res::MatchScore score;
  bool operator==(const Proposal&) const = default;
};

/// Agreed contract. `terms` is the offered SLS of the accepted alternative,
/// copied verbatim from the published descriptor.
struct Sla {
  std::string sla_id;
  std::string session_id;
  std::string service_id;
  std::string alternative_key;
  res::Sls terms;
  res::ResourceSupply supply;
  std::string agreed_at;
  bool operator==(const Sla&) const = default;
};

enum class SessionState { open, agreed, failed };

std::string to_string(SessionState s);

enum class OutcomeKind { match, negotiate, no_fit };

std::string to_string(OutcomeKind k);

/// One exchange of a negotiation: the request as it stood and what the
/// registry answered.
struct NegotiationRound {
  int round = 0;
  res::Sls requested;
  OutcomeKind outcome = OutcomeKind::negotiate;
  std::vector<Proposal> proposals;  // for a Match, the matched alternative
  bool operator==(const NegotiationRound&) const = default;
};

/// Negotiation state per consumer. Legal transitions: Open->Open (counter),
/// Open->Agreed, Open->Failed. `round` grows by one per counter.
struct NegotiationSession {
  std::string session_id;
  std::string service_id;
  res::ResourceSupply supply;
  res::Sls requested;
  SessionState state = SessionState::open;
  int round = 0;
  std::vector<NegotiationRound> history;
  std::optional<std::string> sla_id;
  std::string created_at;
  std::string updated_at;

  const std::vector<Proposal>& current_proposals() const;
  bool operator==(const NegotiationSession&) const = default;
};

struct DiscoveryOutcome {
  OutcomeKind kind = OutcomeKind::no_fit;
  std::string session_id;
  int round = 0;
  std::string alternative_key;     // Match
  std::optional<Sla> sla;          // Match
  std::vector<Proposal> proposals;  // Negotiate
  std::string reason;              // NoFit
  bool operator==(const DiscoveryOutcome&) const = default;
};

struct Artifact {
  std::string bytes;
  std::string digest;
};

struct ServiceSummary {
  std::string service_id;
  std::string name;
  int version = 0;
  std::size_t alternatives = 0;
  std::string published_at;
};

DiscoveryQuery read_query(const nlohmann::json& j);
DiscoveryOutcome read_outcome(const nlohmann::json& j);
Sla read_sla(const nlohmann::json& j, const std::string& path);
NegotiationSession read_session(const nlohmann::json& j, const std::string& path);

void to_json(nlohmann::json& j, const DiscoveryQuery& q);
void to_json(nlohmann::json& j, const Proposal& p);
void to_json(nlohmann::json& j, const Sla& s);
void to_json(nlohmann::json& j, const NegotiationRound& r);
void to_json(nlohmann::json& j, const NegotiationSession& s);
void to_json(nlohmann::json& j, const DiscoveryOutcome& o);
void to_json(nlohmann::json& j, const ServiceSummary& s);

}  // namespace adapt::registry
