#include "adapt/registry/types.hpp"

#include <nlohmann/json.hpp>

#include "adapt/json_read.hpp"

namespace adapt::registry {

namespace jr = json_read;

namespace {

const std::vector<Proposal> kNoProposals;

OutcomeKind outcome_from_string(const std::string& s, const std::string& path) {
  if (s == "Match") return OutcomeKind::match;
  if (s == "Negotiate") return OutcomeKind::negotiate;
  if (s == "NoFit") return OutcomeKind::no_fit;
  jr::fail(path, "unknown outcome '" + s + "'");
}

SessionState state_from_string(const std::string& s, const std::string& path) {
  if (s == "Open") return SessionState::open;
  if (s == "Agreed") return SessionState::agreed;
  if (s == "Failed") return SessionState::failed;
  jr::fail(path, "unknown session state '" + s + "'");
}

Proposal read_proposal(const nlohmann::json& j, const std::string& path) {
  Proposal p;
  p.alternative_key =
      jr::string(jr::field(j, "alternative_key", path), jr::child(path, "alternative_key"));
  p.offered = res::read_sls(jr::field(j, "offered_sls", path), jr::child(path, "offered_sls"));
  const auto& score = jr::field(j, "score", path);
  std::string sp = jr::child(path, "score");
  p.score.satisfied =
      static_cast<int>(jr::integer(jr::field(score, "satisfied", sp), jr::child(sp, "satisfied")));
  p.score.level_gap =
      static_cast<int>(jr::integer(jr::field(score, "level_gap", sp), jr::child(sp, "level_gap")));
  return p;
}

std::vector<Proposal> read_proposals(const nlohmann::json& j, const std::string& path) {
  jr::array(j, path);
  std::vector<Proposal> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_proposal(j[i], jr::child(path, i)));
  return out;
}

}  // namespace

std::string to_string(SessionState s) {
  switch (s) {
    case SessionState::open: return "Open";
    case SessionState::agreed: return "Agreed";
    case SessionState::failed: return "Failed";
  }
  return "?";
}

std::string to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::match: return "Match";
    case OutcomeKind::negotiate: return "Negotiate";
    case OutcomeKind::no_fit: return "NoFit";
  }
  return "?";
}

const std::vector<Proposal>& NegotiationSession::current_proposals() const {
  return history.empty() ? kNoProposals : history.back().proposals;
}

DiscoveryQuery read_query(const nlohmann::json& j) {
  DiscoveryQuery q;
  q.functionality = jr::string(jr::field(j, "functionality", ""), "/functionality");
  q.supply = res::read_supply(jr::field(j, "supply", ""), "/supply");
  if (const auto* r = jr::optional_field(j, "requested_sls", "")) {
    q.requested = res::read_sls(*r, "/requested_sls");
  }
  return q;
}

Sla read_sla(const nlohmann::json& j, const std::string& path) {
  Sla s;
  s.sla_id = jr::string(jr::field(j, "sla_id", path), jr::child(path, "sla_id"));
  s.session_id = jr::string(jr::field(j, "session_id", path), jr::child(path, "session_id"));
  s.service_id = jr::string(jr::field(j, "service_id", path), jr::child(path, "service_id"));
  s.alternative_key =
      jr::string(jr::field(j, "alternative_key", path), jr::child(path, "alternative_key"));
  s.terms = res::read_sls(jr::field(j, "terms", path), jr::child(path, "terms"));
  s.supply = res::read_supply(jr::field(j, "supply", path), jr::child(path, "supply"));
  s.agreed_at = jr::string(jr::field(j, "agreed_at", path), jr::child(path, "agreed_at"));
  return s;
}

NegotiationSession read_session(const nlohmann::json& j, const std::string& path) {
  NegotiationSession s;
  s.session_id = jr::string(jr::field(j, "session_id", path), jr::child(path, "session_id"));
  s.service_id = jr::string(jr::field(j, "service_id", path), jr::child(path, "service_id"));
  s.supply = res::read_supply(jr::field(j, "supply", path), jr::child(path, "supply"));
  s.requested = res::read_sls(jr::field(j, "requested_sls", path), jr::child(path, "requested_sls"));
  s.state = state_from_string(jr::string(jr::field(j, "state", path), jr::child(path, "state")),
                              jr::child(path, "state"));
  s.round = static_cast<int>(jr::integer(jr::field(j, "round", path), jr::child(path, "round")));
  std::string hp = jr::child(path, "history");
  const auto& hist = jr::array(jr::field(j, "history", path), hp);
  for (std::size_t i = 0; i < hist.size(); ++i) {
    std::string at = jr::child(hp, i);
    NegotiationRound r;
    r.round = static_cast<int>(jr::integer(jr::field(hist[i], "round", at), jr::child(at, "round")));
    r.requested =
        res::read_sls(jr::field(hist[i], "requested_sls", at), jr::child(at, "requested_sls"));
    r.outcome = outcome_from_string(
        jr::string(jr::field(hist[i], "outcome", at), jr::child(at, "outcome")),
        jr::child(at, "outcome"));
    r.proposals = read_proposals(jr::field(hist[i], "proposals", at), jr::child(at, "proposals"));
    s.history.push_back(std::move(r));
  }
  if (const auto* sla = jr::optional_field(j, "sla_id", path); sla && !sla->is_null()) {
    s.sla_id = jr::string(*sla, jr::child(path, "sla_id"));
  }
  s.created_at = jr::string(jr::field(j, "created_at", path), jr::child(path, "created_at"));
  s.updated_at = jr::string(jr::field(j, "updated_at", path), jr::child(path, "updated_at"));
  return s;
}

DiscoveryOutcome read_outcome(const nlohmann::json& j) {
  DiscoveryOutcome o;
  o.kind = outcome_from_string(jr::string(jr::field(j, "outcome", ""), "/outcome"), "/outcome");
  switch (o.kind) {
    case OutcomeKind::match:
      o.session_id = jr::string(jr::field(j, "session_id", ""), "/session_id");
      o.round = static_cast<int>(jr::integer(jr::field(j, "round", ""), "/round"));
      o.alternative_key = jr::string(jr::field(j, "alternative_key", ""), "/alternative_key");
      o.sla = read_sla(jr::field(j, "sla", ""), "/sla");
      break;
    case OutcomeKind::negotiate:
      o.session_id = jr::string(jr::field(j, "session_id", ""), "/session_id");
      o.round = static_cast<int>(jr::integer(jr::field(j, "round", ""), "/round"));
      o.proposals = read_proposals(jr::field(j, "proposals", ""), "/proposals");
      break;
    case OutcomeKind::no_fit:
      o.reason = jr::string(jr::field(j, "reason", ""), "/reason");
      break;
  }
  return o;
}

void to_json(nlohmann::json& j, const DiscoveryQuery& q) {
  j = {{"functionality", q.functionality}, {"supply", q.supply}, {"requested_sls", q.requested}};
}

void to_json(nlohmann::json& j, const Proposal& p) {
  j = {{"alternative_key", p.alternative_key}, {"offered_sls", p.offered}, {"score", p.score}};
}

void to_json(nlohmann::json& j, const Sla& s) {
  j = {{"sla_id", s.sla_id},
       {"session_id", s.session_id},
       {"service_id", s.service_id},
       {"alternative_key", s.alternative_key},
       {"terms", s.terms},
       {"supply", s.supply},
       {"agreed_at", s.agreed_at}};
}

void to_json(nlohmann::json& j, const NegotiationRound& r) {
  j = {{"round", r.round},
       {"requested_sls", r.requested},
       {"outcome", to_string(r.outcome)},
       {"proposals", r.proposals}};
}

void to_json(nlohmann::json& j, const NegotiationSession& s) {
  j = {{"session_id", s.session_id},
       {"service_id", s.service_id},
       {"supply", s.supply},
       {"requested_sls", s.requested},
       {"state", to_string(s.state)},
       {"round", s.round},
       {"history", s.history},
       {"sla_id", s.sla_id ? nlohmann::json(*s.sla_id) : nlohmann::json(nullptr)},
       {"created_at", s.created_at},
       {"updated_at", s.updated_at}};
}

void to_json(nlohmann::json& j, const DiscoveryOutcome& o) {
  j = {{"outcome", to_string(o.kind)}};
  switch (o.kind) {
    case OutcomeKind::match:
      j["session_id"] = o.session_id;
      j["round"] = o.round;
      j["alternative_key"] = o.alternative_key;
      j["sla"] = o.sla ? nlohmann::json(*o.sla) : nlohmann::json(nullptr);
      break;
    case OutcomeKind::negotiate:
      j["session_id"] = o.session_id;
      j["round"] = o.round;
      j["proposals"] = o.proposals;
      break;
    case OutcomeKind::no_fit:
      j["reason"] = o.reason;
      break;
  }
}

void to_json(nlohmann::json& j, const ServiceSummary& s) {
  j = {{"service_id", s.service_id},
       {"name", s.name},
       {"version", s.version},
       {"alternatives", s.alternatives},
       {"published_at", s.published_at}};
}

}  // namespace adapt::registry
