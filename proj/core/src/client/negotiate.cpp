#include "adapt/client/negotiate.hpp"

#include <algorithm>
#include <thread>

#include "adapt/digest.hpp"
#include "adapt/error.hpp"

namespace adapt::client {

using nlohmann::json;

std::string to_string(NegotiationStatus s) {
  switch (s) {
    case NegotiationStatus::agreed: return "agreed";
    case NegotiationStatus::no_fit: return "no-fit";
    case NegotiationStatus::no_agreement: return "no-agreement";
    case NegotiationStatus::aborted: return "aborted";
  }
  return "unknown";
}

json to_json(const TranscriptEntry& e) {
  return {{"round", e.round}, {"sent", e.sent}, {"received", e.received}, {"decision", e.decision}};
}

void write_transcript(std::ostream& out, const std::vector<TranscriptEntry>& transcript) {
  for (const auto& e : transcript) out << to_json(e).dump() << '\n';
}

namespace {

template <typename F>
auto with_retries(const NegotiationOptions& opt, F&& f) {
  auto delay = opt.backoff;
  for (int attempt = 0;; ++attempt) {
    try {
      return f();
    } catch (const Error& e) {
      if (e.code() != Errc::network || attempt >= opt.retries) throw;
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
  }
}

}  // namespace

NegotiationResult run_discovery(RegistryApi& api, const registry::DiscoveryQuery& query,
                                const res::SlsSchema& schema, const NegotiationOptions& options) {
  check_policy(options.policy, schema);
  res::check_schema(schema, query.requested);

  NegotiationResult result;
  int budget = 1;
  if (const auto* relax = std::get_if<RelaxByPriority>(&options.policy)) {
    budget = std::min(relax->max_rounds, relaxation_round_bound(schema));
  }

  json sent = {{"op", "discover"}, {"query", query}};
  registry::DiscoveryOutcome outcome = with_retries(options, [&] { return api.discover(query); });
  res::Sls requested = query.requested;
  result.rounds = 1;

  auto log = [&](json s, json r, std::string decision) {
    result.transcript.push_back({outcome.round, std::move(s), std::move(r), std::move(decision)});
  };
  auto give_up = [&](NegotiationStatus status, std::string message) {
    json s = {{"op", "abort"}, {"session_id", outcome.session_id}};
    api.abort(outcome.session_id);
    log(std::move(s), {{"state", "Failed"}}, "abort");
    result.status = status;
    result.message = std::move(message);
  };

  for (;;) {
    if (outcome.kind == registry::OutcomeKind::match) {
      log(sent, outcome, "agreed");
      result.status = NegotiationStatus::agreed;
      result.sla = outcome.sla;
      break;
    }
    if (outcome.kind == registry::OutcomeKind::no_fit) {
      log(sent, outcome, "no-fit");
      result.status = NegotiationStatus::no_fit;
      result.message = outcome.reason;
      break;
    }

    // Negotiate.
    if (std::holds_alternative<AbortOnMismatch>(options.policy)) {
      log(sent, outcome, "abort");
      give_up(NegotiationStatus::aborted, "no exact match and the policy does not negotiate");
      break;
    }
    if (std::holds_alternative<AcceptFirstFeasible>(options.policy)) {
      if (outcome.proposals.empty()) {
        log(sent, outcome, "give up: no proposals");
        give_up(NegotiationStatus::no_agreement, "registry answered Negotiate without proposals");
        break;
      }
      const std::string& key = outcome.proposals.front().alternative_key;
      log(sent, outcome, "accept " + key);
      json s = {{"op", "accept"}, {"session_id", outcome.session_id}, {"alternative_key", key}};
      registry::Sla sla = api.accept(outcome.session_id, key);
      log(std::move(s), sla, "agreed");
      result.status = NegotiationStatus::agreed;
      result.sla = std::move(sla);
      break;
    }

    const auto& relax = std::get<RelaxByPriority>(options.policy);
    if (result.rounds >= budget) {
      log(sent, outcome, "give up: round budget exhausted");
      give_up(NegotiationStatus::no_agreement,
              "no agreement within " + std::to_string(budget) + " rounds");
      break;
    }
    auto next = relax_requested(schema, requested, relax, outcome.proposals);
    if (!next) {
      log(sent, outcome, "give up: nothing left to relax");
      give_up(NegotiationStatus::no_agreement, "requested SLS cannot be relaxed further");
      break;
    }
    log(sent, outcome, "counter");
    requested = std::move(*next);
    sent = {{"op", "counter"}, {"session_id", outcome.session_id}, {"requested_sls", requested}};
    outcome = api.counter(outcome.session_id, requested);
    ++result.rounds;
  }

  if (result.status == NegotiationStatus::agreed && options.fetch) {
    const auto& sla = *result.sla;
    result.artifact = with_retries(options, [&] {
      return api.fetch_artifact(sla.service_id, sla.alternative_key, sla.session_id);
    });
    if (sha256_hex(result.artifact->bytes) != result.artifact->digest) {
      throw Error(Errc::integrity, "artifact digest mismatch for " + sla.alternative_key);
    }
  }
  return result;
}

}  // namespace adapt::client
