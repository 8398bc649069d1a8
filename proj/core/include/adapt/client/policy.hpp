#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "adapt/registry/types.hpp"
#include "adapt/resmodel/sls.hpp"

namespace adapt::client {

/// Accept the top-ranked proposal as soon as one is offered.
struct AcceptFirstFeasible {};

/// Counter with a progressively weaker request. `priority` lists dimensions
/// from most to least important; unlisted dimensions rank below all listed
/// ones. `max_rounds` bounds the protocol rounds including the first
/// discovery.
struct RelaxByPriority {
  std::vector<std::string> priority;
  int max_rounds = 7;
};

/// Abort unless the first answer is a Match.
struct AbortOnMismatch {};

using NegotiationPolicy = std::variant<AcceptFirstFeasible, RelaxByPriority, AbortOnMismatch>;

std::string policy_name(const NegotiationPolicy& policy);

/// Throws Error(Errc::config) if max_rounds < 1 or the priority list names
/// a dimension outside the schema.
void check_policy(const NegotiationPolicy& policy, const res::SlsSchema& schema);

/// Upper bound on the rounds any relaxation sequence can take:
/// |dimensions| * (levels - 1) + 1.
int relaxation_round_bound(const res::SlsSchema& schema);

/// One relaxation step: among the requested dimensions the top proposal does
/// not satisfy (every requested dimension if there is no proposal), the
/// lowest-priority one moves one level toward its worst level, or is dropped
/// if already there. nullopt means give up: nothing left to weaken.
std::optional<res::Sls> relax_requested(const res::SlsSchema& schema, const res::Sls& requested,
                                        const RelaxByPriority& policy,
                                        const std::vector<registry::Proposal>& proposals);

}  // namespace adapt::client
