#pragma once

#include <string>
#include <vector>

#include "adapt/customizer/descriptor.hpp"
#include "adapt/registry/types.hpp"

namespace adapt::registry {

struct MatchResult {
  OutcomeKind kind = OutcomeKind::no_fit;
  std::string chosen_key;           // Match
  std::vector<Proposal> proposals;  // Negotiate: every fitting alternative, ranked
  std::string reason;               // NoFit
};

/// Registry-side SLS matching. Alternatives whose every entry point fits
/// `supply` are candidates; if any candidate's offered SLS satisfies
/// `requested`, the best-ranked satisfier is a Match; otherwise the ranked
/// candidates are a Negotiate; no candidates is NoFit. Throws
/// Error(Errc::schema) if `requested` uses a dimension outside the
/// descriptor's schema.
MatchResult match_alternatives(const customizer::ExtendedServiceDescriptor& descriptor,
                               const res::ResourceSupply& supply, const res::Sls& requested);

}  // namespace adapt::registry
