#include "adapt/registry/matching.hpp"

#include <algorithm>

namespace adapt::registry {

MatchResult match_alternatives(const customizer::ExtendedServiceDescriptor& descriptor,
                               const res::ResourceSupply& supply, const res::Sls& requested) {
  res::check_schema(descriptor.schema, requested);

  std::vector<Proposal> fitting;
  for (const auto& alt : descriptor.alternatives) {
    if (!analysis::report_fits(alt.demand_report, supply)) continue;
    fitting.push_back(
        {alt.key, alt.offered_sls, res::match_score(descriptor.schema, alt.offered_sls, requested)});
  }
  std::sort(fitting.begin(), fitting.end(), [](const Proposal& a, const Proposal& b) {
    return res::ranks_before(a.score, a.alternative_key, b.score, b.alternative_key);
  });

  MatchResult out;
  if (fitting.empty()) {
    out.kind = OutcomeKind::no_fit;
    out.reason = "no alternative fits the resource supply";
    return out;
  }
  // A satisfier scores (|requested|, 0), the best possible score, so if one
  // exists it ranks first.
  if (res::satisfies(descriptor.schema, fitting.front().offered, requested)) {
    out.kind = OutcomeKind::match;
    out.chosen_key = fitting.front().alternative_key;
    out.proposals.push_back(fitting.front());
    return out;
  }
  out.kind = OutcomeKind::negotiate;
  out.proposals = std::move(fitting);
  return out;
}

}  // namespace adapt::registry
