#include "adapt/client/policy.hpp"

#include <algorithm>

#include "adapt/error.hpp"

namespace adapt::client {

std::string policy_name(const NegotiationPolicy& policy) {
  switch (policy.index()) {
    case 0: return "accept-first";
    case 1: return "relax";
    default: return "abort-on-mismatch";
  }
}

void check_policy(const NegotiationPolicy& policy, const res::SlsSchema& schema) {
  const auto* relax = std::get_if<RelaxByPriority>(&policy);
  if (!relax) return;
  if (relax->max_rounds < 1) throw Error(Errc::config, "max_rounds must be at least 1");
  for (const auto& d : relax->priority) {
    if (!schema.contains(d)) {
      throw Error(Errc::config, "priority names '" + d + "', which is not in the SLS schema");
    }
  }
}

int relaxation_round_bound(const res::SlsSchema& schema) {
  return static_cast<int>(schema.dimensions().size()) * (res::kLevelCount - 1) + 1;
}

std::optional<res::Sls> relax_requested(const res::SlsSchema& schema, const res::Sls& requested,
                                        const RelaxByPriority& policy,
                                        const std::vector<registry::Proposal>& proposals) {
  std::vector<std::string> violated;
  for (const auto& [dim, level] : requested.levels) {
    if (proposals.empty() ||
        !res::satisfies_dimension(schema, proposals.front().offered, dim, level)) {
      violated.push_back(dim);
    }
  }
  if (violated.empty()) return std::nullopt;

  auto rank = [&](const std::string& d) {
    auto it = std::find(policy.priority.begin(), policy.priority.end(), d);
    return static_cast<std::size_t>(it - policy.priority.begin());  // unlisted -> size()
  };
  // Lowest priority = largest rank; ties between unlisted names go to the
  // later name.
  const std::string& target = *std::max_element(
      violated.begin(), violated.end(), [&](const std::string& a, const std::string& b) {
        return std::pair(rank(a), a) < std::pair(rank(b), b);
      });

  res::Sls out = requested;
  res::Level current = out.levels.at(target);
  res::Level worst = schema.worst(target);
  if (current == worst) {
    out.levels.erase(target);
  } else {
    int step = worst == res::Level::high ? 1 : -1;
    out.levels[target] = static_cast<res::Level>(res::level_index(current) + step);
  }
  return out;
}

}  // namespace adapt::client
