#include "adapt/customizer/customizer.hpp"

namespace adapt::customizer {

bool dominates(const res::SlsSchema& schema, const Candidate& b, const Candidate& a) {
  const auto& ea = a.report.per_entry_point;
  const auto& eb = b.report.per_entry_point;
  if (ea.size() != eb.size()) return false;

  bool strict = false;
  for (const auto& [ep, da] : ea) {
    auto it = eb.find(ep);
    if (it == eb.end()) return false;
    const auto& db = it->second;
    if (!res::demand_leq(db, da)) return false;
    if (db != da) strict = true;
  }
  for (const auto& dim : schema.dimensions()) {
    if (!res::at_least_as_good(schema, dim.name, b.offered, a.offered)) return false;
    if (res::strictly_better(schema, dim.name, b.offered, a.offered)) strict = true;
  }
  return strict;
}

std::vector<Candidate> prune_dominated(const res::SlsSchema& schema,
                                       std::vector<Candidate> candidates) {
  std::vector<bool> dominated(candidates.size(), false);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = 0; j < candidates.size() && !dominated[i]; ++j) {
      if (i != j && dominates(schema, candidates[j], candidates[i])) dominated[i] = true;
    }
  }
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!dominated[i]) out.push_back(std::move(candidates[i]));
  }
  return out;
}

}  // namespace adapt::customizer
