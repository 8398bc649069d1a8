#pragma once

#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "adapt/analyzer/analyzer.hpp"
#include "adapt/resmodel/sls.hpp"

namespace adapt::analysis {

struct PresenceCondition {
  std::string resource;  // any entry point requires it
  bool operator==(const PresenceCondition&) const = default;
};

enum class Aggregate { max, sum };
enum class Comparison { at_most, greater };  // `<=` and `>`

/// agg(resource over entry points) cmp value. An entry point's amount of a
/// resource is the larger of its additive and maximal demand for that name.
struct AggregateCondition {
  std::string resource;
  Aggregate op = Aggregate::max;
  Comparison cmp = Comparison::at_most;
  res::Quantity value = 0;
  bool operator==(const AggregateCondition&) const = default;
};

struct DefaultCondition {
  bool operator==(const DefaultCondition&) const = default;
};

using Condition = std::variant<PresenceCondition, AggregateCondition, DefaultCondition>;

struct SlsRule {
  std::string dimension;
  Condition when;
  res::Level level = res::Level::low;
  bool operator==(const SlsRule&) const = default;
};

/// Ordered first-match rules mapping a demand report to an offered SLS.
/// Construction checks that every schema dimension ends with a `default`
/// rule and that no rule follows its dimension's default.
class SlsRuleSet {
 public:
  SlsRuleSet(std::vector<SlsRule> rules, const res::SlsSchema& schema);

  const std::vector<SlsRule>& rules() const { return rules_; }
  const res::SlsSchema& schema() const { return schema_; }

 private:
  std::vector<SlsRule> rules_;
  res::SlsSchema schema_;
};

bool condition_holds(const Condition& c, const DemandReport& report);

/// Per dimension, the level of the first rule whose condition holds.
res::Sls derive_offered_sls(const DemandReport& report, const SlsRuleSet& rules);

/// Reads the rule file format; errors are Errc::config with a field path.
SlsRuleSet read_rules(const nlohmann::json& j, const res::SlsSchema& schema);

void to_json(nlohmann::json& j, const SlsRule& r);

}  // namespace adapt::analysis
