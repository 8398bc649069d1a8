#include "adapt/analyzer/sls_rules.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "adapt/error.hpp"
#include "adapt/json_read.hpp"

namespace adapt::analysis {

namespace {

res::Quantity amount(const res::ResourceDemand& d, const std::string& name) {
  res::Quantity a = 0;
  if (auto it = d.additive.find(name); it != d.additive.end()) a = it->second;
  if (auto it = d.maximal.find(name); it != d.maximal.end()) a = std::max(a, it->second);
  return a;
}

res::Quantity aggregate(const AggregateCondition& c, const DemandReport& report) {
  res::Quantity acc = 0;
  for (const auto& [ep, d] : report.per_entry_point) {
    res::Quantity q = amount(d, c.resource);
    if (c.op == Aggregate::max) {
      acc = std::max(acc, q);
    } else if (__builtin_add_overflow(acc, q, &acc)) {
      throw Error(Errc::overflow, "sum of '" + c.resource + "' over entry points out of range");
    }
  }
  return acc;
}

[[noreturn]] void config_error(const std::string& path, const std::string& message) {
  throw Error(Errc::config, (path.empty() ? "/" : path) + ": " + message, path);
}

}  // namespace

SlsRuleSet::SlsRuleSet(std::vector<SlsRule> rules, const res::SlsSchema& schema)
    : rules_(std::move(rules)), schema_(schema) {
  std::set<std::string> closed;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const auto& r = rules_[i];
    std::string at = "/" + std::to_string(i);
    if (!schema_.contains(r.dimension)) {
      config_error(at + "/dimension", "dimension '" + r.dimension + "' is not in the SLS schema");
    }
    if (closed.count(r.dimension)) {
      config_error(at, "rule for '" + r.dimension + "' follows its default rule and can never match");
    }
    if (std::holds_alternative<DefaultCondition>(r.when)) closed.insert(r.dimension);
  }
  for (const auto& d : schema_.dimensions()) {
    if (!closed.count(d.name)) {
      config_error("", "dimension '" + d.name + "' has no terminal default rule");
    }
  }
}

bool condition_holds(const Condition& c, const DemandReport& report) {
  if (std::holds_alternative<DefaultCondition>(c)) return true;
  if (const auto* p = std::get_if<PresenceCondition>(&c)) {
    return report.presence_union.count(p->resource) > 0;
  }
  const auto& a = std::get<AggregateCondition>(c);
  res::Quantity value = aggregate(a, report);
  return a.cmp == Comparison::at_most ? value <= a.value : value > a.value;
}

res::Sls derive_offered_sls(const DemandReport& report, const SlsRuleSet& rules) {
  res::Sls out;
  for (const auto& rule : rules.rules()) {
    if (out.levels.count(rule.dimension)) continue;
    if (condition_holds(rule.when, report)) out.levels.emplace(rule.dimension, rule.level);
  }
  return out;
}

SlsRuleSet read_rules(const nlohmann::json& j, const res::SlsSchema& schema) {
  try {
    json_read::array(j, "");
    std::vector<SlsRule> rules;
    for (std::size_t i = 0; i < j.size(); ++i) {
      std::string at = json_read::child("", i);
      const auto& item = j[i];
      SlsRule rule;
      rule.dimension = json_read::string(json_read::field(item, "dimension", at),
                                         json_read::child(at, "dimension"));
      std::string level_path = json_read::child(at, "level");
      auto level = res::level_from_string(
          json_read::string(json_read::field(item, "level", at), level_path));
      if (!level) json_read::fail(level_path, "level must be Low, Medium or High");
      rule.level = *level;

      std::string when_path = json_read::child(at, "when");
      const auto& when = json_read::field(item, "when", at);
      if (when.is_string()) {
        if (when.get<std::string>() != "default") json_read::fail(when_path, "expected \"default\"");
        rule.when = DefaultCondition{};
      } else if (auto* p = json_read::optional_field(when, "presence", when_path)) {
        rule.when = PresenceCondition{json_read::string(*p, json_read::child(when_path, "presence"))};
      } else if (auto* a = json_read::optional_field(when, "agg", when_path)) {
        std::string agg_path = json_read::child(when_path, "agg");
        AggregateCondition c;
        c.resource = json_read::string(json_read::field(*a, "resource", agg_path),
                                       json_read::child(agg_path, "resource"));
        std::string op = json_read::string(json_read::field(*a, "op", agg_path),
                                           json_read::child(agg_path, "op"));
        if (op == "max") {
          c.op = Aggregate::max;
        } else if (op == "sum") {
          c.op = Aggregate::sum;
        } else {
          json_read::fail(json_read::child(agg_path, "op"), "op must be max or sum");
        }
        std::string cmp = json_read::string(json_read::field(*a, "cmp", agg_path),
                                            json_read::child(agg_path, "cmp"));
        if (cmp == "<=") {
          c.cmp = Comparison::at_most;
        } else if (cmp == ">") {
          c.cmp = Comparison::greater;
        } else {
          json_read::fail(json_read::child(agg_path, "cmp"), "cmp must be <= or >");
        }
        c.value = json_read::unsigned_int(json_read::field(*a, "value", agg_path),
                                          json_read::child(agg_path, "value"));
        rule.when = c;
      } else {
        json_read::fail(when_path, "expected \"default\", {\"presence\": ...} or {\"agg\": ...}");
      }
      rules.push_back(std::move(rule));
    }
    return SlsRuleSet(std::move(rules), schema);
  } catch (const Error& e) {
    if (e.code() == Errc::config) throw;
    throw Error(Errc::config, e.what(), e.path());
  }
}

void to_json(nlohmann::json& j, const SlsRule& r) {
  j = {{"dimension", r.dimension}, {"level", res::to_string(r.level)}};
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, DefaultCondition>) {
          j["when"] = "default";
        } else if constexpr (std::is_same_v<T, PresenceCondition>) {
          j["when"] = {{"presence", c.resource}};
        } else {
          j["when"] = {{"agg",
                        {{"resource", c.resource},
                         {"op", c.op == Aggregate::max ? "max" : "sum"},
                         {"cmp", c.cmp == Comparison::at_most ? "<=" : ">"},
                         {"value", c.value}}}};
        }
      },
      r.when);
}

}  // namespace adapt::analysis
