#include "adapt/resmodel/sls.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "adapt/error.hpp"
#include "adapt/json_read.hpp"

namespace adapt::res {

std::string to_string(Level level) {
  switch (level) {
    case Level::low: return "Low";
    case Level::medium: return "Medium";
    case Level::high: return "High";
  }
  return "?";
}

std::optional<Level> level_from_string(const std::string& s) {
  if (s == "Low") return Level::low;
  if (s == "Medium") return Level::medium;
  if (s == "High") return Level::high;
  return std::nullopt;
}

std::string to_string(Polarity p) {
  return p == Polarity::higher_better ? "HigherBetter" : "LowerBetter";
}

SlsSchema::SlsSchema(std::vector<Dimension> dims) : dims_(std::move(dims)) {
  std::set<std::string> seen;
  for (const auto& d : dims_) {
    if (!seen.insert(d.name).second) {
      throw Error(Errc::config, "dimension '" + d.name + "' declared twice in schema");
    }
  }
}

std::optional<Polarity> SlsSchema::polarity(const std::string& dimension) const {
  for (const auto& d : dims_) {
    if (d.name == dimension) return d.polarity;
  }
  return std::nullopt;
}

namespace {

Polarity require_polarity(const SlsSchema& schema, const std::string& dim) {
  auto p = schema.polarity(dim);
  if (!p) throw Error(Errc::schema, "dimension '" + dim + "' is not in the SLS schema");
  return *p;
}

// Rank where larger is better, independent of polarity.
int goodness(Polarity p, Level l) {
  return p == Polarity::higher_better ? level_index(l) : (kLevelCount - 1) - level_index(l);
}

}  // namespace

Level SlsSchema::best(const std::string& dimension) const {
  return require_polarity(*this, dimension) == Polarity::higher_better ? Level::high : Level::low;
}

Level SlsSchema::worst(const std::string& dimension) const {
  return require_polarity(*this, dimension) == Polarity::higher_better ? Level::low : Level::high;
}

void check_schema(const SlsSchema& schema, const Sls& sls) {
  for (const auto& [dim, level] : sls.levels) require_polarity(schema, dim);
}

bool satisfies_dimension(const SlsSchema& schema, const Sls& offered, const std::string& dim,
                         Level requested) {
  Polarity p = require_polarity(schema, dim);
  auto it = offered.levels.find(dim);
  if (it == offered.levels.end()) return false;
  return goodness(p, it->second) >= goodness(p, requested);
}

bool satisfies(const SlsSchema& schema, const Sls& offered, const Sls& requested) {
  check_schema(schema, offered);
  bool ok = true;
  for (const auto& [dim, level] : requested.levels) {
    // Keep iterating so an unknown dimension is always reported.
    if (!satisfies_dimension(schema, offered, dim, level)) ok = false;
  }
  return ok;
}

MatchScore match_score(const SlsSchema& schema, const Sls& offered, const Sls& requested) {
  check_schema(schema, offered);
  MatchScore score;
  for (const auto& [dim, level] : requested.levels) {
    if (satisfies_dimension(schema, offered, dim, level)) {
      ++score.satisfied;
      continue;
    }
    auto it = offered.levels.find(dim);
    score.level_gap += it == offered.levels.end()
                           ? kMissingDimensionGap
                           : std::abs(level_index(it->second) - level_index(level));
  }
  return score;
}

bool ranks_before(const MatchScore& a, const std::string& key_a, const MatchScore& b,
                  const std::string& key_b) {
  if (a.satisfied != b.satisfied) return a.satisfied > b.satisfied;
  if (a.level_gap != b.level_gap) return a.level_gap < b.level_gap;
  return key_a < key_b;
}

bool at_least_as_good(const SlsSchema& schema, const std::string& dim, const Sls& a,
                      const Sls& b) {
  Polarity p = require_polarity(schema, dim);
  auto ia = a.levels.find(dim);
  auto ib = b.levels.find(dim);
  if (ib == b.levels.end()) return true;
  if (ia == a.levels.end()) return false;
  return goodness(p, ia->second) >= goodness(p, ib->second);
}

bool strictly_better(const SlsSchema& schema, const std::string& dim, const Sls& a,
                     const Sls& b) {
  return at_least_as_good(schema, dim, a, b) && !at_least_as_good(schema, dim, b, a);
}

SlsSchema read_schema(const nlohmann::json& j, const std::string& path) {
  const auto& dims = json_read::array(json_read::field(j, "dimensions", path),
                                      json_read::child(path, "dimensions"));
  std::vector<Dimension> out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    std::string at = json_read::child(json_read::child(path, "dimensions"), i);
    Dimension d;
    d.name = json_read::string(json_read::field(dims[i], "name", at), json_read::child(at, "name"));
    std::string pol = json_read::string(json_read::field(dims[i], "polarity", at),
                                        json_read::child(at, "polarity"));
    if (pol == "HigherBetter") {
      d.polarity = Polarity::higher_better;
    } else if (pol == "LowerBetter") {
      d.polarity = Polarity::lower_better;
    } else {
      json_read::fail(json_read::child(at, "polarity"),
                      "polarity must be HigherBetter or LowerBetter");
    }
    out.push_back(std::move(d));
  }
  try {
    return SlsSchema(std::move(out));
  } catch (const Error& e) {
    json_read::fail(json_read::child(path, "dimensions"), e.what());
  }
}

Sls read_sls(const nlohmann::json& j, const std::string& path) {
  json_read::object(j, path);
  Sls sls;
  for (const auto& [dim, v] : j.items()) {
    std::string at = json_read::child(path, dim);
    auto level = level_from_string(json_read::string(v, at));
    if (!level) json_read::fail(at, "level must be Low, Medium or High");
    sls.levels.emplace(dim, *level);
  }
  return sls;
}

void to_json(nlohmann::json& j, const SlsSchema& s) {
  j = {{"dimensions", nlohmann::json::array()}};
  for (const auto& d : s.dimensions()) {
    j["dimensions"].push_back({{"name", d.name}, {"polarity", to_string(d.polarity)}});
  }
}

void from_json(const nlohmann::json& j, SlsSchema& s) { s = read_schema(j, ""); }

void to_json(nlohmann::json& j, const Sls& s) {
  j = nlohmann::json::object();
  for (const auto& [dim, level] : s.levels) j[dim] = to_string(level);
}

void from_json(const nlohmann::json& j, Sls& s) { s = read_sls(j, ""); }

void to_json(nlohmann::json& j, const MatchScore& s) {
  j = {{"satisfied", s.satisfied}, {"level_gap", s.level_gap}};
}

void from_json(const nlohmann::json& j, MatchScore& s) {
  s.satisfied = static_cast<int>(json_read::integer(json_read::field(j, "satisfied", ""), "/satisfied"));
  s.level_gap = static_cast<int>(json_read::integer(json_read::field(j, "level_gap", ""), "/level_gap"));
}

}  // namespace adapt::res
