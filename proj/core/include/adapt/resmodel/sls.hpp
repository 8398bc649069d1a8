#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace adapt::res {

/// Ordered quality levels: Low < Medium < High.
enum class Level : std::uint8_t { low = 0, medium = 1, high = 2 };

inline constexpr int kLevelCount = 3;

std::string to_string(Level level);
std::optional<Level> level_from_string(const std::string& s);
inline int level_index(Level l) { return static_cast<int>(l); }

enum class Polarity { higher_better, lower_better };

std::string to_string(Polarity p);

struct Dimension {
  std::string name;
  Polarity polarity = Polarity::higher_better;
  bool operator==(const Dimension&) const = default;
};

/// The shared vocabulary of quality dimensions.
class SlsSchema {
 public:
  SlsSchema() = default;
  explicit SlsSchema(std::vector<Dimension> dims);

  const std::vector<Dimension>& dimensions() const { return dims_; }
  std::optional<Polarity> polarity(const std::string& dimension) const;
  bool contains(const std::string& dimension) const { return polarity(dimension).has_value(); }

  /// Best and worst level of a dimension under its polarity.
  Level best(const std::string& dimension) const;
  Level worst(const std::string& dimension) const;

  bool operator==(const SlsSchema&) const = default;

 private:
  std::vector<Dimension> dims_;
};

/// Service Level Specification: one level per dimension.
struct Sls {
  std::map<std::string, Level> levels;

  bool empty() const { return levels.empty(); }
  std::size_t size() const { return levels.size(); }
  bool operator==(const Sls&) const = default;
};

/// Throws Error(Errc::schema) naming the first dimension of `sls` that is
/// not in `schema`.
void check_schema(const SlsSchema& schema, const Sls& sls);

/// True iff `offered` meets every requested dimension per its polarity.
/// Dimensions absent from `requested` are unconstrained.
bool satisfies(const SlsSchema& schema, const Sls& offered, const Sls& requested);

/// True iff `offered` meets `requested` on the single dimension `dim`.
bool satisfies_dimension(const SlsSchema& schema, const Sls& offered, const std::string& dim,
                         Level requested);

struct MatchScore {
  int satisfied = 0;
  int level_gap = 0;  // summed over violated dimensions; a missing one costs 3

  bool operator==(const MatchScore&) const = default;
};

inline constexpr int kMissingDimensionGap = 3;

MatchScore match_score(const SlsSchema& schema, const Sls& offered, const Sls& requested);

/// Proposal order: more satisfied dimensions first, then smaller gap, then
/// alternative key ascending. Returns true if (a, key_a) ranks before
/// (b, key_b).
bool ranks_before(const MatchScore& a, const std::string& key_a, const MatchScore& b,
                  const std::string& key_b);

/// a is at least as good as b on `dim`. A missing level is worse than any
/// present one; two missing levels are equal.
bool at_least_as_good(const SlsSchema& schema, const std::string& dim, const Sls& a, const Sls& b);
bool strictly_better(const SlsSchema& schema, const std::string& dim, const Sls& a, const Sls& b);

SlsSchema read_schema(const nlohmann::json& j, const std::string& path);
Sls read_sls(const nlohmann::json& j, const std::string& path);

void to_json(nlohmann::json& j, const SlsSchema& s);
void from_json(const nlohmann::json& j, SlsSchema& s);
void to_json(nlohmann::json& j, const Sls& s);
void from_json(const nlohmann::json& j, Sls& s);
void to_json(nlohmann::json& j, const MatchScore& s);
void from_json(const nlohmann::json& j, MatchScore& s);

}  // namespace adapt::res
