#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "adapt/customizer/descriptor.hpp"
#include "adapt/resmodel/resource.hpp"
#include "adapt/resmodel/sls.hpp"

namespace adapt::testing {

using Rng = std::mt19937_64;

struct ProgramShape {
  std::size_t max_statements = 200;
  std::uint64_t max_repeat = 8;
  int max_choose_depth = 4;
  int max_plain_classes = 3;
  int max_adaptable_classes = 2;
  int max_alternatives = 3;
};

/// Resources used by generated programs, with their kinds.
const res::ResourceProfile& generator_profile();

/// Source of a random program that validates cleanly: calls only go to
/// methods defined earlier, so there are no cycles, and every alternative
/// defines every adaptable method of its class.
std::string random_program(Rng& rng, const ProgramShape& shape = {});

/// Random demand with amounts below `max_amount`.
res::ResourceDemand random_demand(Rng& rng, std::uint64_t max_amount = 1000);

struct MatchingShape {
  std::size_t max_alternatives = 6;
  std::size_t max_dimensions = 3;
  std::size_t max_resources = 4;
};

/// A publishable bundle with synthetic artifacts, a supply and a request.
struct MatchingInstance {
  customizer::PublishBundle bundle;
  res::ResourceSupply supply;
  res::Sls requested;
};

MatchingInstance random_instance(Rng& rng, const MatchingShape& shape = {});

/// Random supply and request over the instance's resources and schema.
res::ResourceSupply random_supply(Rng& rng, const MatchingInstance& inst);
res::Sls random_request(Rng& rng, const res::SlsSchema& schema);

}  // namespace adapt::testing
