#pragma once

#include <string>

#include "adapt/analyzer/sls_rules.hpp"
#include "adapt/frontend/ast.hpp"
#include "adapt/resmodel/sls.hpp"

namespace adapt::bench {

asl::AdaptableProgram parse_or_throw(const std::string& source);

/// The sample Connection service.
std::string connection_source();
res::SlsSchema connection_schema();
analysis::SlsRuleSet connection_rules();

/// `depth` plain classes where each level calls the previous one from a
/// repeat and a choose, ending in `main`.
std::string call_chain_source(int depth);

/// One adaptable class with `methods` adaptable methods and two
/// alternatives, so 2^methods bindings. Only the first alternative uses
/// WiFiAdapter.
std::string binding_space_source(int methods);

}  // namespace adapt::bench
