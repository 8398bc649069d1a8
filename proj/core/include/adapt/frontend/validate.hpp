#pragma once

#include <vector>

#include "adapt/frontend/ast.hpp"
#include "adapt/frontend/diagnostic.hpp"

namespace adapt::asl {

/// Checks the structural invariants of an adaptable program: adapts targets
/// exist, alternative definitions match declared signatures, every adaptable
/// method has at least one defining alternative, calls resolve, and the
/// static call graph is acyclic. Returns an empty list iff all hold (warnings
/// aside). Diagnostics come out in a deterministic order.
std::vector<Diagnostic> validate(const AdaptableProgram& program);

/// Parse in the plain dialect, then validate.
std::vector<Diagnostic> check_plain(std::string_view source);

}  // namespace adapt::asl
