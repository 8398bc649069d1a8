#pragma once

#include <string>

#include "adapt/frontend/ast.hpp"

namespace adapt::asl {

/// Canonical source text: two-space indent, one statement per line, `\n`
/// line endings, declarations in the order plain classes, adaptable
/// classes, alternatives. Output is a pure function of the stripped AST.
std::string print(const AdaptableProgram& program);

std::string print_block(const Block& block, int indent);

}  // namespace adapt::asl
