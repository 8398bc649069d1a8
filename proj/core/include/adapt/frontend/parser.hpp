#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adapt/frontend/ast.hpp"
#include "adapt/frontend/diagnostic.hpp"

namespace adapt::asl {

/// `plain` rejects the adaptation keywords; tailored output must parse in it.
enum class Dialect { adaptable, plain };

struct ParseResult {
  std::optional<AdaptableProgram> program;  // set iff no error diagnostics
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return program.has_value(); }
};

/// Parses ASL source. `default_name` names the service when the source has
/// no `service` header.
ParseResult parse(std::string_view source, Dialect dialect = Dialect::adaptable,
                  std::string_view default_name = {});

}  // namespace adapt::asl
