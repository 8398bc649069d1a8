#include "adapt/frontend/diagnostic.hpp"

#include <algorithm>

namespace adapt::asl {

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::string format_diagnostic(const Diagnostic& d, std::string_view file) {
  std::string out(file);
  out += ':' + std::to_string(d.span.line) + ':' + std::to_string(d.span.column) + ": ";
  out += d.severity == Severity::error ? "error" : "warning";
  out += '[' + d.code + "]: " + d.message;
  return out;
}

}  // namespace adapt::asl
