#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace adapt::asl {

struct Span {
  std::uint32_t line = 0;  // 1-based; 0 means "no position"
  std::uint32_t column = 0;
  std::uint32_t length = 0;

  bool operator==(const Span&) const = default;
};

enum class Severity { error, warning };

/// Stable diagnostic codes. Syntax errors use the E1xx range.
namespace codes {
inline constexpr std::string_view kUncoveredMethod = "E001_UNCOVERED_METHOD";
inline constexpr std::string_view kMissingAdaptsTarget = "E002_MISSING_ADAPTS_TARGET";
inline constexpr std::string_view kSignatureMismatch = "E003_SIGNATURE_MISMATCH";
inline constexpr std::string_view kDuplicateDefinition = "E004_DUPLICATE_DEFINITION";
inline constexpr std::string_view kUnresolvedCall = "E005_UNRESOLVED_CALL";
inline constexpr std::string_view kCallCycle = "E006_CALL_CYCLE";
inline constexpr std::string_view kResourceKind = "E007_RESOURCE_KIND";
inline constexpr std::string_view kUnknownResource = "E008_UNKNOWN_RESOURCE";
inline constexpr std::string_view kAdaptationInPlain = "E009_ADAPTATION_IN_PLAIN";
inline constexpr std::string_view kSyntax = "E100_SYNTAX";
inline constexpr std::string_view kUnknownKeyword = "E101_UNKNOWN_KEYWORD";
inline constexpr std::string_view kRepeatBound = "E102_REPEAT_BOUND";
inline constexpr std::string_view kIntegerRange = "E103_INTEGER_RANGE";
inline constexpr std::string_view kUnusedAlternative = "W001_UNUSED_ALTERNATIVE";
}  // namespace codes

struct Diagnostic {
  Severity severity = Severity::error;
  std::string code;
  std::string message;
  Span span;

  bool operator==(const Diagnostic&) const = default;
};

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// `file:line:col: severity[code]: message`
std::string format_diagnostic(const Diagnostic& d, std::string_view file);

}  // namespace adapt::asl
