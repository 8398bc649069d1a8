#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adapt {

/// Failure categories shared by every layer. The registry maps them onto
/// HTTP statuses and the CLI onto process exit codes.
enum class Errc {
  validation,    // malformed input document or program
  schema,        // SLS dimension not in the shared schema
  config,        // rule set / profile / schema file is unusable
  overflow,      // resource demand exceeds the representable range
  binding,       // binding incomplete or inconsistent with the program
  cap_exceeded,  // binding enumeration exceeds the configured cap
  not_found,
  conflict,      // session is not in a state that allows the call
  forbidden,     // artifact requested without an agreed session
  integrity,     // digest mismatch
  store,         // persistence failure
  network,
  unfit,         // demand does not fit the local supply
};

std::string_view to_string(Errc code);
/// Inverse of to_string; unknown names map to Errc::network.
Errc errc_from_string(std::string_view name);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::string path = {})
      : std::runtime_error(message), code_(code), path_(std::move(path)) {}

  Errc code() const noexcept { return code_; }
  /// JSON-pointer-like location of the offending field, when known.
  const std::string& path() const noexcept { return path_; }

 private:
  Errc code_;
  std::string path_;
};

}  // namespace adapt
