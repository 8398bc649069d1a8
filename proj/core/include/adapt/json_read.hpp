#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "adapt/error.hpp"

// JSON reading helpers that report malformed fields by JSON pointer path.
namespace adapt::json_read {

using nlohmann::json;

inline std::string child(const std::string& path, std::string_view key) {
  return path + "/" + std::string(key);
}

inline std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

[[noreturn]] inline void fail(const std::string& path, const std::string& message) {
  throw Error(Errc::validation, (path.empty() ? std::string("/") : path) + ": " + message,
              path.empty() ? "/" : path);
}

inline const json& object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

inline const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

inline const json& field(const json& j, std::string_view key, const std::string& path) {
  object(j, path);
  auto it = j.find(std::string(key));
  if (it == j.end()) fail(child(path, key), "missing required field");
  return *it;
}

inline const json* optional_field(const json& j, std::string_view key, const std::string& path) {
  object(j, path);
  auto it = j.find(std::string(key));
  return it == j.end() ? nullptr : &*it;
}

inline std::string string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

inline std::uint64_t unsigned_int(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) fail(path, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

inline std::int64_t integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

inline bool boolean(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

/// Parses `text`; a syntax error is reported as a validation error.
inline json parse(std::string_view text, const std::string& what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(Errc::validation, what + ": invalid JSON: " + e.what(), "/");
  }
}

}  // namespace adapt::json_read
