#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "adapt/frontend/ast.hpp"

namespace adapt::analysis {

/// A method by class-qualified name, printed as `Class.method`.
struct MethodRef {
  std::string cls;
  std::string method;

  std::string str() const { return cls + "." + method; }
  auto operator<=>(const MethodRef&) const = default;
};

/// One point in the adaptation space: each adaptable method mapped to the
/// alternative that supplies its body.
class Binding {
 public:
  Binding() = default;
  explicit Binding(std::map<MethodRef, std::string> choices) : choices_(std::move(choices)) {}

  const std::map<MethodRef, std::string>& choices() const { return choices_; }
  const std::string* alternative_for(const MethodRef& m) const;
  void bind(MethodRef m, std::string alternative) { choices_[std::move(m)] = std::move(alternative); }

  /// Canonical key: `Class.method=Alternative` pairs in method order, joined
  /// by commas. The empty binding has key "base".
  std::string key() const;
  static Binding from_key(const std::string& key);

  bool operator==(const Binding&) const = default;

 private:
  std::map<MethodRef, std::string> choices_;
};

inline constexpr const char* kEmptyBindingKey = "base";

/// Adaptable methods of `program`, sorted by (class, method).
std::vector<MethodRef> adaptable_methods(const asl::AdaptableProgram& program);

/// Throws Error(Errc::binding) unless `binding` maps every adaptable method
/// (and nothing else) to an alternative that adapts its class and defines it.
void check_binding(const asl::AdaptableProgram& program, const Binding& binding);

void to_json(nlohmann::json& j, const Binding& b);

}  // namespace adapt::analysis
