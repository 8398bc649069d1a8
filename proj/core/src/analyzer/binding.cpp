#include "adapt/analyzer/binding.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "adapt/error.hpp"

namespace adapt::analysis {

const std::string* Binding::alternative_for(const MethodRef& m) const {
  auto it = choices_.find(m);
  return it == choices_.end() ? nullptr : &it->second;
}

std::string Binding::key() const {
  if (choices_.empty()) return kEmptyBindingKey;
  std::string out;
  for (const auto& [m, alt] : choices_) {
    if (!out.empty()) out += ',';
    out += m.str() + '=' + alt;
  }
  return out;
}

Binding Binding::from_key(const std::string& key) {
  Binding b;
  if (key == kEmptyBindingKey) return b;
  std::size_t start = 0;
  while (start <= key.size()) {
    std::size_t end = key.find(',', start);
    if (end == std::string::npos) end = key.size();
    std::string item = key.substr(start, end - start);
    std::size_t dot = item.find('.');
    std::size_t eq = item.find('=');
    if (dot == std::string::npos || eq == std::string::npos || dot == 0 || eq < dot + 2 ||
        eq + 1 == item.size()) {
      throw Error(Errc::binding, "malformed binding entry '" + item + "' in key '" + key + "'");
    }
    MethodRef m{item.substr(0, dot), item.substr(dot + 1, eq - dot - 1)};
    if (!b.choices_.emplace(m, item.substr(eq + 1)).second) {
      throw Error(Errc::binding, "method '" + m.str() + "' bound twice in key '" + key + "'");
    }
    start = end + 1;
  }
  return b;
}

std::vector<MethodRef> adaptable_methods(const asl::AdaptableProgram& program) {
  std::vector<MethodRef> out;
  for (const auto& c : program.adaptable_classes) {
    for (const auto& s : c.adaptable_methods) out.push_back({c.name, s.name});
  }
  std::sort(out.begin(), out.end());
  return out;
}

void check_binding(const asl::AdaptableProgram& program, const Binding& binding) {
  auto methods = adaptable_methods(program);
  for (const auto& m : methods) {
    const std::string* alt_name = binding.alternative_for(m);
    if (!alt_name) {
      throw Error(Errc::binding, "binding has no entry for adaptable method '" + m.str() + "'");
    }
    const auto* alt = program.find_alternative(*alt_name);
    if (!alt || alt->adapts != m.cls) {
      throw Error(Errc::binding, "'" + *alt_name + "' is not an alternative of '" + m.cls + "'");
    }
    bool defines = std::any_of(alt->method_defs.begin(), alt->method_defs.end(),
                               [&](const asl::MethodDef& d) { return d.sig.name == m.method; });
    if (!defines) {
      throw Error(Errc::binding,
                  "alternative '" + *alt_name + "' does not define '" + m.method + "'");
    }
  }
  for (const auto& [m, alt] : binding.choices()) {
    if (!std::binary_search(methods.begin(), methods.end(), m)) {
      throw Error(Errc::binding, "binding names '" + m.str() + "', which is not adaptable");
    }
  }
}

void to_json(nlohmann::json& j, const Binding& b) {
  j = nlohmann::json::object();
  for (const auto& [m, alt] : b.choices()) j[m.str()] = alt;
}

}  // namespace adapt::analysis
