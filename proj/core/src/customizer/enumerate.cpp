#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "adapt/customizer/customizer.hpp"
#include "adapt/error.hpp"

namespace adapt::customizer {

namespace {

using analysis::MethodRef;

// For every adaptable method, the sorted names of alternatives defining it.
std::vector<std::pair<MethodRef, std::vector<std::string>>> choice_table(
    const asl::AdaptableProgram& program) {
  std::map<MethodRef, std::set<std::string>> defs;
  for (const auto& m : analysis::adaptable_methods(program)) defs[m];
  for (const auto& alt : program.alternatives) {
    for (const auto& d : alt.method_defs) {
      auto it = defs.find({alt.adapts, d.sig.name});
      if (it != defs.end()) it->second.insert(alt.name);
    }
  }
  std::vector<std::pair<MethodRef, std::vector<std::string>>> out;
  for (auto& [m, alts] : defs) {
    if (alts.empty()) {
      throw Error(Errc::binding, "adaptable method '" + m.str() + "' has no defining alternative");
    }
    out.emplace_back(m, std::vector<std::string>(alts.begin(), alts.end()));
  }
  return out;
}

}  // namespace

std::size_t count_bindings(const asl::AdaptableProgram& program) {
  std::size_t n = 1;
  for (const auto& [m, alts] : choice_table(program)) {
    if (__builtin_mul_overflow(n, alts.size(), &n)) return std::numeric_limits<std::size_t>::max();
  }
  return n;
}

std::vector<Binding> enumerate_bindings(const asl::AdaptableProgram& program, std::size_t cap) {
  auto table = choice_table(program);
  std::size_t total = 1;
  bool overflow = false;
  for (const auto& [m, alts] : table) overflow |= __builtin_mul_overflow(total, alts.size(), &total);
  if (overflow || total > cap) {
    throw Error(Errc::cap_exceeded,
                "adaptation space has " +
                    (overflow ? std::string("more than 2^64") : std::to_string(total)) +
                    " bindings, above the cap of " + std::to_string(cap) +
                    "; raise it with --max-bindings");
  }

  std::vector<Binding> out;
  out.reserve(total);
  // Odometer over the choice table; the last method varies fastest.
  std::vector<std::size_t> idx(table.size(), 0);
  for (std::size_t produced = 0; produced < total; ++produced) {
    std::map<MethodRef, std::string> choices;
    for (std::size_t i = 0; i < table.size(); ++i) choices.emplace(table[i].first, table[i].second[idx[i]]);
    out.emplace_back(std::move(choices));
    for (std::size_t i = table.size(); i-- > 0;) {
      if (++idx[i] < table[i].second.size()) break;
      idx[i] = 0;
    }
  }
  return out;
}

}  // namespace adapt::customizer
