#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "adapt/analyzer/analyzer.hpp"
#include "adapt/analyzer/binding.hpp"
#include "adapt/frontend/ast.hpp"
#include "adapt/resmodel/sls.hpp"

namespace adapt::customizer {

using analysis::Binding;
using analysis::DemandReport;

inline constexpr std::size_t kDefaultBindingCap = 4096;

/// Cross product over adaptable methods of their defining alternatives.
/// Methods are ordered by (class, name), alternatives by name, and the
/// product is lexicographic. A program without adaptable methods yields one
/// empty binding. Throws Error(Errc::cap_exceeded) past `cap`.
std::vector<Binding> enumerate_bindings(const asl::AdaptableProgram& program,
                                        std::size_t cap = kDefaultBindingCap);

/// Number of bindings `enumerate_bindings` would produce, saturating at
/// SIZE_MAX.
std::size_t count_bindings(const asl::AdaptableProgram& program);

struct Candidate {
  Binding binding;
  DemandReport report;
  res::Sls offered;
};

/// `b` dominates `a` when every entry point of `b` demands no more than the
/// same entry point of `a`, `b`'s offered SLS is at least as good in every
/// schema dimension, and at least one of those comparisons is strict.
bool dominates(const res::SlsSchema& schema, const Candidate& b, const Candidate& a);

/// Drops every dominated candidate; survivors keep their input order.
std::vector<Candidate> prune_dominated(const res::SlsSchema& schema,
                                       std::vector<Candidate> candidates);

/// Plain program for one binding plus the digest of its bytes.
struct TailoredProgram {
  std::string source;
  Binding binding;
  std::string digest;  // sha256 hex of `source`
};

/// The plain AST a binding induces: each adaptable class becomes a plain
/// class whose former adaptable methods are `export fn` with the bound
/// alternative's body; alternatives are dropped.
asl::AdaptableProgram tailored_ast(const asl::AdaptableProgram& program, const Binding& binding);

TailoredProgram tailor(const asl::AdaptableProgram& program, const Binding& binding);

/// Token-level check; comments are ignored.
bool contains_adaptation_keywords(std::string_view source);

}  // namespace adapt::customizer
