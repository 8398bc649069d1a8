#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "adapt/frontend/diagnostic.hpp"

namespace adapt::asl {

struct Stmt;
using Block = std::vector<Stmt>;

/// `use R;` requires capability R to be present.
struct UseStmt {
  std::string resource;
  bool operator==(const UseStmt&) const = default;
};

/// `consume R n;` spends n units of an additive resource.
struct ConsumeStmt {
  std::string resource;
  std::uint64_t amount = 0;
  bool operator==(const ConsumeStmt&) const = default;
};

/// `reserve R n;` needs n units of a maximal resource held at once.
struct ReserveStmt {
  std::string resource;
  std::uint64_t amount = 0;
  bool operator==(const ReserveStmt&) const = default;
};

struct CallStmt {
  std::string target_class;
  std::string method;
  std::vector<std::string> args;
  bool operator==(const CallStmt&) const = default;
};

struct RepeatStmt {
  std::uint64_t count = 1;
  Block body;
  bool operator==(const RepeatStmt&) const;
};

/// `choose { ... } or { ... }`; at least two branches.
struct ChooseStmt {
  std::vector<Block> branches;
  bool operator==(const ChooseStmt&) const;
};

struct Stmt {
  std::variant<UseStmt, ConsumeStmt, ReserveStmt, CallStmt, RepeatStmt, ChooseStmt> node;
  Span span;
  bool operator==(const Stmt&) const = default;
};

inline bool RepeatStmt::operator==(const RepeatStmt& o) const {
  return count == o.count && body == o.body;
}
inline bool ChooseStmt::operator==(const ChooseStmt& o) const { return branches == o.branches; }

struct MethodSig {
  std::string name;
  std::vector<std::string> params;
  Span span;
  bool operator==(const MethodSig&) const = default;
};

struct MethodDef {
  MethodSig sig;
  bool exported = false;  // plain entry point (`export fn`)
  Block body;
  Span span;
  bool operator==(const MethodDef&) const = default;
};

struct ClassDecl {
  std::string name;
  std::vector<MethodDef> methods;
  Span span;
  bool operator==(const ClassDecl&) const = default;
};

struct AdaptableClassDecl {
  std::string name;
  std::vector<MethodSig> adaptable_methods;  // declared without bodies
  std::vector<MethodDef> plain_methods;
  Span span;
  bool operator==(const AdaptableClassDecl&) const = default;
};

struct AlternativeDecl {
  std::string name;
  std::string adapts;
  std::vector<MethodDef> method_defs;
  Span span;
  Span adapts_span;
  bool operator==(const AlternativeDecl&) const = default;
};

struct AdaptableProgram {
  std::string name;
  std::vector<ClassDecl> plain_classes;
  std::vector<AdaptableClassDecl> adaptable_classes;
  std::vector<AlternativeDecl> alternatives;
  bool operator==(const AdaptableProgram&) const = default;

  const ClassDecl* find_plain_class(std::string_view name) const;
  const AdaptableClassDecl* find_adaptable_class(std::string_view name) const;
  const AlternativeDecl* find_alternative(std::string_view name) const;
  bool is_plain() const { return adaptable_classes.empty() && alternatives.empty(); }
};

/// Copy of `program` with every span zeroed; two programs are structurally
/// identical iff their stripped forms compare equal.
AdaptableProgram strip_spans(AdaptableProgram program);

/// Number of statements, counting nested ones.
std::size_t statement_count(const Block& block);

}  // namespace adapt::asl
