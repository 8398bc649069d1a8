#include "adapt/frontend/ast.hpp"

#include <algorithm>

namespace adapt::asl {

namespace {

template <typename Seq>
auto find_named(const Seq& seq, std::string_view name) -> decltype(&*seq.begin()) {
  auto it = std::find_if(seq.begin(), seq.end(), [&](const auto& d) { return d.name == name; });
  return it == seq.end() ? nullptr : &*it;
}

void strip_block(Block& block);

void strip_stmt(Stmt& stmt) {
  stmt.span = {};
  if (auto* r = std::get_if<RepeatStmt>(&stmt.node)) {
    strip_block(r->body);
  } else if (auto* c = std::get_if<ChooseStmt>(&stmt.node)) {
    for (auto& b : c->branches) strip_block(b);
  }
}

void strip_block(Block& block) {
  for (auto& s : block) strip_stmt(s);
}

void strip_method(MethodDef& m) {
  m.span = {};
  m.sig.span = {};
  strip_block(m.body);
}

}  // namespace

const ClassDecl* AdaptableProgram::find_plain_class(std::string_view n) const {
  return find_named(plain_classes, n);
}

const AdaptableClassDecl* AdaptableProgram::find_adaptable_class(std::string_view n) const {
  return find_named(adaptable_classes, n);
}

const AlternativeDecl* AdaptableProgram::find_alternative(std::string_view n) const {
  return find_named(alternatives, n);
}

AdaptableProgram strip_spans(AdaptableProgram program) {
  for (auto& c : program.plain_classes) {
    c.span = {};
    for (auto& m : c.methods) strip_method(m);
  }
  for (auto& c : program.adaptable_classes) {
    c.span = {};
    for (auto& s : c.adaptable_methods) s.span = {};
    for (auto& m : c.plain_methods) strip_method(m);
  }
  for (auto& a : program.alternatives) {
    a.span = {};
    a.adapts_span = {};
    for (auto& m : a.method_defs) strip_method(m);
  }
  return program;
}

std::size_t statement_count(const Block& block) {
  std::size_t n = 0;
  for (const auto& s : block) {
    ++n;
    if (const auto* r = std::get_if<RepeatStmt>(&s.node)) {
      n += statement_count(r->body);
    } else if (const auto* c = std::get_if<ChooseStmt>(&s.node)) {
      for (const auto& b : c->branches) n += statement_count(b);
    }
  }
  return n;
}

}  // namespace adapt::asl
