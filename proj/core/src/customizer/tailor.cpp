#include <algorithm>

#include "adapt/customizer/customizer.hpp"
#include "adapt/digest.hpp"
#include "adapt/error.hpp"
#include "adapt/frontend/lexer.hpp"
#include "adapt/frontend/printer.hpp"

namespace adapt::customizer {

asl::AdaptableProgram tailored_ast(const asl::AdaptableProgram& program, const Binding& binding) {
  analysis::check_binding(program, binding);
  asl::AdaptableProgram out;
  out.name = program.name;
  out.plain_classes = program.plain_classes;
  for (const auto& cls : program.adaptable_classes) {
    asl::ClassDecl plain;
    plain.name = cls.name;
    plain.span = cls.span;
    for (const auto& sig : cls.adaptable_methods) {
      const std::string& alt_name = *binding.alternative_for({cls.name, sig.name});
      const auto* alt = program.find_alternative(alt_name);
      auto def = std::find_if(alt->method_defs.begin(), alt->method_defs.end(),
                              [&](const asl::MethodDef& d) { return d.sig.name == sig.name; });
      asl::MethodDef m = *def;
      m.sig = sig;
      m.exported = true;
      plain.methods.push_back(std::move(m));
    }
    plain.methods.insert(plain.methods.end(), cls.plain_methods.begin(), cls.plain_methods.end());
    out.plain_classes.push_back(std::move(plain));
  }
  return out;
}

TailoredProgram tailor(const asl::AdaptableProgram& program, const Binding& binding) {
  TailoredProgram t;
  t.binding = binding;
  t.source = "// tailored binding: " + binding.key() + "\n" + asl::print(tailored_ast(program, binding));
  t.digest = sha256_hex(t.source);
  return t;
}

bool contains_adaptation_keywords(std::string_view source) {
  auto lexed = asl::lex(source);
  return std::any_of(lexed.tokens.begin(), lexed.tokens.end(), [](const asl::Token& t) {
    return t.kind == asl::TokenKind::keyword && asl::is_adaptation_keyword(t.text);
  });
}

}  // namespace adapt::customizer
