#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "adapt/frontend/diagnostic.hpp"

namespace adapt::asl {

enum class TokenKind {
  identifier,
  integer,
  keyword,
  lbrace,
  rbrace,
  lparen,
  rparen,
  semicolon,
  dot,
  comma,
  end_of_file,
};

struct Token {
  TokenKind kind = TokenKind::end_of_file;
  std::string text;
  Span span;
};

/// Reserved words. The adaptation keywords are the subset that must not
/// appear in tailored (plain) output.
bool is_keyword(std::string_view word);
bool is_adaptation_keyword(std::string_view word);

struct LexResult {
  std::vector<Token> tokens;  // always terminated by end_of_file
  std::vector<Diagnostic> diagnostics;
};

LexResult lex(std::string_view source);

}  // namespace adapt::asl
