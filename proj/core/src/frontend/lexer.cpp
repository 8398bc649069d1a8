#include "adapt/frontend/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace adapt::asl {

namespace {

constexpr std::array<std::string_view, 14> kKeywords = {
    "service", "class", "adaptable", "alternative", "adapts", "fn",     "export",
    "use",     "consume", "reserve", "call",        "repeat", "choose", "or"};

constexpr std::array<std::string_view, 3> kAdaptationKeywords = {"adaptable", "alternative",
                                                                 "adapts"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool is_adaptation_keyword(std::string_view word) {
  return std::find(kAdaptationKeywords.begin(), kAdaptationKeywords.end(), word) !=
         kAdaptationKeywords.end();
}

LexResult lex(std::string_view src) {
  LexResult out;
  std::uint32_t line = 1;
  std::uint32_t col = 1;
  std::size_t i = 0;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Span span{line, col, 1};
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string text(src.substr(i, j - i));
      span.length = static_cast<std::uint32_t>(j - i);
      TokenKind kind = is_keyword(text) ? TokenKind::keyword : TokenKind::identifier;
      out.tokens.push_back({kind, std::move(text), span});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      span.length = static_cast<std::uint32_t>(j - i);
      out.tokens.push_back({TokenKind::integer, std::string(src.substr(i, j - i)), span});
      advance(j - i);
      continue;
    }
    TokenKind kind;
    switch (c) {
      case '{': kind = TokenKind::lbrace; break;
      case '}': kind = TokenKind::rbrace; break;
      case '(': kind = TokenKind::lparen; break;
      case ')': kind = TokenKind::rparen; break;
      case ';': kind = TokenKind::semicolon; break;
      case '.': kind = TokenKind::dot; break;
      case ',': kind = TokenKind::comma; break;
      default: {
        std::string shown = (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7f)
                                ? "byte 0x" + std::string(1, "0123456789abcdef"[(c >> 4) & 0xF]) +
                                      std::string(1, "0123456789abcdef"[c & 0xF])
                                : "'" + std::string(1, c) + "'";
        out.diagnostics.push_back({Severity::error, std::string(codes::kSyntax),
                                   "unexpected character " + shown, span});
        advance(1);
        continue;
      }
    }
    out.tokens.push_back({kind, std::string(1, c), span});
    advance(1);
  }
  out.tokens.push_back({TokenKind::end_of_file, "", Span{line, col, 0}});
  return out;
}

}  // namespace adapt::asl
