#include "adapt/frontend/parser.hpp"

#include <charconv>

#include "adapt/frontend/lexer.hpp"

namespace adapt::asl {

namespace {

struct SyntaxError {
  Diagnostic diagnostic;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, Dialect dialect)
      : tokens_(std::move(tokens)), dialect_(dialect) {}

  AdaptableProgram program(std::string_view default_name) {
    AdaptableProgram prog;
    prog.name = std::string(default_name);
    if (at_keyword("service")) {
      next();
      prog.name = expect_identifier("service name").text;
      expect(TokenKind::semicolon, "';'");
    }
    while (peek().kind != TokenKind::end_of_file) {
      const Token& t = peek();
      if (at_keyword("class")) {
        prog.plain_classes.push_back(plain_class());
      } else if (at_keyword("adaptable")) {
        forbid_in_plain(t);
        prog.adaptable_classes.push_back(adaptable_class());
      } else if (at_keyword("alternative")) {
        forbid_in_plain(t);
        prog.alternatives.push_back(alternative());
      } else {
        fail(codes::kSyntax, t, "expected 'class', 'adaptable class' or 'alternative', found " +
                                    describe(t));
      }
    }
    return prog;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t idx = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[idx];
  }

  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  bool at_keyword(std::string_view kw, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::keyword && t.text == kw;
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case TokenKind::end_of_file: return "end of file";
      case TokenKind::identifier: return "identifier '" + t.text + "'";
      case TokenKind::integer: return "integer " + t.text;
      case TokenKind::keyword: return "keyword '" + t.text + "'";
      default: return "'" + t.text + "'";
    }
  }

  [[noreturn]] static void fail(std::string_view code, const Token& at, std::string message) {
    throw SyntaxError{{Severity::error, std::string(code), std::move(message), at.span}};
  }

  void forbid_in_plain(const Token& t) {
    if (dialect_ == Dialect::plain) {
      fail(codes::kAdaptationInPlain, t, "adaptation keyword '" + t.text + "' in plain program");
    }
  }

  const Token& expect(TokenKind kind, std::string_view what) {
    if (peek().kind != kind) {
      fail(codes::kSyntax, peek(), "expected " + std::string(what) + ", found " + describe(peek()));
    }
    return next();
  }

  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) {
      fail(codes::kSyntax, peek(),
           "expected '" + std::string(kw) + "', found " + describe(peek()));
    }
    next();
  }

  const Token& expect_identifier(std::string_view what) {
    if (peek().kind != TokenKind::identifier) {
      fail(codes::kSyntax, peek(), "expected " + std::string(what) + ", found " + describe(peek()));
    }
    return next();
  }

  std::uint64_t integer_literal(const Token& t) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
      fail(codes::kIntegerRange, t, "integer literal " + t.text + " out of range");
    }
    return value;
  }

  static Span cover(const Span& from, const Token& to) {
    Span s = from;
    if (to.span.line == from.line && to.span.column + to.span.length >= from.column) {
      s.length = to.span.column + to.span.length - from.column;
    }
    return s;
  }

  MethodSig signature() {
    const Token& name = expect_identifier("method name");
    MethodSig sig{name.text, {}, name.span};
    expect(TokenKind::lparen, "'('");
    if (peek().kind != TokenKind::rparen) {
      sig.params.push_back(expect_identifier("parameter name").text);
      while (peek().kind == TokenKind::comma) {
        next();
        sig.params.push_back(expect_identifier("parameter name").text);
      }
    }
    expect(TokenKind::rparen, "')'");
    return sig;
  }

  MethodDef method_def(bool allow_export) {
    Span start = peek().span;
    bool exported = false;
    if (at_keyword("export")) {
      if (!allow_export) fail(codes::kSyntax, peek(), "'export' is not allowed here");
      exported = true;
      next();
    }
    expect_keyword("fn");
    MethodDef def;
    def.sig = signature();
    def.exported = exported;
    def.span = start;
    def.body = block();
    return def;
  }

  ClassDecl plain_class() {
    Span start = peek().span;
    next();  // class
    ClassDecl cls;
    cls.name = expect_identifier("class name").text;
    cls.span = start;
    expect(TokenKind::lbrace, "'{'");
    while (peek().kind != TokenKind::rbrace) {
      if (peek().kind == TokenKind::end_of_file) expect(TokenKind::rbrace, "'}'");
      if (at_keyword("adaptable")) {
        if (dialect_ == Dialect::plain) forbid_in_plain(peek());
        fail(codes::kSyntax, peek(), "adaptable method in non-adaptable class '" + cls.name + "'");
      }
      cls.methods.push_back(method_def(true));
    }
    next();
    return cls;
  }

  AdaptableClassDecl adaptable_class() {
    Span start = peek().span;
    next();  // adaptable
    expect_keyword("class");
    AdaptableClassDecl cls;
    cls.name = expect_identifier("class name").text;
    cls.span = start;
    expect(TokenKind::lbrace, "'{'");
    while (peek().kind != TokenKind::rbrace) {
      if (peek().kind == TokenKind::end_of_file) expect(TokenKind::rbrace, "'}'");
      if (at_keyword("adaptable")) {
        next();
        expect_keyword("fn");
        MethodSig sig = signature();
        if (peek().kind == TokenKind::lbrace) {
          fail(codes::kSyntax, peek(),
               "adaptable method '" + sig.name + "' must not have a body in its class");
        }
        expect(TokenKind::semicolon, "';'");
        cls.adaptable_methods.push_back(std::move(sig));
      } else {
        cls.plain_methods.push_back(method_def(true));
      }
    }
    next();
    return cls;
  }

  AlternativeDecl alternative() {
    Span start = peek().span;
    next();  // alternative
    AlternativeDecl alt;
    alt.name = expect_identifier("alternative name").text;
    alt.span = start;
    expect_keyword("adapts");
    const Token& target = expect_identifier("adapted class name");
    alt.adapts = target.text;
    alt.adapts_span = target.span;
    expect(TokenKind::lbrace, "'{'");
    while (peek().kind != TokenKind::rbrace) {
      if (peek().kind == TokenKind::end_of_file) expect(TokenKind::rbrace, "'}'");
      alt.method_defs.push_back(method_def(false));
    }
    next();
    return alt;
  }

  Block block() {
    expect(TokenKind::lbrace, "'{'");
    Block out;
    while (peek().kind != TokenKind::rbrace) {
      if (peek().kind == TokenKind::end_of_file) expect(TokenKind::rbrace, "'}'");
      out.push_back(statement());
    }
    next();
    return out;
  }

  Stmt statement() {
    const Token& head = peek();
    Span start = head.span;
    if (head.kind == TokenKind::identifier) {
      fail(codes::kUnknownKeyword, head, "unknown statement keyword '" + head.text + "'");
    }
    if (head.kind != TokenKind::keyword) {
      fail(codes::kSyntax, head, "expected a statement, found " + describe(head));
    }
    std::string kw = head.text;
    next();
    if (kw == "use") {
      UseStmt s{expect_identifier("resource name").text};
      const Token& end = expect(TokenKind::semicolon, "';'");
      return {std::move(s), cover(start, end)};
    }
    if (kw == "consume" || kw == "reserve") {
      std::string resource = expect_identifier("resource name").text;
      const Token& amount = expect(TokenKind::integer, "an integer amount");
      std::uint64_t n = integer_literal(amount);
      const Token& end = expect(TokenKind::semicolon, "';'");
      if (kw == "consume") return {ConsumeStmt{std::move(resource), n}, cover(start, end)};
      return {ReserveStmt{std::move(resource), n}, cover(start, end)};
    }
    if (kw == "call") {
      CallStmt s;
      s.target_class = expect_identifier("class name").text;
      expect(TokenKind::dot, "'.'");
      s.method = expect_identifier("method name").text;
      expect(TokenKind::lparen, "'('");
      if (peek().kind != TokenKind::rparen) {
        s.args.push_back(expect_identifier("argument").text);
        while (peek().kind == TokenKind::comma) {
          next();
          s.args.push_back(expect_identifier("argument").text);
        }
      }
      expect(TokenKind::rparen, "')'");
      const Token& end = expect(TokenKind::semicolon, "';'");
      return {std::move(s), cover(start, end)};
    }
    if (kw == "repeat") {
      const Token& bound = peek();
      if (bound.kind != TokenKind::integer) {
        fail(codes::kRepeatBound, bound,
             "repeat bound must be a positive integer literal, found " + describe(bound));
      }
      next();
      std::uint64_t k = integer_literal(bound);
      if (k == 0) fail(codes::kRepeatBound, bound, "repeat bound must be positive");
      RepeatStmt s{k, block()};
      return {std::move(s), start};
    }
    if (kw == "choose") {
      ChooseStmt s;
      s.branches.push_back(block());
      if (!at_keyword("or")) {
        fail(codes::kSyntax, peek(), "'choose' needs at least one 'or' branch");
      }
      while (at_keyword("or")) {
        next();
        s.branches.push_back(block());
      }
      return {std::move(s), start};
    }
    fail(codes::kSyntax, head, "keyword '" + kw + "' cannot start a statement");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Dialect dialect_;
};

}  // namespace

ParseResult parse(std::string_view source, Dialect dialect, std::string_view default_name) {
  LexResult lexed = lex(source);
  ParseResult result;
  result.diagnostics = std::move(lexed.diagnostics);
  try {
    Parser parser(std::move(lexed.tokens), dialect);
    AdaptableProgram prog = parser.program(default_name);
    if (!has_errors(result.diagnostics)) result.program = std::move(prog);
  } catch (const SyntaxError& e) {
    result.diagnostics.push_back(e.diagnostic);
  }
  return result;
}

}  // namespace adapt::asl
