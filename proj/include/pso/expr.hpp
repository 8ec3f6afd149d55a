#pragma once

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "pso/weyl.hpp"

namespace pso {

// Syntax error with a 1-based source position and the token set the parser
// would have accepted there.
struct ParseError : std::invalid_argument {
  int line;
  int col;
  std::string expected;

  ParseError(int line_, int col_, std::string expected_, const std::string& found)
      : std::invalid_argument("parse error at " + std::to_string(line_) + ":" +
                              std::to_string(col_) + ": expected " + expected_ + ", found " +
                              found),
        line(line_),
        col(col_),
        expected(std::move(expected_)) {}
};

namespace detail {

enum class Tok { plus, minus, star, slash, caret, lparen, rparen, var_x, var_t, deriv, imag, number, end };

struct Token {
  Tok kind;
  std::string text;  // digits for number tokens, display text otherwise
  int line;
  int col;
};

inline std::string token_display(const Token& t) {
  if (t.kind == Tok::end) return "end of input";
  return "'" + t.text + "'";
}

inline std::vector<Token> lex_operator(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string text) {
    out.push_back(Token{k, std::move(text), line, col});
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      push(Tok::number, src.substr(i, j - i));
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    // the derivative symbol is accepted as a spelled-out alias on input
    if (static_cast<unsigned char>(c) == 0xE2 && i + 2 < src.size() &&
        static_cast<unsigned char>(src[i + 1]) == 0x88 &&
        static_cast<unsigned char>(src[i + 2]) == 0x82) {
      push(Tok::deriv, "D");
      ++col;
      i += 3;
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::plus; break;
      case '-': k = Tok::minus; break;
      case '*': k = Tok::star; break;
      case '/': k = Tok::slash; break;
      case '^': k = Tok::caret; break;
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      case 'x': k = Tok::var_x; break;
      case 't': k = Tok::var_t; break;
      case 'D': k = Tok::deriv; break;
      case 'i': k = Tok::imag; break;
      default:
        throw ParseError(line, col, "'+', '-', '*', '/', '^', '(', ')', 'x', 't', 'D', 'i', or a digit",
                         "'" + std::string(1, c) + "'");
    }
    push(k, std::string(1, c));
    ++col;
    ++i;
  }
  out.push_back(Token{Tok::end, "", line, col});
  return out;
}

// Recursive descent over
//   EXPR   := ['-'] TERM (('+' | '-') TERM)*
//   TERM   := FACTOR ('*' FACTOR)*
//   FACTOR := BASE ('^' UINT)?
//   BASE   := 'x' | 'D' | 't' | 'i' | UINT ('/' UINT)? | '(' EXPR ')'
// The optional leading '-' (also directly after '(') lets every printed
// element parse back; exponents are capped at 64.
class ExprParser {
 public:
  ExprParser(const std::string& src, Var mode) : toks_(lex_operator(src)), mode_(mode) {}

  WeylElement<GaussianRational> parse() {
    auto e = parse_expr();
    expect_end();
    return e;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  Var mode_;

  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    throw ParseError(t.line, t.col, expected, token_display(t));
  }

  void expect_end() const {
    if (peek().kind != Tok::end) fail("'+', '-', '*', '^', or end of input");
  }

  std::string base_expected() const {
    return mode_ == Var::x ? "'x', 'D', a rational, or '('" : "'t', 'D', 'i', a rational, or '('";
  }

  WeylElement<GaussianRational> parse_expr() {
    bool negate = accept(Tok::minus);
    auto e = parse_term();
    if (negate) e = -e;
    for (;;) {
      if (accept(Tok::plus)) {
        e += parse_term();
      } else if (accept(Tok::minus)) {
        e -= parse_term();
      } else {
        return e;
      }
    }
  }

  WeylElement<GaussianRational> parse_term() {
    auto e = parse_factor();
    while (accept(Tok::star)) e = weyl_mul(e, parse_factor());
    return e;
  }

  WeylElement<GaussianRational> parse_factor() {
    auto base = parse_base();
    if (!accept(Tok::caret)) return base;
    if (peek().kind != Tok::number) fail("an exponent");
    const Token& t = advance();
    if (t.text.size() > 2 || std::stoul(t.text) > 64)
      throw ParseError(t.line, t.col, "an exponent of at most 64", "'" + t.text + "'");
    unsigned n = static_cast<unsigned>(std::stoul(t.text));
    auto out = WeylElement<GaussianRational>::constant(mode_, GaussianRational(1));
    for (unsigned j = 0; j < n; ++j) out = weyl_mul(out, base);
    return out;
  }

  WeylElement<GaussianRational> parse_base() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::var_x:
        if (mode_ != Var::x) fail(base_expected());
        advance();
        return WeylElement<GaussianRational>::variable(mode_);
      case Tok::var_t:
        if (mode_ != Var::t) fail(base_expected());
        advance();
        return WeylElement<GaussianRational>::variable(mode_);
      case Tok::deriv:
        advance();
        return WeylElement<GaussianRational>::derivative_gen(mode_);
      case Tok::imag:
        if (mode_ != Var::t) fail(base_expected());
        advance();
        return WeylElement<GaussianRational>::constant(mode_, GaussianRational::i());
      case Tok::number: {
        BigInt num(advance().text);
        if (accept(Tok::slash)) {
          if (peek().kind != Tok::number) fail("a denominator");
          const Token& d = advance();
          BigInt den(d.text);
          if (den == 0) throw ParseError(d.line, d.col, "a nonzero denominator", "'0'");
          return WeylElement<GaussianRational>::constant(mode_,
                                                         GaussianRational(make_rational(num, den)));
        }
        return WeylElement<GaussianRational>::constant(mode_, GaussianRational(Rational(num)));
      }
      case Tok::lparen: {
        advance();
        auto e = parse_expr();
        if (!accept(Tok::rparen)) fail("')', '+', '-', '*', or '^'");
        return e;
      }
      default:
        fail(base_expected());
    }
  }
};

}  // namespace detail

// Parses an operator expression; the mode fixes the variable symbol ('x' or
// 't') and whether the imaginary unit is available (t-mode only).
inline WeylElement<GaussianRational> parse_operator(const std::string& src, Var mode) {
  return detail::ExprParser(src, mode).parse();
}

inline WeylElement<Rational> parse_x(const std::string& src) {
  return to_rational(parse_operator(src, Var::x));
}

inline WeylElement<GaussianRational> parse_t(const std::string& src) {
  return parse_operator(src, Var::t);
}

}  // namespace pso
