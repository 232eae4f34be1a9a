#pragma once

// Recursive-descent parser for the ASCII formula grammar:
//
//   formula     ::= implication
//   implication ::= disjunction [ "->" implication ]
//   disjunction ::= conjunction { "|" conjunction }
//   conjunction ::= unary { "&" unary }
//   unary       ::= "!" unary | quantified | "(" formula ")" | equation
//   quantified  ::= ("forall" | "exists") ident { "," ident } "." formula
//   equation    ::= term ("=" | "!=") term
//   term        ::= product { "+" product }
//   product     ::= power { "*" power }
//   power       ::= primary [ "^" integer ]
//   primary     ::= ident | integer | "(" term ")"
//
// Integer literals k >= 2 become 1 + 1 + ... + 1 and t^k becomes
// t * t * ... * t (t^0 is 1). "a != b" is !(a = b). A '#' starts a comment
// that runs to the end of the line.

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "honda/errors.hpp"
#include "honda/folang/ast.hpp"

namespace honda::fol {

  struct ParseResult {
    Formula                  formula;
    //! Non-fatal diagnostics (currently: free variables).
    std::vector<std::string> warnings;
  };

  namespace detail {

    enum class Tok {
      ident,
      integer,
      lparen,
      rparen,
      dot,
      comma,
      plus,
      star,
      caret,
      equals,
      not_equals,
      bang,
      amp,
      bar,
      arrow,
      kw_forall,
      kw_exists,
      end
    };

    struct Token {
      Tok         kind;
      std::string text;
      std::size_t line;
      std::size_t column;
    };

    inline std::vector<Token> tokenize(std::string_view src) {
      std::vector<Token> out;
      std::size_t        line = 1, col = 1;
      std::size_t        i    = 0;
      auto               advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j) {
          if (src[i] == '\n') {
            ++line;
            col = 1;
          } else {
            ++col;
          }
          ++i;
        }
      };
      while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
          advance(1);
          continue;
        }
        if (c == '#') {
          while (i < src.size() && src[i] != '\n') {
            advance(1);
          }
          continue;
        }
        std::size_t const l0 = line, c0 = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
          std::size_t j = i;
          while (j < src.size()
                 && (std::isalnum(static_cast<unsigned char>(src[j]))
                     || src[j] == '_')) {
            ++j;
          }
          std::string word(src.substr(i, j - i));
          Tok kind = word == "forall"   ? Tok::kw_forall
                     : word == "exists" ? Tok::kw_exists
                                        : Tok::ident;
          out.push_back({kind, word, l0, c0});
          advance(j - i);
          continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
          std::size_t j = i;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
            ++j;
          }
          out.push_back({Tok::integer, std::string(src.substr(i, j - i)), l0, c0});
          advance(j - i);
          continue;
        }
        auto two = src.substr(i, 2);
        if (two == "->") {
          out.push_back({Tok::arrow, "->", l0, c0});
          advance(2);
          continue;
        }
        if (two == "!=") {
          out.push_back({Tok::not_equals, "!=", l0, c0});
          advance(2);
          continue;
        }
        Tok kind;
        switch (c) {
          case '(': kind = Tok::lparen; break;
          case ')': kind = Tok::rparen; break;
          case '.': kind = Tok::dot; break;
          case ',': kind = Tok::comma; break;
          case '+': kind = Tok::plus; break;
          case '*': kind = Tok::star; break;
          case '^': kind = Tok::caret; break;
          case '=': kind = Tok::equals; break;
          case '!': kind = Tok::bang; break;
          case '&': kind = Tok::amp; break;
          case '|': kind = Tok::bar; break;
          default:
            throw ParseError(std::string("unexpected character '") + c + "'",
                             l0, c0);
        }
        out.push_back({kind, std::string(1, c), l0, c0});
        advance(1);
      }
      out.push_back({Tok::end, "", line, col});
      return out;
    }

    class Parser {
     public:
      explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

      Formula parse_all() {
        Formula f = formula();
        if (peek().kind != Tok::end) {
          fail("unexpected '" + peek().text + "' after formula");
        }
        return f;
      }

     private:
      // Upper bound on desugared literal sizes, so that a typo such as
      // "X^1000000" fails cleanly.
      static constexpr std::uint64_t max_literal = 4096;

      Token const& peek() const {
        return toks_[pos_];
      }
      Token const& take() {
        return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_];
      }
      bool accept(Tok k) {
        if (peek().kind == k) {
          take();
          return true;
        }
        return false;
      }
      [[noreturn]] void fail(std::string const& msg) const {
        throw ParseError(msg, peek().line, peek().column);
      }
      void expect(Tok k, char const* what) {
        if (!accept(k)) {
          fail(std::string("expected ") + what
               + (peek().kind == Tok::end ? " but input ended"
                                          : " before '" + peek().text + "'"));
        }
      }

      Formula formula() {
        return implication();
      }

      Formula implication() {
        Formula lhs = disjunction();
        if (accept(Tok::arrow)) {
          return implies(lhs, implication());
        }
        return lhs;
      }

      Formula disjunction() {
        Formula f = conjunction();
        while (accept(Tok::bar)) {
          f = f || conjunction();
        }
        return f;
      }

      Formula conjunction() {
        Formula f = unary();
        while (accept(Tok::amp)) {
          f = f && unary();
        }
        return f;
      }

      Formula unary() {
        if (accept(Tok::bang)) {
          return !unary();
        }
        if (peek().kind == Tok::kw_forall || peek().kind == Tok::kw_exists) {
          return quantified();
        }
        if (peek().kind == Tok::lparen) {
          // Either a parenthesised formula or an equation whose left side
          // starts with a parenthesised term. Try the equation first.
          std::size_t const saved = pos_;
          try {
            return equation();
          } catch (ParseError const& e) {
            std::size_t const eq_pos = pos_;
            pos_                     = saved;
            try {
              take();
              Formula f = formula();
              expect(Tok::rparen, "')'");
              return f;
            } catch (ParseError const& e2) {
              // report whichever attempt got further
              if (eq_pos > pos_) {
                throw e;
              }
              throw;
            }
          }
        }
        return equation();
      }

      Formula quantified() {
        bool const                  is_forall = take().kind == Tok::kw_forall;
        std::vector<std::string>    vars;
        do {
          if (peek().kind != Tok::ident) {
            fail("expected a variable name after quantifier");
          }
          vars.push_back(take().text);
        } while (accept(Tok::comma));
        expect(Tok::dot, "'.'");
        Formula body = formula();
        return is_forall ? forall(vars, body) : exists(vars, body);
      }

      Formula equation() {
        Term lhs = term();
        if (accept(Tok::equals)) {
          return eq(lhs, term());
        }
        if (accept(Tok::not_equals)) {
          return !eq(lhs, term());
        }
        fail(peek().kind == Tok::end ? "expected '=' but input ended"
                                     : "expected '=' before '" + peek().text + "'");
      }

      Term term() {
        Term t = product();
        while (accept(Tok::plus)) {
          t = t + product();
        }
        return t;
      }

      Term product() {
        Term t = power();
        while (accept(Tok::star)) {
          t = t * power();
        }
        return t;
      }

      Term power() {
        Term base = primary();
        if (accept(Tok::caret)) {
          if (peek().kind != Tok::integer) {
            fail("expected an integer exponent");
          }
          std::uint64_t k = literal(take());
          if (k == 0) {
            return Term::one();
          }
          Term t = base;
          for (std::uint64_t i = 1; i < k; ++i) {
            t = t * base;
          }
          return t;
        }
        return base;
      }

      Term primary() {
        Token const& tok = peek();
        switch (tok.kind) {
          case Tok::ident:
            return Term::variable(take().text);
          case Tok::integer:
            return Term::numeral(literal(take()));
          case Tok::lparen: {
            take();
            Term t = term();
            expect(Tok::rparen, "')'");
            return t;
          }
          case Tok::end:
            fail("expected a term but input ended");
          default:
            fail("expected a term before '" + tok.text + "'");
        }
      }

      std::uint64_t literal(Token const& tok) const {
        if (tok.text.size() > 6 || std::stoull(tok.text) > max_literal) {
          throw ParseError("integer literal " + tok.text + " exceeds "
                               + std::to_string(max_literal),
                           tok.line, tok.column);
        }
        return std::stoull(tok.text);
      }

      std::vector<Token> toks_;
      std::size_t        pos_ = 0;
    };
  }  // namespace detail

  inline Formula parse(std::string_view src) {
    return detail::Parser(detail::tokenize(src)).parse_all();
  }

  inline ParseResult parse_with_diagnostics(std::string_view src) {
    ParseResult r{parse(src), {}};
    auto        fv = free_vars_ordered(r.formula);
    if (!fv.empty()) {
      std::string msg = "unbound variables:";
      for (auto v : fv) {
        msg += " " + symbol_name(v);
      }
      r.warnings.push_back(msg);
    }
    return r;
  }

  struct FormulaLine {
    std::size_t              line;
    Formula                  formula;
    std::vector<std::string> warnings;
  };

  //! One formula per non-blank line; '#' starts a comment. Errors carry the
  //! line number within the file.
  inline std::vector<FormulaLine> parse_formula_file(std::string_view text) {
    std::vector<FormulaLine> out;
    std::size_t              line_no = 0;
    std::size_t              start   = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      ++line_no;
      std::string_view line = text.substr(start, end - start);
      std::size_t      hash = line.find('#');
      std::string_view body = line.substr(0, hash);
      if (body.find_first_not_of(" \t\r") != std::string_view::npos) {
        try {
          auto r = parse_with_diagnostics(body);
          out.push_back({line_no, r.formula, r.warnings});
        } catch (ParseError const& e) {
          throw ParseError(e.message(), line_no, e.column());
        }
      }
      start = end + 1;
    }
    return out;
  }

}  // namespace honda::fol
