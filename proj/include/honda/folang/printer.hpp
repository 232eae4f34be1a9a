#pragma once

// ASCII rendering of terms and formulas. The output re-parses to a
// structurally equal AST (see parser.hpp for the grammar).

#include <sstream>
#include <string>

#include "honda/folang/ast.hpp"

namespace honda::fol {

  namespace detail {
    // Term precedence: 1 = sum, 2 = product, 3 = atom.
    inline int term_level(Term const& t) {
      if (t.kind() == Term::Kind::add && !t.as_numeral()) {
        return 1;
      }
      if (t.kind() == Term::Kind::mul) {
        return 2;
      }
      return 3;
    }

    inline void print_term(std::ostream& os, Term const& t, int ctx) {
      bool const wrap = term_level(t) < ctx;
      if (wrap) {
        os << '(';
      }
      if (auto k = t.as_numeral()) {
        os << *k;
      } else {
        switch (t.kind()) {
          case Term::Kind::variable:
            os << t.name();
            break;
          case Term::Kind::add:
            print_term(os, t.lhs(), 1);
            os << " + ";
            print_term(os, t.rhs(), 2);
            break;
          case Term::Kind::mul:
            print_term(os, t.lhs(), 2);
            os << '*';
            print_term(os, t.rhs(), 3);
            break;
          default:
            break;
        }
      }
      if (wrap) {
        os << ')';
      }
    }

    // Formula precedence: 0 = quantifier, 1 = ->, 2 = |, 3 = &, 4 = !,
    // 5 = equation.
    inline int formula_level(Formula const& f) {
      switch (f.kind()) {
        case Formula::Kind::forall:
        case Formula::Kind::exists:
          return 0;
        case Formula::Kind::implication:
          return 1;
        case Formula::Kind::disjunction:
          return 2;
        case Formula::Kind::conjunction:
          return 3;
        case Formula::Kind::negation:
          return 4;
        case Formula::Kind::equals:
          return 5;
      }
      return 5;
    }

    // `tail` is true when nothing follows f inside the current group, which
    // is the only place a quantifier (whose body extends as far as possible)
    // may appear without parentheses.
    inline void
    print_formula(std::ostream& os, Formula const& f, int ctx, bool tail) {
      int const  level = formula_level(f);
      bool const wrap  = level == 0 ? !tail : level < ctx;
      if (wrap) {
        os << '(';
        tail = true;
      }
      switch (f.kind()) {
        case Formula::Kind::equals:
          print_term(os, f.lhs(), 1);
          os << " = ";
          print_term(os, f.rhs(), 1);
          break;
        case Formula::Kind::negation:
          os << '!';
          print_formula(os, f.first(),
                        f.first().kind() == Formula::Kind::equals ? 6 : 4,
                        tail);
          break;
        case Formula::Kind::conjunction:
          print_formula(os, f.first(), 3, false);
          os << " & ";
          print_formula(os, f.second(), 4, tail);
          break;
        case Formula::Kind::disjunction:
          print_formula(os, f.first(), 2, false);
          os << " | ";
          print_formula(os, f.second(), 3, tail);
          break;
        case Formula::Kind::implication:
          print_formula(os, f.first(), 2, false);
          os << " -> ";
          print_formula(os, f.second(), 1, tail);
          break;
        case Formula::Kind::forall:
        case Formula::Kind::exists: {
          auto const kind = f.kind();
          os << (kind == Formula::Kind::forall ? "forall " : "exists ");
          Formula cur = f;
          os << cur.bound_name();
          cur = cur.first();
          while (cur.kind() == kind) {
            os << ", " << cur.bound_name();
            cur = cur.first();
          }
          os << ". ";
          print_formula(os, cur, 0, true);
          break;
        }
      }
      if (wrap) {
        os << ')';
      }
    }
  }  // namespace detail

  inline std::string to_string(Term const& t) {
    std::ostringstream os;
    detail::print_term(os, t, 0);
    return os.str();
  }

  inline std::string to_string(Formula const& f) {
    std::ostringstream os;
    detail::print_formula(os, f, 0, true);
    return os.str();
  }

  //! Alias matching the parse()/print() pairing.
  inline std::string print(Formula const& f) {
    return to_string(f);
  }

  inline std::ostream& operator<<(std::ostream& os, Formula const& f) {
    return os << to_string(f);
  }
  inline std::ostream& operator<<(std::ostream& os, Term const& t) {
    return os << to_string(t);
  }

}  // namespace honda::fol
