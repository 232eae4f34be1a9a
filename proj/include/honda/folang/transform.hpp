#pragma once

// Capture-avoiding substitution and binder normalization.

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "honda/folang/ast.hpp"

namespace honda::fol {

  namespace detail {
    inline SymbolId fresh_symbol(SymbolId base, std::vector<SymbolId>& taken) {
      std::string const& stem = symbol_name(base);
      for (std::size_t k = 1;; ++k) {
        SymbolId id = intern(stem + "_" + std::to_string(k));
        if (std::find(taken.begin(), taken.end(), id) == taken.end()) {
          taken.push_back(id);
          return id;
        }
      }
    }

    inline Term rename_term(Term const&                                  t,
                            std::unordered_map<SymbolId, Term> const&    map) {
      switch (t.kind()) {
        case Term::Kind::variable: {
          auto it = map.find(t.symbol());
          return it == map.end() ? t : it->second;
        }
        case Term::Kind::add:
          return rename_term(t.lhs(), map) + rename_term(t.rhs(), map);
        case Term::Kind::mul:
          return rename_term(t.lhs(), map) * rename_term(t.rhs(), map);
        default:
          return t;
      }
    }

    // Replaces free occurrences according to `map`, renaming any binder that
    // would capture a variable of a replacement term.
    inline Formula subst_rec(Formula const&                      f,
                             std::unordered_map<SymbolId, Term>& map,
                             std::vector<SymbolId> const&        incoming,
                             std::vector<SymbolId>&              taken) {
      switch (f.kind()) {
        case Formula::Kind::equals:
          return eq(rename_term(f.lhs(), map), rename_term(f.rhs(), map));
        case Formula::Kind::negation:
          return !subst_rec(f.first(), map, incoming, taken);
        case Formula::Kind::conjunction:
          return subst_rec(f.first(), map, incoming, taken)
                 && subst_rec(f.second(), map, incoming, taken);
        case Formula::Kind::disjunction:
          return subst_rec(f.first(), map, incoming, taken)
                 || subst_rec(f.second(), map, incoming, taken);
        case Formula::Kind::implication:
          return implies(subst_rec(f.first(), map, incoming, taken),
                         subst_rec(f.second(), map, incoming, taken));
        case Formula::Kind::forall:
        case Formula::Kind::exists: {
          SymbolId y = f.bound();
          auto     saved = map.find(y) == map.end()
                               ? std::optional<Term>()
                               : std::optional<Term>(map.at(y));
          SymbolId binder = y;
          if (std::find(incoming.begin(), incoming.end(), y) != incoming.end()) {
            binder = fresh_symbol(y, taken);
            map.insert_or_assign(y, Term::variable(binder));
          } else {
            map.erase(y);
          }
          Formula body = subst_rec(f.first(), map, incoming, taken);
          if (saved) {
            map.insert_or_assign(y, *saved);
          } else {
            map.erase(y);
          }
          return f.kind() == Formula::Kind::forall
                     ? Formula::forall(binder, body)
                     : Formula::exists(binder, body);
        }
      }
      return f;
    }
  }  // namespace detail

  //! f[var := t], renaming bound variables of f that occur in t.
  inline Formula substitute(Formula const& f, SymbolId var, Term const& t) {
    std::unordered_map<SymbolId, Term> map{{var, t}};
    std::vector<SymbolId>              incoming = term_vars(t);
    std::vector<SymbolId>              taken    = all_vars(f);
    taken.insert(taken.end(), incoming.begin(), incoming.end());
    return detail::subst_rec(f, map, incoming, taken);
  }

  inline Formula substitute(Formula const& f, std::string_view var, Term const& t) {
    return substitute(f, intern(var), t);
  }

  namespace detail {
    inline Formula normalize_rec(Formula const&                      f,
                                 std::unordered_map<SymbolId, Term>& map,
                                 std::vector<SymbolId>&              branch,
                                 std::vector<SymbolId>&              taken) {
      switch (f.kind()) {
        case Formula::Kind::equals:
          return eq(rename_term(f.lhs(), map), rename_term(f.rhs(), map));
        case Formula::Kind::negation:
          return !normalize_rec(f.first(), map, branch, taken);
        case Formula::Kind::conjunction:
          return normalize_rec(f.first(), map, branch, taken)
                 && normalize_rec(f.second(), map, branch, taken);
        case Formula::Kind::disjunction:
          return normalize_rec(f.first(), map, branch, taken)
                 || normalize_rec(f.second(), map, branch, taken);
        case Formula::Kind::implication:
          return implies(normalize_rec(f.first(), map, branch, taken),
                         normalize_rec(f.second(), map, branch, taken));
        case Formula::Kind::forall:
        case Formula::Kind::exists: {
          SymbolId y      = f.bound();
          SymbolId binder = y;
          if (std::find(branch.begin(), branch.end(), y) != branch.end()) {
            binder = fresh_symbol(y, taken);
          }
          auto saved = map.find(y) == map.end()
                           ? std::optional<Term>()
                           : std::optional<Term>(map.at(y));
          if (binder != y) {
            map.insert_or_assign(y, Term::variable(binder));
          } else {
            map.erase(y);
          }
          branch.push_back(binder);
          branch.push_back(y);
          Formula body = normalize_rec(f.first(), map, branch, taken);
          branch.pop_back();
          branch.pop_back();
          if (saved) {
            map.insert_or_assign(y, *saved);
          } else {
            map.erase(y);
          }
          return f.kind() == Formula::Kind::forall
                     ? Formula::forall(binder, body)
                     : Formula::exists(binder, body);
        }
      }
      return f;
    }
  }  // namespace detail

  //! Renames binders so that no variable is bound twice along any branch of
  //! the syntax tree. Formulas already in that form are returned unchanged
  //! (structurally).
  inline Formula normalize(Formula const& f) {
    std::unordered_map<SymbolId, Term> map;
    std::vector<SymbolId>              taken = all_vars(f);
    std::vector<SymbolId>              branch;
    return detail::normalize_rec(f, map, branch, taken);
  }

}  // namespace honda::fol
