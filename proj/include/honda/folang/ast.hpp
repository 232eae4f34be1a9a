#pragma once

// Terms and formulas of the first-order language of rings: + and * as the
// only function symbols, 0 and 1 as constants, = as the only relation.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "honda/errors.hpp"

namespace honda::fol {

  using SymbolId = std::uint32_t;

  //! Process-wide interning of variable names. Ids are dense, so evaluators
  //! can use them directly as slots in a flat environment.
  class SymbolTable {
   public:
    static SymbolTable& global() {
      static SymbolTable table;
      return table;
    }

    SymbolId intern(std::string_view name) {
      std::lock_guard<std::mutex> lock(mtx_);
      auto it = ids_.find(std::string(name));
      if (it != ids_.end()) {
        return it->second;
      }
      SymbolId id = static_cast<SymbolId>(names_.size());
      names_.emplace_back(name);
      ids_.emplace(names_.back(), id);
      return id;
    }

    std::string const& name(SymbolId id) const {
      std::lock_guard<std::mutex> lock(mtx_);
      return names_.at(id);
    }

    std::size_t size() const {
      std::lock_guard<std::mutex> lock(mtx_);
      return names_.size();
    }

   private:
    mutable std::mutex                        mtx_;
    std::deque<std::string>                   names_;
    std::unordered_map<std::string, SymbolId> ids_;
  };

  inline SymbolId intern(std::string_view name) {
    return SymbolTable::global().intern(name);
  }
  inline std::string const& symbol_name(SymbolId id) {
    return SymbolTable::global().name(id);
  }

  class Term {
   public:
    enum class Kind : std::uint8_t { variable, zero, one, add, mul };
    struct Node;

    static Term variable(std::string_view name) {
      return Term(Kind::variable, intern(name), nullptr, nullptr);
    }
    static Term variable(SymbolId id) {
      return Term(Kind::variable, id, nullptr, nullptr);
    }
    static Term zero() {
      static Term const z(Kind::zero, 0, nullptr, nullptr);
      return z;
    }
    static Term one() {
      static Term const o(Kind::one, 0, nullptr, nullptr);
      return o;
    }
    //! 0, 1, or the left-nested sum 1 + 1 + ... + 1 with k summands.
    static Term numeral(std::uint64_t k) {
      if (k == 0) {
        return zero();
      }
      Term t = one();
      for (std::uint64_t i = 1; i < k; ++i) {
        t = t + one();
      }
      return t;
    }

    friend Term operator+(Term const& a, Term const& b) {
      return Term(Kind::add, 0, a.node_, b.node_);
    }
    friend Term operator*(Term const& a, Term const& b) {
      return Term(Kind::mul, 0, a.node_, b.node_);
    }

    Kind        kind() const noexcept;
    SymbolId    symbol() const noexcept;
    std::string const& name() const {
      return symbol_name(symbol());
    }
    Term lhs() const;
    Term rhs() const;

    Node const* node() const noexcept {
      return node_.get();
    }

    //! If this is a numeral (0, 1, or a left-nested chain of 1s), its value.
    std::optional<std::uint64_t> as_numeral() const;

    friend bool operator==(Term const& a, Term const& b);

   private:
    Term(Kind                        k,
         SymbolId                    s,
         std::shared_ptr<Node const> l,
         std::shared_ptr<Node const> r);
    explicit Term(std::shared_ptr<Node const> n) : node_(std::move(n)) {}

    std::shared_ptr<Node const> node_;
  };

  struct Term::Node {
    Kind                        kind;
    SymbolId                    symbol;
    std::shared_ptr<Node const> lhs;
    std::shared_ptr<Node const> rhs;
  };

  inline Term::Term(Kind                        k,
                    SymbolId                    s,
                    std::shared_ptr<Node const> l,
                    std::shared_ptr<Node const> r)
      : node_(std::make_shared<Node const>(Node{k, s, std::move(l), std::move(r)})) {}

  inline Term::Kind Term::kind() const noexcept {
    return node_->kind;
  }
  inline SymbolId Term::symbol() const noexcept {
    return node_->symbol;
  }
  inline Term Term::lhs() const {
    return Term(node_->lhs);
  }
  inline Term Term::rhs() const {
    return Term(node_->rhs);
  }

  inline std::optional<std::uint64_t> Term::as_numeral() const {
    std::uint64_t count = 0;
    Node const*   n     = node_.get();
    while (n->kind == Kind::add) {
      if (n->rhs->kind != Kind::one) {
        return std::nullopt;
      }
      ++count;
      n = n->lhs.get();
    }
    if (n->kind == Kind::zero) {
      return count == 0 ? std::optional<std::uint64_t>(0) : std::nullopt;
    }
    if (n->kind == Kind::one) {
      return count + 1;
    }
    return std::nullopt;
  }

  namespace detail {
    inline bool term_equal(Term::Node const* a, Term::Node const* b) {
      if (a == b) {
        return true;
      }
      if (a->kind != b->kind) {
        return false;
      }
      switch (a->kind) {
        case Term::Kind::variable:
          return a->symbol == b->symbol;
        case Term::Kind::zero:
        case Term::Kind::one:
          return true;
        default:
          return term_equal(a->lhs.get(), b->lhs.get())
                 && term_equal(a->rhs.get(), b->rhs.get());
      }
    }
  }  // namespace detail

  inline bool operator==(Term const& a, Term const& b) {
    return detail::term_equal(a.node(), b.node());
  }

  class Formula {
   public:
    enum class Kind : std::uint8_t {
      equals,
      negation,
      conjunction,
      disjunction,
      implication,
      forall,
      exists
    };
    struct Node;

    static Formula equals(Term const& lhs, Term const& rhs);
    static Formula negation(Formula const& f);
    static Formula conjunction(Formula const& a, Formula const& b);
    static Formula disjunction(Formula const& a, Formula const& b);
    static Formula implication(Formula const& a, Formula const& b);
    static Formula forall(std::string_view var, Formula const& body);
    static Formula exists(std::string_view var, Formula const& body);
    static Formula forall(SymbolId var, Formula const& body);
    static Formula exists(SymbolId var, Formula const& body);

    Kind kind() const noexcept;
    //! Sides of an equation.
    Term const& lhs() const;
    Term const& rhs() const;
    //! Operand of a negation, left operand of a connective, or body of a
    //! quantifier.
    Formula first() const;
    Formula second() const;
    //! Variable bound by a quantifier.
    SymbolId           bound() const noexcept;
    std::string const& bound_name() const {
      return symbol_name(bound());
    }
    bool is_quantifier() const noexcept {
      return kind() == Kind::forall || kind() == Kind::exists;
    }

    Node const* node() const noexcept {
      return node_.get();
    }

    friend bool operator==(Formula const& a, Formula const& b);

   private:
    explicit Formula(std::shared_ptr<Node const> n) : node_(std::move(n)) {}
    std::shared_ptr<Node const> node_;
  };

  struct Formula::Node {
    Kind                        kind;
    SymbolId                    symbol = 0;
    Term                        lhs    = Term::zero();
    Term                        rhs    = Term::zero();
    std::shared_ptr<Node const> a;
    std::shared_ptr<Node const> b;
  };

  inline Formula Formula::equals(Term const& lhs, Term const& rhs) {
    return Formula(std::make_shared<Node const>(
        Node{Kind::equals, 0, lhs, rhs, nullptr, nullptr}));
  }
  inline Formula Formula::negation(Formula const& f) {
    return Formula(std::make_shared<Node const>(
        Node{Kind::negation, 0, Term::zero(), Term::zero(), f.node_, nullptr}));
  }
  inline Formula Formula::conjunction(Formula const& a, Formula const& b) {
    return Formula(std::make_shared<Node const>(Node{
        Kind::conjunction, 0, Term::zero(), Term::zero(), a.node_, b.node_}));
  }
  inline Formula Formula::disjunction(Formula const& a, Formula const& b) {
    return Formula(std::make_shared<Node const>(Node{
        Kind::disjunction, 0, Term::zero(), Term::zero(), a.node_, b.node_}));
  }
  inline Formula Formula::implication(Formula const& a, Formula const& b) {
    return Formula(std::make_shared<Node const>(Node{
        Kind::implication, 0, Term::zero(), Term::zero(), a.node_, b.node_}));
  }
  inline Formula Formula::forall(SymbolId var, Formula const& body) {
    return Formula(std::make_shared<Node const>(
        Node{Kind::forall, var, Term::zero(), Term::zero(), body.node_, nullptr}));
  }
  inline Formula Formula::exists(SymbolId var, Formula const& body) {
    return Formula(std::make_shared<Node const>(
        Node{Kind::exists, var, Term::zero(), Term::zero(), body.node_, nullptr}));
  }
  inline Formula Formula::forall(std::string_view var, Formula const& body) {
    return forall(intern(var), body);
  }
  inline Formula Formula::exists(std::string_view var, Formula const& body) {
    return exists(intern(var), body);
  }

  inline Formula::Kind Formula::kind() const noexcept {
    return node_->kind;
  }
  inline Term const& Formula::lhs() const {
    return node_->lhs;
  }
  inline Term const& Formula::rhs() const {
    return node_->rhs;
  }
  inline Formula Formula::first() const {
    return Formula(node_->a);
  }
  inline Formula Formula::second() const {
    return Formula(node_->b);
  }
  inline SymbolId Formula::bound() const noexcept {
    return node_->symbol;
  }

  namespace detail {
    inline bool formula_equal(Formula::Node const* a, Formula::Node const* b) {
      if (a == b) {
        return true;
      }
      if (a->kind != b->kind) {
        return false;
      }
      switch (a->kind) {
        case Formula::Kind::equals:
          return a->lhs == b->lhs && a->rhs == b->rhs;
        case Formula::Kind::negation:
          return formula_equal(a->a.get(), b->a.get());
        case Formula::Kind::forall:
        case Formula::Kind::exists:
          return a->symbol == b->symbol
                 && formula_equal(a->a.get(), b->a.get());
        default:
          return formula_equal(a->a.get(), b->a.get())
                 && formula_equal(a->b.get(), b->b.get());
      }
    }
  }  // namespace detail

  inline bool operator==(Formula const& a, Formula const& b) {
    return detail::formula_equal(a.node(), b.node());
  }

  ////////////////////////////////////////////////////////////////////////
  // Builders
  ////////////////////////////////////////////////////////////////////////

  inline Formula eq(Term const& a, Term const& b) {
    return Formula::equals(a, b);
  }
  inline Formula operator!(Formula const& f) {
    return Formula::negation(f);
  }
  inline Formula operator&&(Formula const& a, Formula const& b) {
    return Formula::conjunction(a, b);
  }
  inline Formula operator||(Formula const& a, Formula const& b) {
    return Formula::disjunction(a, b);
  }
  inline Formula implies(Formula const& a, Formula const& b) {
    return Formula::implication(a, b);
  }

  //! Left-nested conjunction of a non-empty list.
  inline Formula conjoin(std::vector<Formula> const& parts) {
    if (parts.empty()) {
      throw UsageError("conjoin() needs at least one formula");
    }
    Formula f = parts.front();
    for (std::size_t k = 1; k < parts.size(); ++k) {
      f = f && parts[k];
    }
    return f;
  }

  //! Nested universal quantifiers, vars.front() outermost.
  inline Formula forall(std::vector<std::string> const& vars, Formula body) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      body = Formula::forall(*it, body);
    }
    return body;
  }
  inline Formula exists(std::vector<std::string> const& vars, Formula body) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      body = Formula::exists(*it, body);
    }
    return body;
  }

  ////////////////////////////////////////////////////////////////////////
  // Variables
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline void term_vars(Term::Node const* t, std::vector<SymbolId>& out) {
      switch (t->kind) {
        case Term::Kind::variable:
          if (std::find(out.begin(), out.end(), t->symbol) == out.end()) {
            out.push_back(t->symbol);
          }
          return;
        case Term::Kind::add:
        case Term::Kind::mul:
          term_vars(t->lhs.get(), out);
          term_vars(t->rhs.get(), out);
          return;
        default:
          return;
      }
    }

    inline void free_vars_rec(Formula::Node const*   f,
                              std::vector<SymbolId>& bound,
                              std::vector<SymbolId>& out) {
      switch (f->kind) {
        case Formula::Kind::equals: {
          std::vector<SymbolId> vs;
          term_vars(f->lhs.node(), vs);
          term_vars(f->rhs.node(), vs);
          for (auto v : vs) {
            if (std::find(bound.begin(), bound.end(), v) == bound.end()
                && std::find(out.begin(), out.end(), v) == out.end()) {
              out.push_back(v);
            }
          }
          return;
        }
        case Formula::Kind::negation:
          free_vars_rec(f->a.get(), bound, out);
          return;
        case Formula::Kind::forall:
        case Formula::Kind::exists:
          bound.push_back(f->symbol);
          free_vars_rec(f->a.get(), bound, out);
          bound.pop_back();
          return;
        default:
          free_vars_rec(f->a.get(), bound, out);
          free_vars_rec(f->b.get(), bound, out);
          return;
      }
    }

    inline void all_vars_rec(Formula::Node const* f, std::vector<SymbolId>& out) {
      switch (f->kind) {
        case Formula::Kind::equals:
          term_vars(f->lhs.node(), out);
          term_vars(f->rhs.node(), out);
          return;
        case Formula::Kind::negation:
          all_vars_rec(f->a.get(), out);
          return;
        case Formula::Kind::forall:
        case Formula::Kind::exists:
          if (std::find(out.begin(), out.end(), f->symbol) == out.end()) {
            out.push_back(f->symbol);
          }
          all_vars_rec(f->a.get(), out);
          return;
        default:
          all_vars_rec(f->a.get(), out);
          all_vars_rec(f->b.get(), out);
          return;
      }
    }
  }  // namespace detail

  //! Free variables in order of first occurrence.
  inline std::vector<SymbolId> free_vars_ordered(Formula const& f) {
    std::vector<SymbolId> bound, out;
    detail::free_vars_rec(f.node(), bound, out);
    return out;
  }

  inline std::set<std::string> free_vars(Formula const& f) {
    std::set<std::string> out;
    for (auto id : free_vars_ordered(f)) {
      out.insert(symbol_name(id));
    }
    return out;
  }

  inline bool is_sentence(Formula const& f) {
    return free_vars_ordered(f).empty();
  }

  //! Every variable occurring free or bound, in order of first occurrence.
  inline std::vector<SymbolId> all_vars(Formula const& f) {
    std::vector<SymbolId> out;
    detail::all_vars_rec(f.node(), out);
    return out;
  }

  inline std::vector<SymbolId> term_vars(Term const& t) {
    std::vector<SymbolId> out;
    detail::term_vars(t.node(), out);
    return out;
  }

}  // namespace honda::fol
