#pragma once

// Reference evaluator: structural recursion over the syntax tree, with
// quantifiers looping over every element of the (finite) ring.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "honda/errors.hpp"
#include "honda/folang/ast.hpp"
#include "honda/ring.hpp"

namespace honda::fol {

  //! Values for (at least) the free variables of a formula.
  class Assignment {
   public:
    Assignment() = default;

    Assignment& set(std::string_view var, RingElement value) {
      values_.insert_or_assign(intern(var), value);
      return *this;
    }
    Assignment& set(SymbolId var, RingElement value) {
      values_.insert_or_assign(var, value);
      return *this;
    }

    RingElement const* find(SymbolId var) const {
      auto it = values_.find(var);
      return it == values_.end() ? nullptr : &it->second;
    }

    std::map<SymbolId, RingElement> const& values() const noexcept {
      return values_;
    }

   private:
    std::map<SymbolId, RingElement> values_;
  };

  //! Counters shared by both evaluators: `atoms` counts equations
  //! evaluated, `iterations` counts quantifier loop passes.
  struct EvalStats {
    std::uint64_t atoms      = 0;
    std::uint64_t iterations = 0;
  };

  namespace detail {
    inline std::vector<SymbolId> check_assignment(Formula const&     f,
                                                  ResidueRing const& ring,
                                                  Assignment const&  env) {
      auto fv = free_vars_ordered(f);
      std::string missing;
      for (auto v : fv) {
        if (env.find(v) == nullptr) {
          missing += (missing.empty() ? "" : ", ") + symbol_name(v);
        }
      }
      if (!missing.empty()) {
        throw UsageError("assignment does not cover free variable(s) "
                         + missing);
      }
      for (auto const& [v, x] : env.values()) {
        if (!(x.ring() == ring)) {
          throw UsageError("assignment value for " + symbol_name(v)
                           + " lies in a different ring");
        }
      }
      return fv;
    }
  }  // namespace detail

  //! Binds a formula and a ring once, then evaluates it repeatedly by
  //! structural recursion. The syntax tree is copied into flat arrays
  //! (children referenced by index) and the environment is an array
  //! indexed by symbol id.
  class NaiveEvaluator {
   public:
    NaiveEvaluator(Formula f, ResidueRing ring)
        : f_(std::move(f)), ring_(ring), free_(free_vars_ordered(f_)) {
      SymbolId top = 0;
      for (auto v : all_vars(f_)) {
        top = std::max(top, v);
      }
      env_.assign(static_cast<std::size_t>(top) + 1, 0);
      root_ = flatten(f_.node());
    }

    std::vector<SymbolId> const& free_variables() const noexcept {
      return free_;
    }

    //! Sets a variable's value by raw residue (no range check).
    void bind(SymbolId var, residue_type value) {
      if (var < env_.size()) {
        env_[var] = value;
      }
    }

    bool evaluate(Assignment const& env, EvalStats* stats = nullptr) {
      detail::check_assignment(f_, ring_, env);
      for (auto const& [v, x] : env.values()) {
        bind(v, x.value());
      }
      return evaluate_bound(stats);
    }

    //! Evaluates with whatever values were last bound.
    bool evaluate_bound(EvalStats* stats = nullptr) {
      stats_ = stats;
      return stats ? eval<true>(root_) : eval<false>(root_);
    }

   private:
    struct TNode {
      Term::Kind    kind;
      std::uint32_t a;  // symbol for variables, else left child
      std::uint32_t b;
    };
    struct FNode {
      Formula::Kind kind;
      std::uint32_t a;  // left term / first subformula
      std::uint32_t b;  // right term / second subformula
      SymbolId      bound;
    };

    std::uint32_t flatten(Term::Node const* t) {
      TNode n{t->kind, 0, 0};
      if (t->kind == Term::Kind::variable) {
        n.a = t->symbol;
      } else if (t->kind == Term::Kind::add || t->kind == Term::Kind::mul) {
        n.a = flatten(t->lhs.get());
        n.b = flatten(t->rhs.get());
      }
      terms_.push_back(n);
      return static_cast<std::uint32_t>(terms_.size() - 1);
    }

    std::uint32_t flatten(Formula::Node const* f) {
      FNode n{f->kind, 0, 0, f->symbol};
      switch (f->kind) {
        case Formula::Kind::equals:
          n.a = flatten(f->lhs.node());
          n.b = flatten(f->rhs.node());
          break;
        case Formula::Kind::conjunction:
        case Formula::Kind::disjunction:
        case Formula::Kind::implication:
          n.a = flatten(f->a.get());
          n.b = flatten(f->b.get());
          break;
        default:
          n.a = flatten(f->a.get());
          break;
      }
      formulas_.push_back(n);
      return static_cast<std::uint32_t>(formulas_.size() - 1);
    }

    residue_type term(std::uint32_t i) const {
      TNode const& t = terms_[i];
      switch (t.kind) {
        case Term::Kind::variable:
          return env_[t.a];
        case Term::Kind::zero:
          return 0;
        case Term::Kind::one:
          return 1 % ring_.modulus();
        case Term::Kind::add:
          return ring_.add(term(t.a), term(t.b));
        case Term::Kind::mul:
          return ring_.mul(term(t.a), term(t.b));
      }
      return 0;
    }

    template <bool Count>
    bool eval(std::uint32_t i) {
      FNode const& f = formulas_[i];
      switch (f.kind) {
        case Formula::Kind::equals:
          if constexpr (Count) {
            ++stats_->atoms;
          }
          return term(f.a) == term(f.b);
        case Formula::Kind::negation:
          return !eval<Count>(f.a);
        case Formula::Kind::conjunction:
          return eval<Count>(f.a) && eval<Count>(f.b);
        case Formula::Kind::disjunction:
          return eval<Count>(f.a) || eval<Count>(f.b);
        case Formula::Kind::implication:
          return !eval<Count>(f.a) || eval<Count>(f.b);
        case Formula::Kind::forall:
        case Formula::Kind::exists: {
          bool const         want   = f.kind == Formula::Kind::exists;
          residue_type const saved  = env_[f.bound];
          bool               result = !want;
          for (residue_type v = 0; v < ring_.modulus(); ++v) {
            if constexpr (Count) {
              ++stats_->iterations;
            }
            env_[f.bound] = v;
            if (eval<Count>(f.a) == want) {
              result = want;
              break;
            }
          }
          env_[f.bound] = saved;
          return result;
        }
      }
      return false;
    }

    Formula                   f_;
    ResidueRing               ring_;
    std::vector<SymbolId>     free_;
    std::vector<residue_type> env_;
    std::vector<TNode>        terms_;
    std::vector<FNode>        formulas_;
    std::uint32_t             root_  = 0;
    EvalStats*                stats_ = nullptr;
  };

  inline bool eval_naive(Formula const&     f,
                         ResidueRing const& ring,
                         Assignment const&  env   = {},
                         EvalStats*         stats = nullptr) {
    NaiveEvaluator ev(f, ring);
    return ev.evaluate(env, stats);
  }

}  // namespace honda::fol
