#pragma once

// Compiles a formula for one ring into a flat instruction sequence over a
// register file. Connectives become conditional jumps (short-circuiting in
// the same order as the reference evaluator), quantifiers become counted
// loops with early exit, and closed subterms are folded to constants.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "honda/errors.hpp"
#include "honda/folang/ast.hpp"
#include "honda/folang/eval.hpp"
#include "honda/ring.hpp"

namespace honda::fol {

  class CompiledFormula {
   public:
    enum class Op : std::uint8_t { add, mul, br_eq, loop_init, loop_next, ret };

    struct Instr {
      Op            op;
      std::uint32_t a   = 0;  // operand register, loop register, or ret value
      std::uint32_t b   = 0;  // operand register
      std::uint32_t dst = 0;  // destination register
      std::uint32_t t   = 0;  // jump target when true / loop continues
      std::uint32_t f   = 0;  // jump target when false / loop exhausted
    };

    CompiledFormula(Formula const& f, ResidueRing const& ring)
        : ring_(ring), free_(free_vars_ordered(f)) {
      Builder b(*this);
      b.build(f);
    }

    ResidueRing const& ring() const noexcept {
      return ring_;
    }
    //! Free variables in order of first occurrence; evaluate_raw() takes
    //! their values in this order.
    std::vector<SymbolId> const& free_variables() const noexcept {
      return free_;
    }
    std::size_t instruction_count() const noexcept {
      return code_.size();
    }
    std::size_t register_count() const noexcept {
      return init_.size();
    }

    bool evaluate(Assignment const& env, EvalStats* stats = nullptr) const {
      std::vector<residue_type> values;
      values.reserve(free_.size());
      for (auto v : free_) {
        RingElement const* x = env.find(v);
        if (x == nullptr) {
          throw UsageError("assignment does not cover free variable "
                           + symbol_name(v));
        }
        if (!(x->ring() == ring_)) {
          throw UsageError("assignment value for " + symbol_name(v)
                           + " lies in a different ring");
        }
        values.push_back(x->value());
      }
      std::vector<residue_type> scratch;
      return evaluate_raw(values, scratch, stats);
    }

    //! `free_values` must hold canonical residues in free_variables() order.
    //! `scratch` is the caller's register file; it is resized as needed, so
    //! reusing one per thread avoids allocation.
    bool evaluate_raw(std::span<residue_type const> free_values,
                      std::vector<residue_type>&    scratch,
                      EvalStats*                    stats = nullptr) const {
      if (free_values.size() != free_.size()) {
        throw UsageError("expected " + std::to_string(free_.size())
                         + " free-variable values");
      }
      scratch.assign(init_.begin(), init_.end());
      for (std::size_t k = 0; k < free_regs_.size(); ++k) {
        scratch[free_regs_[k]] = free_values[k];
      }
      return stats ? run<true>(scratch.data(), stats)
                   : run<false>(scratch.data(), nullptr);
    }

   private:
    template <bool Count>
    bool run(residue_type* R, EvalStats* stats) const {
      Instr const* code = code_.data();
      auto const   m    = ring_.modulus();
      std::uint32_t pc  = 0;
      for (;;) {
        Instr const& in = code[pc];
        switch (in.op) {
          case Op::add: {
            residue_type s = R[in.a] + R[in.b];
            R[in.dst]      = s >= m ? s - m : s;
            ++pc;
            break;
          }
          case Op::mul:
            R[in.dst] = (R[in.a] * R[in.b]) % m;
            ++pc;
            break;
          case Op::br_eq:
            if constexpr (Count) {
              ++stats->atoms;
            }
            pc = R[in.a] == R[in.b] ? in.t : in.f;
            break;
          case Op::loop_init:
            if constexpr (Count) {
              ++stats->iterations;
            }
            R[in.a] = 0;
            ++pc;
            break;
          case Op::loop_next:
            if (++R[in.a] < m) {
              if constexpr (Count) {
                ++stats->iterations;
              }
              pc = in.t;
            } else {
              pc = in.f;
            }
            break;
          case Op::ret:
            return in.a != 0;
        }
      }
    }

    class Builder {
     public:
      explicit Builder(CompiledFormula& cf) : cf_(cf) {}

      void build(Formula const& f) {
        for (auto v : cf_.free_) {
          std::uint32_t r = new_register();
          cf_.free_regs_.push_back(r);
          scope_.push_back({v, r});
        }
        Label t = new_label(), fl = new_label();
        // code_[0] must be the entry point; returns are emitted at the end.
        formula(f, t, fl);
        place(t);
        emit({Op::ret, 1});
        place(fl);
        emit({Op::ret, 0});
        for (auto& in : cf_.code_) {
          if (in.op == Op::br_eq || in.op == Op::loop_next) {
            in.t = labels_.at(in.t);
            in.f = labels_.at(in.f);
          }
        }
        cf_.init_.resize(next_reg_ + max_temps_, 0);
        for (auto const& [value, reg] : constants_) {
          cf_.init_[reg] = value;
        }
        // temporaries live above the named registers
        for (auto& in : cf_.code_) {
          if (in.op == Op::add || in.op == Op::mul) {
            fix_temp(in.a);
            fix_temp(in.b);
            fix_temp(in.dst);
          } else if (in.op == Op::br_eq) {
            fix_temp(in.a);
            fix_temp(in.b);
          }
        }
      }

     private:
      using Label = std::uint32_t;
      static constexpr std::uint32_t temp_flag = 1u << 31;

      struct Binding {
        SymbolId      var;
        std::uint32_t reg;
      };

      Label new_label() {
        labels_.push_back(0);
        return static_cast<Label>(labels_.size() - 1);
      }
      void place(Label l) {
        labels_[l] = static_cast<std::uint32_t>(cf_.code_.size());
      }
      void emit(Instr in) {
        cf_.code_.push_back(in);
      }
      std::uint32_t new_register() {
        return next_reg_++;
      }
      void fix_temp(std::uint32_t& r) const {
        if (r & temp_flag) {
          r = next_reg_ + (r & ~temp_flag);
        }
      }

      std::uint32_t constant(residue_type v) {
        auto it = constants_.find(v);
        if (it != constants_.end()) {
          return it->second;
        }
        std::uint32_t r = new_register();
        constants_.emplace(v, r);
        return r;
      }

      // Value of a closed term, or nullopt if it mentions a variable.
      std::optional<residue_type> fold(Term::Node const* t) const {
        switch (t->kind) {
          case Term::Kind::variable:
            return std::nullopt;
          case Term::Kind::zero:
            return 0;
          case Term::Kind::one:
            return 1;
          default: {
            auto a = fold(t->lhs.get());
            if (!a) {
              return std::nullopt;
            }
            auto b = fold(t->rhs.get());
            if (!b) {
              return std::nullopt;
            }
            return t->kind == Term::Kind::add ? cf_.ring_.add(*a, *b)
                                              : cf_.ring_.mul(*a, *b);
          }
        }
      }

      std::uint32_t term(Term::Node const* t) {
        if (auto v = fold(t)) {
          return constant(*v);
        }
        if (t->kind == Term::Kind::variable) {
          for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
            if (it->var == t->symbol) {
              return it->reg;
            }
          }
          throw UsageError("unbound variable " + symbol_name(t->symbol));
        }
        std::uint32_t a   = term(t->lhs.get());
        std::uint32_t b   = term(t->rhs.get());
        std::uint32_t dst = temp_flag | temps_++;
        max_temps_        = std::max(max_temps_, temps_);
        emit({t->kind == Term::Kind::add ? Op::add : Op::mul, a, b, dst});
        return dst;
      }

      void formula(Formula const& f, Label t, Label fl) {
        switch (f.kind()) {
          case Formula::Kind::equals: {
            temps_          = 0;
            std::uint32_t a = term(f.lhs().node());
            std::uint32_t b = term(f.rhs().node());
            emit({Op::br_eq, a, b, 0, t, fl});
            return;
          }
          case Formula::Kind::negation:
            formula(f.first(), fl, t);
            return;
          case Formula::Kind::conjunction: {
            Label mid = new_label();
            formula(f.first(), mid, fl);
            place(mid);
            formula(f.second(), t, fl);
            return;
          }
          case Formula::Kind::disjunction: {
            Label mid = new_label();
            formula(f.first(), t, mid);
            place(mid);
            formula(f.second(), t, fl);
            return;
          }
          case Formula::Kind::implication: {
            Label mid = new_label();
            formula(f.first(), mid, t);
            place(mid);
            formula(f.second(), t, fl);
            return;
          }
          case Formula::Kind::forall:
          case Formula::Kind::exists: {
            bool const    all = f.kind() == Formula::Kind::forall;
            std::uint32_t reg = new_register();
            scope_.push_back({f.bound(), reg});
            emit({Op::loop_init, reg});
            Label body = new_label(), next = new_label();
            place(body);
            if (all) {
              formula(f.first(), next, fl);
            } else {
              formula(f.first(), t, next);
            }
            place(next);
            emit({Op::loop_next, reg, 0, 0, body, all ? t : fl});
            scope_.pop_back();
            return;
          }
        }
      }

      CompiledFormula&                        cf_;
      std::vector<std::uint32_t>              labels_;
      std::vector<Binding>                    scope_;
      std::map<residue_type, std::uint32_t>   constants_;
      std::uint32_t                           next_reg_  = 0;
      std::uint32_t                           temps_     = 0;
      std::uint32_t                           max_temps_ = 0;
    };

    ResidueRing                ring_;
    std::vector<SymbolId>      free_;
    std::vector<std::uint32_t> free_regs_;
    std::vector<Instr>         code_;
    std::vector<residue_type>  init_;
  };

  inline CompiledFormula compile(Formula const& f, ResidueRing const& ring) {
    return CompiledFormula(f, ring);
  }

}  // namespace honda::fol
