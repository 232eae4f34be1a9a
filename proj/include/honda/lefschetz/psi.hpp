#pragma once

// Evaluating the sentence psi_{n,s,t,r} over Z/m, and cross-checks between
// the formula evaluators and the semantic criterion.
//
// psi = forall Z. body(Z). Each Z_ab occurs in body only inside "X in G_Z"
// subformulas (and in eta, which says I in G_Z), and each of those is true
// exactly when X lies in the vanishing set G_Z. So body(alpha) depends on
// alpha only through the member mask of G_alpha: the sweep evaluates the
// compiled body once per distinct mask, at the first alpha that produced it.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "honda/folang/compile.hpp"
#include "honda/folang/eval.hpp"
#include "honda/lefschetz/formulas.hpp"
#include "honda/lefschetz/semantic.hpp"
#include "honda/parallel.hpp"

namespace honda::lefschetz {

  namespace detail {
    //! For each free variable of `free` (all of the form Z_a_b), its
    //! position among the canonical alpha digits.
    inline std::vector<std::size_t> z_slots(std::vector<fol::SymbolId> const& free,
                                            std::size_t                       c) {
      std::unordered_map<fol::SymbolId, std::size_t> slot;
      for (std::size_t b = 1; b <= c; ++b) {
        for (std::size_t a = 1; a <= c; ++a) {
          slot.emplace(fol::intern(z_name(a, b)), (b - 1) * c + (a - 1));
        }
      }
      std::vector<std::size_t> out;
      for (auto v : free) {
        auto it = slot.find(v);
        if (it == slot.end()) {
          throw UsageError("unexpected free variable " + fol::symbol_name(v));
        }
        out.push_back(it->second);
      }
      return out;
    }

    //! A compiled formula in the Z_ab, evaluated at an alpha given by its
    //! canonical digits.
    class ZFormula {
     public:
      ZFormula(fol::Formula const& f, ResidueRing const& ring, std::size_t c)
          : compiled_(f, ring), slots_(z_slots(compiled_.free_variables(), c)) {}

      bool operator()(std::span<residue_type const> digits,
                      fol::EvalStats*               stats = nullptr) const {
        std::vector<residue_type> values(slots_.size());
        for (std::size_t k = 0; k < slots_.size(); ++k) {
          values[k] = digits[slots_[k]];
        }
        std::vector<residue_type> scratch;
        return compiled_.evaluate_raw(values, scratch, stats);
      }

     private:
      fol::CompiledFormula     compiled_;
      std::vector<std::size_t> slots_;
    };
  }  // namespace detail

  struct PsiEvalReport {
    bool          value = true;
    PsiScope      scope = PsiScope::whole_implication;
    SweepMode     mode  = SweepMode::exhaustive;
    std::uint64_t alphas_visited      = 0;
    std::uint64_t distinct_sets       = 0;
    std::uint64_t formula_evaluations = 0;
    std::uint64_t atoms               = 0;  //!< summed over formula evaluations
    //! For whole-implication scope: the first alpha at which the body is
    //! false. For guard-only scope: unset.
    std::optional<std::uint64_t>  first_false_visit;
    std::optional<ParameterTuple> first_false_alpha;
  };

  //! Truth of psi over Z/m. With an exhaustive sweep this is the exact
  //! truth value of the sentence; with a sampled sweep it is the truth of
  //! the body on every sampled alpha.
  inline PsiEvalReport eval_psi(ResidueRing const&  ring,
                                PsiParams const&    p,
                                SweepOptions const& opts,
                                PsiScope            scope = PsiScope::whole_implication,
                                std::uint64_t       scan_cap = default_scan_cap) {
    MonomialBasis const basis = p.basis();
    std::size_t const   c     = basis.c();
    sweep_size(ring, c, opts);
    AlphaSpace space(ring, basis, scan_cap);
    MaskSweep  sweep = sweep_masks(space, opts);

    PsiEvalReport r;
    r.scope          = scope;
    r.mode           = opts.mode;
    r.alphas_visited = sweep.visited;
    r.distinct_sets  = sweep.classes.size();

    auto const n = sweep.classes.size();
    // Evaluates f on every class; results in class order.
    auto evaluate_all = [&](detail::ZFormula const& f) {
      std::vector<char>           out(n);
      std::vector<fol::EvalStats> stats(n);
      parallel_for(n, opts.workers,
                   [&](std::size_t k) { out[k] = f(sweep.classes[k].rep, &stats[k]); });
      r.formula_evaluations += n;
      for (auto const& s : stats) {
        r.atoms += s.atoms;
      }
      return out;
    };

    if (scope == PsiScope::whole_implication) {
      auto body = evaluate_all(detail::ZFormula(build_psi_body(p), ring, c));
      for (std::size_t k = 0; k < n; ++k) {
        if (!body[k]) {
          r.value             = false;
          r.first_false_visit = sweep.classes[k].first_visit;
          r.first_false_alpha =
              ParameterTuple::from_digits(ring, basis, sweep.classes[k].rep);
          break;
        }
      }
      return r;
    }
    auto guard = evaluate_all(detail::ZFormula(build_guard(basis), ring, c));
    if (std::find(guard.begin(), guard.end(), 0) != guard.end()) {
      r.value = true;  // the antecedent (forall Z) guard is false
      return r;
    }
    auto cons = evaluate_all(detail::ZFormula(build_psi_consequent(p), ring, c));
    r.value   = std::find(cons.begin(), cons.end(), 0) == cons.end();
    return r;
  }

  //! Evaluates psi with the reference evaluator, quantifier by quantifier.
  //! Only feasible for tiny parameter spaces.
  inline bool eval_psi_naive(ResidueRing const& ring,
                             PsiParams const&   p,
                             PsiScope           scope = PsiScope::whole_implication,
                             fol::EvalStats*    stats = nullptr) {
    return fol::eval_naive(build_psi(p, scope), ring, {}, stats);
  }

  struct GuardCheckReport {
    std::uint64_t alphas_checked  = 0;
    std::uint64_t subgroup_alphas = 0;
    std::uint64_t disagreements   = 0;
    std::optional<std::uint64_t> first_disagreement;  //!< sweep step
  };

  //! For every alpha of the sweep (or the first `limit` of them, if
  //! nonzero), evaluates the guard phi & chi & eta with the reference
  //! evaluator and compares with direct subgroup validation of G_alpha.
  inline GuardCheckReport naive_guard_check(ResidueRing const&  ring,
                                            MonomialBasis const& basis,
                                            SweepOptions const& opts,
                                            std::uint64_t       limit    = 0,
                                            std::uint64_t scan_cap = default_scan_cap) {
    std::size_t const c     = basis.c();
    std::uint64_t     total = sweep_size(ring, c, opts);
    AlphaSpace        space(ring, basis, scan_cap);
    // In closure mode the visits are the class representatives.
    MaskSweep closure;
    if (opts.mode == SweepMode::closure) {
      closure = sweep_masks(space, opts);
      total   = closure.classes.size();
    }
    if (limit != 0) {
      total = std::min(total, limit);
    }
    fol::Formula     guard = build_guard(basis);
    std::vector<fol::SymbolId> zs;
    for (std::size_t b = 1; b <= c; ++b) {
      for (std::size_t a = 1; a <= c; ++a) {
        zs.push_back(fol::intern(z_name(a, b)));  // canonical digit order
      }
    }

    struct Partial {
      std::uint64_t                subgroups = 0;
      std::uint64_t                bad       = 0;
      std::optional<std::uint64_t> first;
    };
    std::uint64_t const  block   = std::uint64_t(1) << 14;
    std::uint64_t const  nblocks = (total + block - 1) / block;
    std::vector<Partial> parts(nblocks);
    parallel_for(nblocks, opts.workers, [&](std::size_t b) {
      fol::NaiveEvaluator ev(guard, ring);
      std::unordered_map<Mask, bool, MaskHash> valid;
      std::vector<residue_type>                digits(c * c);
      Partial&                                 part  = parts[b];
      std::uint64_t const                      begin = b * block;
      std::uint64_t const                      end   = std::min(total, begin + block);
      for (std::uint64_t visit = begin; visit < end; ++visit) {
        if (opts.mode == SweepMode::closure) {
          digits = closure.classes[visit].rep;
        } else {
          alpha_digits(ring, c, opts, visit, digits);
        }
        for (std::size_t k = 0; k < zs.size(); ++k) {
          ev.bind(zs[k], digits[k]);
        }
        bool const syntactic = ev.evaluate_bound();
        Mask       mask      = space.mask(digits);
        auto       it        = valid.find(mask);
        if (it == valid.end()) {
          it = valid.emplace(mask, analyze_subgroup(space, mask, 1, 1).valid).first;
        }
        part.subgroups += it->second;
        if (syntactic != it->second) {
          ++part.bad;
          if (!part.first) {
            part.first = visit;
          }
        }
      }
    });
    GuardCheckReport r;
    r.alphas_checked = total;
    for (auto const& part : parts) {
      r.subgroup_alphas += part.subgroups;
      r.disagreements += part.bad;
      if (part.first && !r.first_disagreement) {
        r.first_disagreement = part.first;
      }
    }
    return r;
  }

  struct CrossCheckReport {
    bool          agree = true;
    bool          psi_value   = true;
    bool          dagger_pass = true;
    std::uint64_t alphas_visited    = 0;
    std::uint64_t classes_checked   = 0;
    std::uint64_t guard_disagreements = 0;  //!< compiled guard vs validation
    std::uint64_t body_disagreements  = 0;  //!< compiled body vs criterion
    GuardCheckReport naive;                 //!< reference evaluator vs validation
    std::optional<std::uint64_t> first_disagreement;
  };

  //! Compares, on every distinct G_alpha of the sweep, the compiled guard
  //! with subgroup validation and the compiled body with the criterion;
  //! then runs the reference evaluator on the first `naive_limit` alphas.
  inline CrossCheckReport cross_check(ResidueRing const&  ring,
                                      PsiParams const&    p,
                                      SweepOptions const& opts,
                                      std::uint64_t       naive_limit = 1000,
                                      std::uint64_t scan_cap = default_scan_cap) {
    MonomialBasis const basis = p.basis();
    std::size_t const   c     = basis.c();
    sweep_size(ring, c, opts);
    AlphaSpace       space(ring, basis, scan_cap);
    MaskSweep        sweep = sweep_masks(space, opts);
    detail::ZFormula guard(build_guard(basis), ring, c);
    detail::ZFormula body(build_psi_body(p), ring, c);

    std::size_t const n = sweep.classes.size();
    struct Row {
      bool valid, dagger, guard, body;
    };
    std::vector<Row> rows(n);
    parallel_for(n, opts.workers, [&](std::size_t k) {
      auto const& mc = sweep.classes[k];
      auto        v  = analyze_subgroup(space, mc.mask, p.s, p.t);
      rows[k]        = {v.valid, v.dagger, guard(mc.rep), body(mc.rep)};
    });
    CrossCheckReport r;
    r.alphas_visited  = sweep.visited;
    r.classes_checked = n;
    for (std::size_t k = 0; k < n; ++k) {
      auto const& row = rows[k];
      bool        bad = false;
      if (row.guard != row.valid) {
        ++r.guard_disagreements;
        bad = true;
      }
      if (row.body != (!row.valid || row.dagger)) {
        ++r.body_disagreements;
        bad = true;
      }
      r.psi_value   = r.psi_value && row.body;
      r.dagger_pass = r.dagger_pass && (!row.valid || row.dagger);
      if (bad && !r.first_disagreement) {
        r.first_disagreement = sweep.classes[k].first_visit;
      }
    }
    if (naive_limit != 0) {
      r.naive = naive_guard_check(ring, basis, opts, naive_limit, scan_cap);
    }
    r.agree = r.guard_disagreements == 0 && r.body_disagreements == 0
              && r.naive.disagreements == 0 && r.psi_value == r.dagger_pass;
    return r;
  }

}  // namespace honda::lefschetz
