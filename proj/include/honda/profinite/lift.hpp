#pragma once

// Witness lifting through a congruence tower.
//
// For a target delta at the top level, C_k is the set of pairs (sigma, tau)
// at level k with [sigma, tau] = delta mod p^k. The reductions map C_{k+1}
// into C_k, and a top-level witness is a compatible choice of one pair from
// every C_k. The search below builds such a chain depth-first, lifting a
// level-k pair through the reduction fibers above it and backtracking when
// no lift exists.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "honda/honda.hpp"
#include "honda/parallel.hpp"
#include "honda/profinite/tower.hpp"

namespace honda::profinite {

  struct LevelWitness {
    std::size_t  level;
    ElementIndex sigma;  //!< index in the level-k table
    ElementIndex tau;
    SquareMatrix sigma_matrix;
    SquareMatrix tau_matrix;
  };

  struct LiftTrace {
    ElementIndex              delta;  //!< top-level index
    SquareMatrix              delta_matrix;
    std::vector<LevelWitness> levels;      //!< levels 1..K in order
    std::uint64_t             backtracks = 0;  //!< abandoned partial witnesses
    std::uint64_t             candidates = 0;  //!< fiber pairs tested
  };

  struct LiftResult {
    std::optional<LiftTrace> trace;
    //! 0 on success. Otherwise the lowest level at which no witness chain
    //! could be extended: 1 if delta mod p is not a commutator.
    std::size_t   failed_level = 0;
    std::uint64_t backtracks   = 0;
    std::uint64_t candidates   = 0;

    bool ok() const noexcept {
      return trace.has_value();
    }
  };

  //! Lifting state shared by all targets of one tower; immutable after
  //! construction, so a Lifter can serve several threads.
  //!
  //! The fiber above sigma in SL_n(Z/p^k) is generated additively: with
  //! sigma's entries read as integers in [0, p^k), the candidates are
  //! sigma + p^k A for A in M_n({0, .., p - 1}), and those without
  //! determinant 1 mod p^(k+1) are dropped. A runs in odometer order with
  //! the (1, 1) entry least significant, which fixes the search order.
  class Lifter {
   public:
    explicit Lifter(Tower const& t) : tower_(&t) {
      for (std::size_t k = 1; k < t.levels(); ++k) {
        fibers_.push_back(build_fibers(k));
      }
    }

    Tower const& tower() const noexcept {
      return *tower_;
    }

    //! Level-(k+1) indices above element x of level k, in search order.
    std::vector<ElementIndex> const& fiber(std::size_t k, ElementIndex x) const {
      if (k < 1 || k >= tower_->levels()) {
        throw UsageError("fibers exist only below the top level");
      }
      return fibers_[k - 1].at(x);
    }

    LiftResult lift(ElementIndex delta) const {
      Tower const& t = *tower_;
      std::size_t const K = t.levels();
      if (delta >= t.top().size()) {
        throw UsageError("target index outside the top level");
      }
      Search s{t, K, {}, {}, 0, 0, K + 1};
      for (std::size_t k = 1; k <= K; ++k) {
        s.targets.push_back(t.level(k).element(t.project(K, delta, k)));
      }
      GroupTable const& G1 = t.level(1);
      bool any             = false;
      for (ElementIndex a = 0; a < G1.size() && !s.done(); ++a) {
        for (ElementIndex b = 0; b < G1.size(); ++b) {
          ++s.candidates;
          if (!is_witness(G1, a, b, s.targets[0])) {
            continue;
          }
          any = true;
          s.path.push_back({a, b});
          if (extend(s, 1)) {
            break;
          }
          s.path.pop_back();
          ++s.backtracks;
        }
      }
      LiftResult r;
      r.backtracks = s.backtracks;
      r.candidates = s.candidates;
      if (!s.done()) {
        r.failed_level = any ? s.lowest_dead_end : 1;
        return r;
      }
      LiftTrace tr;
      tr.delta        = delta;
      tr.delta_matrix = t.top().element(delta);
      tr.backtracks   = s.backtracks;
      tr.candidates   = s.candidates;
      for (std::size_t k = 1; k <= K; ++k) {
        auto [a, b] = s.path[k - 1];
        tr.levels.push_back({k, a, b, t.level(k).element(a), t.level(k).element(b)});
      }
      r.trace = std::move(tr);
      return r;
    }

   private:
    struct Search {
      Tower const&                                     t;
      std::size_t                                      K;
      std::vector<SquareMatrix>                        targets;  //!< delta mod p^k
      std::vector<std::pair<ElementIndex, ElementIndex>> path;
      std::uint64_t                                    backtracks;
      std::uint64_t                                    candidates;
      std::size_t                                      lowest_dead_end;

      bool done() const {
        return path.size() == K;
      }
    };

    static bool is_witness(GroupTable const&   G,
                           ElementIndex        a,
                           ElementIndex        b,
                           SquareMatrix const& target) {
      return G.element(a) * G.element(b) * G.element(G.inverse(a))
                 * G.element(G.inverse(b))
             == target;
    }

    //! Extends the witness at level k (last entry of the path) to the top.
    bool extend(Search& s, std::size_t k) const {
      if (k == s.K) {
        return true;
      }
      GroupTable const& hi = s.t.level(k + 1);
      auto [a, b]          = s.path.back();
      for (ElementIndex a2 : fibers_[k - 1][a]) {
        for (ElementIndex b2 : fibers_[k - 1][b]) {
          ++s.candidates;
          if (!is_witness(hi, a2, b2, s.targets[k])) {
            continue;
          }
          s.path.push_back({a2, b2});
          if (extend(s, k + 1)) {
            return true;
          }
          s.path.pop_back();
          ++s.backtracks;
        }
      }
      s.lowest_dead_end = std::min(s.lowest_dead_end, k);
      return false;
    }

    std::vector<std::vector<ElementIndex>> build_fibers(std::size_t k) const {
      Tower const&      t  = *tower_;
      GroupTable const& lo = t.level(k);
      GroupTable const& hi = t.level(k + 1);
      std::size_t const n  = t.n();
      std::uint64_t const p     = t.p();
      std::uint64_t const step  = lo.ring().modulus();  // p^k
      std::uint64_t       count = 1;
      for (std::size_t c = 0; c < n * n; ++c) {
        count *= p;
      }
      std::vector<std::vector<ElementIndex>> out(lo.size());
      for (ElementIndex x = 0; x < lo.size(); ++x) {
        SquareMatrix const& base = lo.element(x);
        SquareMatrix        M(hi.ring(), n);
        for (std::uint64_t code = 0; code < count; ++code) {
          std::uint64_t v = code;
          for (std::size_t c = 0; c < n * n; ++c) {
            M.set(c / n, c % n,
                  static_cast<residue_type>(base.get(c / n, c % n) + step * (v % p)));
            v /= p;
          }
          if (M.is_unimodular()) {
            out[x].push_back(hi.index_of(M));
          }
        }
        if (out[x].size() != t.fiber_size()) {
          throw ValidationError("additive fiber has the wrong size");
        }
      }
      return out;
    }

    Tower const*                                        tower_;
    std::vector<std::vector<std::vector<ElementIndex>>> fibers_;
  };

  inline LiftResult lift_witness(Tower const& t, ElementIndex delta) {
    return Lifter(t).lift(delta);
  }

  //! Lifts every target independently; results in target order.
  inline std::vector<LiftResult> lift_all(Tower const&                     t,
                                          std::vector<ElementIndex> const& targets,
                                          std::size_t                      workers = 1) {
    Lifter                  lifter(t);
    std::vector<LiftResult> out(targets.size());
    parallel_for(targets.size(), workers,
                 [&](std::size_t i) { out[i] = lifter.lift(targets[i]); });
    return out;
  }

  //! Re-checks a trace by direct matrix arithmetic: each level pair is a
  //! witness for delta mod p^k, and consecutive pairs are compatible under
  //! reduction.
  inline bool verify_trace(Tower const& t, LiftTrace const& tr) {
    if (tr.levels.size() != t.levels()) {
      return false;
    }
    for (std::size_t k = 1; k <= t.levels(); ++k) {
      auto const&       w = tr.levels[k - 1];
      ResidueRing const R = t.ring(k);
      if (w.level != k || !(w.sigma_matrix.ring() == R) || !(w.tau_matrix.ring() == R)
          || !w.sigma_matrix.is_unimodular() || !w.tau_matrix.is_unimodular()) {
        return false;
      }
      if (commutator(w.sigma_matrix, w.tau_matrix) != tr.delta_matrix.reduce_to(R)) {
        return false;
      }
      if (k > 1) {
        auto const& prev = tr.levels[k - 2];
        if (w.sigma_matrix.reduce_to(t.ring(k - 1)) != prev.sigma_matrix
            || w.tau_matrix.reduce_to(t.ring(k - 1)) != prev.tau_matrix) {
          return false;
        }
      }
    }
    return true;
  }

  //! Every delta with <delta> = <gamma> for some commutator gamma of G,
  //! ascending.
  inline std::vector<ElementIndex> honda_targets(GroupTable const& G,
                                                 std::size_t       workers = 1) {
    std::vector<char> hit(G.size(), 0);
    for (auto gamma : commutator_set(G, workers)) {
      for (auto delta : cyclic_generators(G, gamma)) {
        hit[delta] = 1;
      }
    }
    std::vector<ElementIndex> out;
    for (ElementIndex i = 0; i < G.size(); ++i) {
      if (hit[i]) {
        out.push_back(i);
      }
    }
    return out;
  }

  struct ClosureVariantReport {
    bool                       applicable = false;  //!< <delta> = <gamma>, gamma a commutator
    bool                       pass       = true;
    std::optional<WitnessCert> gamma_witness;
    std::optional<WitnessCert> delta_witness;
  };

  //! At a finite level the closure of <x> is <x> itself, so "equal
  //! closures" reduces to <delta> = <gamma> in SL_n(Z/p^K).
  inline ClosureVariantReport
  closure_variant_check(Tower const& t, ElementIndex gamma, ElementIndex delta) {
    GroupTable const& G = t.top();
    if (gamma >= G.size() || delta >= G.size()) {
      throw UsageError("element index outside the top level");
    }
    ClosureVariantReport r;
    auto gens = cyclic_generators(G, gamma);
    if (!std::binary_search(gens.begin(), gens.end(), delta)) {
      return r;
    }
    r.gamma_witness = find_witness(G, gamma);
    if (!r.gamma_witness) {
      return r;
    }
    r.applicable    = true;
    r.delta_witness = find_witness(G, delta);
    r.pass          = r.delta_witness && r.delta_witness->verify();
    return r;
  }

  struct ClosureVariantSweep {
    std::size_t pairs_checked = 0;  //!< qualifying (gamma, delta) pairs
    std::size_t deltas        = 0;  //!< distinct deltas among them
    std::vector<std::pair<ElementIndex, ElementIndex>> failures;
  };

  //! closure_variant_check over every qualifying pair of the top level.
  inline ClosureVariantSweep closure_variant_sweep(Tower const& t, std::size_t workers = 1) {
    GroupTable const& G    = t.top();
    auto const        comm = commutator_set(G, workers);
    std::vector<ElementIndex> deltas;
    std::vector<std::pair<ElementIndex, ElementIndex>> pairs;
    for (auto gamma : comm) {
      for (auto delta : cyclic_generators(G, gamma)) {
        pairs.emplace_back(gamma, delta);
        deltas.push_back(delta);
      }
    }
    std::sort(deltas.begin(), deltas.end());
    deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
    std::vector<char> ok(G.size(), 0);
    parallel_for(deltas.size(), workers, [&](std::size_t i) {
      auto w       = find_witness(G, deltas[i]);
      ok[deltas[i]] = w && w->verify();
    });
    ClosureVariantSweep out;
    out.pairs_checked = pairs.size();
    out.deltas        = deltas.size();
    for (auto const& pr : pairs) {
      if (!ok[pr.second]) {
        out.failures.push_back(pr);
      }
    }
    return out;
  }

}  // namespace honda::profinite
