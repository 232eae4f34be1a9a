#pragma once

// Commutator analysis on GroupTables and the Honda / strong-Honda verifiers.
//
// Convention throughout: [a, b] = a b a^-1 b^-1.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "honda/group.hpp"
#include "honda/parallel.hpp"
#include "honda/ring.hpp"

namespace honda {

  //! A commutator certificate: [sigma, tau] == target.
  struct WitnessCert {
    SquareMatrix sigma;
    SquareMatrix tau;
    SquareMatrix target;

    bool verify() const {
      return commutator(sigma, tau) == target;
    }
  };

  //! Indices of all commutators of G, ascending.
  //!
  //! Only class representatives are used as first argument. Since
  //! g [a, b'] g^-1 = [g a g^-1, g b' g^-1], every commutator is conjugate to
  //! one with a representative first argument, and the commutator set is a
  //! union of conjugacy classes; so the classes hit by the representative
  //! scan are exactly the classes of commutators.
  inline std::vector<ElementIndex> commutator_set(GroupTable const& G,
                                                  std::size_t workers = 1) {
    std::size_t const                N    = G.size();
    std::size_t const                reps = G.num_classes();
    std::vector<std::vector<char>>   hit(reps, std::vector<char>(reps, 0));
    parallel_for(reps, workers, [&](std::size_t r) {
      ElementIndex a = G.class_reps()[r];
      for (ElementIndex b = 0; b < N; ++b) {
        hit[r][G.class_of(G.commutator(a, b))] = 1;
      }
    });
    std::vector<char> class_hit(reps, 0);
    for (auto const& row : hit) {
      for (std::size_t c = 0; c < reps; ++c) {
        class_hit[c] |= row[c];
      }
    }
    std::vector<ElementIndex> out;
    for (ElementIndex x = 0; x < N; ++x) {
      if (class_hit[G.class_of(x)]) {
        out.push_back(x);
      }
    }
    return out;
  }

  //! Indices of the generators of <g_i>, i.e. g_i^u for u a unit modulo the
  //! order of g_i; ascending.
  inline std::vector<ElementIndex> cyclic_generators(GroupTable const& G,
                                                     ElementIndex      i) {
    std::vector<ElementIndex> out;
    for (auto u : units_mod(G.order(i))) {
      out.push_back(G.power(i, static_cast<std::int64_t>(u)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  //! First (sigma, tau) in scan order with [sigma, tau] = delta.
  //!
  //! The scan runs over (class representative a, element b). The first pair
  //! whose commutator c is conjugate to delta is conjugated into place by the
  //! least-index g with g c g^-1 = delta.
  inline std::optional<WitnessCert> find_witness(GroupTable const& G,
                                                 ElementIndex      delta,
                                                 std::size_t       workers = 1) {
    std::size_t const N      = G.size();
    std::size_t const reps   = G.num_classes();
    std::size_t const target = G.class_of(delta);

    std::atomic<std::size_t>                                  best{reps};
    std::vector<std::optional<std::pair<ElementIndex, ElementIndex>>> found(reps);
    parallel_for(reps, workers, [&](std::size_t r) {
      if (r > best.load()) {
        return;
      }
      ElementIndex a = G.class_reps()[r];
      for (ElementIndex b = 0; b < N; ++b) {
        if (G.class_of(G.commutator(a, b)) == target) {
          found[r] = {a, b};
          std::size_t cur = best.load();
          while (r < cur && !best.compare_exchange_weak(cur, r)) {
          }
          return;
        }
      }
    });
    if (best.load() == reps) {
      return std::nullopt;
    }
    auto [a, b]    = *found[best.load()];
    ElementIndex c = G.commutator(a, b);
    for (ElementIndex g = 0; g < N; ++g) {
      if (G.conjugate(g, c) == delta) {
        return WitnessCert{G.element(G.conjugate(g, a)),
                           G.element(G.conjugate(g, b)),
                           G.element(delta)};
      }
    }
    return std::nullopt;  // unreachable: c and delta share a class
  }

  struct HondaReport {
    bool pass = true;
    //! (gamma, delta): gamma a commutator, <delta> = <gamma>, delta not a
    //! commutator. Set only when pass is false.
    std::optional<std::pair<ElementIndex, ElementIndex>> counterexample;
    std::size_t group_order      = 0;
    std::size_t commutator_count = 0;
    std::size_t deltas_checked   = 0;
  };

  inline HondaReport check_honda(GroupTable const& G, std::size_t workers = 1) {
    HondaReport report;
    report.group_order = G.size();
    auto comm          = commutator_set(G, workers);
    report.commutator_count = comm.size();
    std::vector<char> is_comm(G.size(), 0);
    for (auto x : comm) {
      is_comm[x] = 1;
    }
    for (auto gamma : comm) {
      for (auto delta : cyclic_generators(G, gamma)) {
        ++report.deltas_checked;
        if (!is_comm[delta]) {
          report.pass           = false;
          report.counterexample = {gamma, delta};
          return report;
        }
      }
    }
    return report;
  }

  struct StrongHondaReport {
    bool         pass = true;
    std::size_t  subgroup_order = 0;
    SquareMatrix gamma;
    //! One certificate per generator of <gamma>, witnesses inside <a, b>.
    std::vector<WitnessCert>    witnesses;
    std::optional<SquareMatrix> failing_delta;
  };

  //! Every generator delta of <[a, b]> is a commutator of two elements of
  //! the subgroup <a, b>.
  inline StrongHondaReport
  check_strong_honda(GroupTable const& G, ElementIndex a, ElementIndex b) {
    StrongHondaReport report;
    GroupTable        H = close_generators(G.ring(), G.dim(),
                                           {G.element(a), G.element(b)}, G.size());
    report.subgroup_order = H.size();
    report.gamma          = G.element(G.commutator(a, b));
    ElementIndex gamma_h  = H.index_of(report.gamma);
    for (auto delta : cyclic_generators(H, gamma_h)) {
      auto cert = find_witness(H, delta);
      if (!cert) {
        report.pass          = false;
        report.failing_delta = H.element(delta);
        return report;
      }
      report.witnesses.push_back(*cert);
    }
    return report;
  }

  struct StrongHondaSweep {
    std::size_t pairs_checked   = 0;
    std::size_t witnesses_found = 0;
    //! Failing (a, b) pairs in ascending order.
    std::vector<std::pair<ElementIndex, ElementIndex>> failures;
  };

  //! check_strong_honda over every ordered pair, or over the given pairs.
  inline StrongHondaSweep strong_honda_sweep(
      GroupTable const&                                         G,
      std::vector<std::pair<ElementIndex, ElementIndex>> const& pairs,
      std::size_t                                               workers = 1) {
    std::vector<char>        ok(pairs.size(), 1);
    std::vector<std::size_t> nwit(pairs.size(), 0);
    parallel_for(pairs.size(), workers, [&](std::size_t k) {
      auto rep = check_strong_honda(G, pairs[k].first, pairs[k].second);
      ok[k]    = rep.pass;
      for (auto const& w : rep.witnesses) {
        ok[k] = ok[k] && w.verify();
      }
      nwit[k] = rep.witnesses.size();
    });
    StrongHondaSweep out;
    out.pairs_checked = pairs.size();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      out.witnesses_found += nwit[k];
      if (!ok[k]) {
        out.failures.push_back(pairs[k]);
      }
    }
    return out;
  }

  inline std::vector<std::pair<ElementIndex, ElementIndex>>
  all_pairs(GroupTable const& G) {
    std::vector<std::pair<ElementIndex, ElementIndex>> out;
    out.reserve(G.size() * G.size());
    for (ElementIndex a = 0; a < G.size(); ++a) {
      for (ElementIndex b = 0; b < G.size(); ++b) {
        out.emplace_back(a, b);
      }
    }
    return out;
  }

}  // namespace honda
