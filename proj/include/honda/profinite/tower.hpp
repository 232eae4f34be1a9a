#pragma once

// Congruence towers SL_n(Z/p) <- SL_n(Z/p^2) <- ... <- SL_n(Z/p^K), with
// the reduction maps between consecutive levels.

#include <cstdint>
#include <string>
#include <vector>

#include "honda/errors.hpp"
#include "honda/group.hpp"
#include "honda/honda.hpp"
#include "honda/matrix.hpp"
#include "honda/ring.hpp"

namespace honda::profinite {

  //! Default cap on |SL_n(Z/p^K)|.
  inline constexpr std::uint64_t default_tower_cap = 200'000;

  namespace detail {
    inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
      if (b != 0 && a > UINT64_MAX / b) {
        return UINT64_MAX;
      }
      return a * b;
    }

    inline std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
      std::uint64_t r = 1;
      while (e-- > 0) {
        r = checked_mul(r, b);
      }
      return r;
    }
  }  // namespace detail

  //! |SL_n(Z/p^k)| = p^((n^2 - 1)(k - 1)) |SL_n(F_p)|, saturating at
  //! UINT64_MAX.
  inline std::uint64_t sl_order(std::uint64_t p, std::size_t n, std::size_t k) {
    // |SL_n(F_p)| = p^(n(n-1)/2) prod_{i=2..n} (p^i - 1)
    std::uint64_t o = detail::ipow(p, n * (n - 1) / 2);
    for (std::size_t i = 2; i <= n; ++i) {
      o = detail::checked_mul(o, detail::ipow(p, i) - 1);
    }
    return detail::checked_mul(o, detail::ipow(p, (n * n - 1) * (k - 1)));
  }

  //! The elementary matrices I + E_ij (i != j). They generate SL_n(Z/m)
  //! for every m, since Z/m is semilocal.
  inline std::vector<SquareMatrix> elementary_generators(ResidueRing const& ring,
                                                         std::size_t        n) {
    std::vector<SquareMatrix> gens;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) {
          auto E = SquareMatrix::identity(ring, n);
          E.set(i, j, 1 % ring.modulus());
          gens.push_back(E);
        }
      }
    }
    return gens;
  }

  //! Fully enumerated levels SL_n(Z/p^k), k = 1..K, and the reductions
  //! level k+1 -> level k.
  //!
  //! Construction verifies that every reduction is a surjective
  //! homomorphism: pi(x g) = pi(x) pi(g) for every element x and every
  //! generator g (which gives multiplicativity on all products, as every
  //! element is a word in the generators), and every fiber has exactly
  //! p^(n^2 - 1) elements.
  class Tower {
   public:
    Tower(std::uint64_t p, std::size_t n, std::size_t K,
          std::uint64_t cap = default_tower_cap)
        : p_(p), n_(n) {
      if (!is_prime(p)) {
        throw UsageError("tower requires a prime, got " + std::to_string(p));
      }
      if (n < 1 || n > SquareMatrix::max_dim) {
        throw UsageError("matrix dimension must be between 1 and "
                         + std::to_string(SquareMatrix::max_dim));
      }
      if (K < 1) {
        throw UsageError("tower needs at least one level");
      }
      std::uint64_t const need = sl_order(p, n, K);
      if (need > cap || detail::ipow(p, K) > UINT32_MAX) {
        throw CapExceeded("tower element", cap, need);
      }
      std::uint64_t modulus = 1;
      for (std::size_t k = 1; k <= K; ++k) {
        modulus *= p;
        ResidueRing ring(static_cast<residue_type>(modulus));
        levels_.push_back(close_generators(ring, n, elementary_generators(ring, n),
                                           static_cast<std::size_t>(cap)));
        if (levels_.back().size() != sl_order(p, n, k)) {
          throw ValidationError("level " + std::to_string(k) + " has "
                                + std::to_string(levels_.back().size())
                                + " elements, expected "
                                + std::to_string(sl_order(p, n, k)));
        }
        if (k > 1) {
          build_reduction(k - 1);
        }
      }
    }

    std::uint64_t p() const noexcept {
      return p_;
    }
    std::size_t n() const noexcept {
      return n_;
    }
    //! Number of levels K.
    std::size_t levels() const noexcept {
      return levels_.size();
    }
    //! SL_n(Z/p^k), 1 <= k <= K.
    GroupTable const& level(std::size_t k) const {
      check_level(k);
      return levels_[k - 1];
    }
    GroupTable const& top() const noexcept {
      return levels_.back();
    }
    ResidueRing ring(std::size_t k) const {
      return level(k).ring();
    }
    //! p^(n^2 - 1), the size of every reduction fiber.
    std::uint64_t fiber_size() const noexcept {
      return detail::ipow(p_, n_ * n_ - 1);
    }

    //! The reduction of element x of level k + 1 to level k.
    ElementIndex reduce(std::size_t k, ElementIndex x) const {
      check_level(k);
      if (k == levels()) {
        throw UsageError("no level above the top level");
      }
      return reductions_[k - 1].at(x);
    }
    //! Reduction table level k + 1 -> level k.
    std::vector<ElementIndex> const& reduction(std::size_t k) const {
      check_level(k);
      if (k == levels()) {
        throw UsageError("no level above the top level");
      }
      return reductions_[k - 1];
    }
    //! The image at level k of element x of level j >= k.
    ElementIndex project(std::size_t j, ElementIndex x, std::size_t k) const {
      check_level(j);
      check_level(k);
      if (k > j) {
        throw UsageError("cannot project to a higher level");
      }
      for (std::size_t l = j; l > k; --l) {
        x = reductions_[l - 2][x];
      }
      return x;
    }

   private:
    void check_level(std::size_t k) const {
      if (k < 1 || k > levels_.size()) {
        throw UsageError("level " + std::to_string(k) + " outside 1.."
                         + std::to_string(levels_.size()));
      }
    }

    void build_reduction(std::size_t k) {
      GroupTable const& lo = levels_[k - 1];
      GroupTable const& hi = levels_[k];
      std::vector<ElementIndex> red(hi.size());
      for (ElementIndex x = 0; x < hi.size(); ++x) {
        red[x] = lo.index_of(hi.element(x).reduce_to(lo.ring()));
      }
      std::vector<std::uint64_t> fiber(lo.size(), 0);
      for (auto y : red) {
        ++fiber[y];
      }
      for (ElementIndex y = 0; y < lo.size(); ++y) {
        if (fiber[y] != fiber_size()) {
          throw ValidationError("reduction fiber over element "
                                + std::to_string(y) + " of level "
                                + std::to_string(k) + " has "
                                + std::to_string(fiber[y]) + " elements");
        }
      }
      for (ElementIndex g : hi.generators()) {
        for (ElementIndex x = 0; x < hi.size(); ++x) {
          if (red[hi.multiply(x, g)] != lo.multiply(red[x], red[g])) {
            throw ValidationError("reduction to level " + std::to_string(k)
                                  + " is not multiplicative");
          }
        }
      }
      reductions_.push_back(std::move(red));
    }

    std::uint64_t                          p_;
    std::size_t                            n_;
    std::vector<GroupTable>                levels_;
    std::vector<std::vector<ElementIndex>> reductions_;
  };

  inline Tower build_tower(std::uint64_t p, std::size_t n, std::size_t K,
                           std::uint64_t cap = default_tower_cap) {
    return Tower(p, n, K, cap);
  }

  //! check_honda on SL_n(Z/p^k).
  inline HondaReport level_honda(Tower const& t, std::size_t k, std::size_t workers = 1) {
    return check_honda(t.level(k), workers);
  }

}  // namespace honda::profinite
