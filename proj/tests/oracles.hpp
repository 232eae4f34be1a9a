#pragma once

// Brute-force reference computations used only by tests. Nothing here calls
// into the accelerated code paths it is compared against.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "honda/group.hpp"
#include "honda/matrix.hpp"

namespace honda::oracle {

  using IntMatrix = std::vector<std::vector<std::int64_t>>;

  inline std::int64_t mod(std::int64_t x, std::int64_t m) {
    return ((x % m) + m) % m;
  }

  // Leibniz determinant over the integers, reduced at the end.
  inline std::int64_t leibniz_det(IntMatrix const& A, std::int64_t m) {
    std::size_t const        n = A.size();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) {
      perm[i] = i;
    }
    std::int64_t total = 0;
    do {
      int inversions = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          inversions += perm[i] > perm[j];
        }
      }
      std::int64_t prod = 1;
      for (std::size_t i = 0; i < n; ++i) {
        prod = mod(prod * A[i][perm[i]], m);
      }
      total += inversions % 2 == 0 ? prod : -prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return mod(total, m);
  }

  //! |SL_n(Z/m)| by scanning all m^(n^2) integer matrices.
  inline std::size_t sl_order_by_scan(std::int64_t m, std::size_t n) {
    std::size_t const cells = n * n;
    std::uint64_t     total = 1;
    for (std::size_t k = 0; k < cells; ++k) {
      total *= static_cast<std::uint64_t>(m);
    }
    std::size_t count = 0;
    IntMatrix   A(n, std::vector<std::int64_t>(n));
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t x = idx;
      for (std::size_t k = 0; k < cells; ++k) {
        A[k / n][k % n] = static_cast<std::int64_t>(x % m);
        x /= m;
      }
      count += leibniz_det(A, m) == 1;
    }
    return count;
  }

  //! Every [a, b] over all |G|^2 ordered pairs, as a set of indices.
  inline std::set<ElementIndex> commutators_by_pair_scan(GroupTable const& G) {
    std::set<ElementIndex> out;
    for (ElementIndex a = 0; a < G.size(); ++a) {
      for (ElementIndex b = 0; b < G.size(); ++b) {
        out.insert(G.commutator(a, b));
      }
    }
    return out;
  }

  //! Same, with the other convention a^-1 b^-1 a b.
  inline std::set<ElementIndex>
  commutators_by_pair_scan_alt(GroupTable const& G) {
    std::set<ElementIndex> out;
    for (ElementIndex a = 0; a < G.size(); ++a) {
      for (ElementIndex b = 0; b < G.size(); ++b) {
        out.insert(G.index_of(G.element(G.inverse(a)) * G.element(G.inverse(b))
                              * G.element(a) * G.element(b)));
      }
    }
    return out;
  }

  //! All exponent vectors of length v with entry sum <= r.
  inline std::vector<std::vector<unsigned>> exponent_vectors(std::size_t v,
                                                             unsigned    r) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned>              e(v, 0);
    while (true) {
      unsigned s = 0;
      for (auto x : e) {
        s += x;
      }
      if (s <= r) {
        out.push_back(e);
      }
      std::size_t k = 0;
      while (k < v && e[k] == r) {
        e[k] = 0;
        ++k;
      }
      if (k == v) {
        break;
      }
      ++e[k];
    }
    return out;
  }

  inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
      r = r * (n - k + i) / i;
    }
    return r;
  }

}  // namespace honda::oracle
