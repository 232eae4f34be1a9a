#pragma once

// Square matrices over Z/m with small dimension, stored inline.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "honda/errors.hpp"
#include "honda/ring.hpp"

namespace honda {

  //! An n x n matrix over Z/m, n <= max_dim. Entries are canonical residues
  //! and unused storage is kept zero, so equality and hashing are bit-exact.
  class SquareMatrix {
   public:
    static constexpr std::size_t max_dim = 4;

    SquareMatrix() = default;

    SquareMatrix(ResidueRing const& ring, std::size_t n)
        : modulus_(ring.modulus()), n_(static_cast<std::uint8_t>(n)) {
      if (n == 0 || n > max_dim) {
        throw UsageError("matrix dimension must lie in [1, "
                         + std::to_string(max_dim) + "], got "
                         + std::to_string(n));
      }
    }

    //! Row-major integer entries, reduced into the ring.
    static SquareMatrix from_rows(ResidueRing const&        ring,
                                  std::size_t               n,
                                  std::span<std::int64_t const> values) {
      SquareMatrix M(ring, n);
      if (values.size() != n * n) {
        throw UsageError("expected " + std::to_string(n * n)
                         + " entries, got " + std::to_string(values.size()));
      }
      for (std::size_t k = 0; k < n * n; ++k) {
        M.set(k / n, k % n, ring.reduce(values[k]));
      }
      return M;
    }

    static SquareMatrix from_rows(ResidueRing const&                  ring,
                                  std::size_t                         n,
                                  std::initializer_list<std::int64_t> values) {
      return from_rows(
          ring, n, std::span<std::int64_t const>(values.begin(), values.size()));
    }

    static SquareMatrix identity(ResidueRing const& ring, std::size_t n) {
      SquareMatrix M(ring, n);
      for (std::size_t i = 0; i < n; ++i) {
        M.set(i, i, 1);
      }
      return M;
    }

    std::size_t dim() const noexcept {
      return n_;
    }
    ResidueRing ring() const {
      return ResidueRing(modulus_);
    }
    residue_type modulus() const noexcept {
      return modulus_;
    }

    residue_type get(std::size_t i, std::size_t j) const noexcept {
      return e_[i * max_dim + j];
    }
    void set(std::size_t i, std::size_t j, residue_type v) noexcept {
      e_[i * max_dim + j] = v;
    }
    RingElement at(std::size_t i, std::size_t j) const {
      if (i >= n_ || j >= n_) {
        throw UsageError("matrix index out of range");
      }
      return RingElement(ring(), get(i, j));
    }

    //! Row-major entries as plain integers.
    std::vector<std::int64_t> to_rows() const {
      std::vector<std::int64_t> out;
      out.reserve(n_ * n_);
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
          out.push_back(get(i, j));
        }
      }
      return out;
    }

    bool is_identity() const noexcept {
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
          if (get(i, j) != (i == j ? 1u : 0u)) {
            return false;
          }
        }
      }
      return true;
    }

    residue_type det() const {
      return det_rec(*this, n_);
    }

    bool is_unimodular() const {
      return det() == 1 % modulus_;
    }

    //! Classical adjugate; adj(M) * M = det(M) * I over any commutative ring.
    SquareMatrix adjugate() const {
      SquareMatrix A = *this;
      if (n_ == 1) {
        A.set(0, 0, 1);
        return A;
      }
      ResidueRing R = ring();
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
          residue_type m = minor(j, i).det();
          A.set(i, j, (i + j) % 2 == 0 ? m : R.neg(m));
        }
      }
      return A;
    }

    //! Inverse of a determinant-one matrix, computed as the adjugate.
    SquareMatrix inverse() const {
      if (!is_unimodular()) {
        throw UsageError("inverse() requires determinant 1");
      }
      return adjugate();
    }

    //! The image under entrywise reduction Z/m -> Z/m', m' | m.
    SquareMatrix reduce_to(ResidueRing const& target) const {
      if (modulus_ % target.modulus() != 0) {
        throw UsageError("Z/" + std::to_string(target.modulus())
                         + " is not a quotient of Z/" + std::to_string(modulus_));
      }
      SquareMatrix M(target, n_);
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
          M.set(i, j, get(i, j) % target.modulus());
        }
      }
      return M;
    }

    friend SquareMatrix operator*(SquareMatrix const& a, SquareMatrix const& b) {
      check_compatible(a, b);
      SquareMatrix C;
      C.modulus_ = a.modulus_;
      C.n_       = a.n_;
      std::size_t const n = a.n_;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          std::uint64_t s = 0;
          for (std::size_t l = 0; l < n; ++l) {
            s += static_cast<std::uint64_t>(a.get(i, l)) * b.get(l, j);
          }
          C.set(i, j, static_cast<residue_type>(s % a.modulus_));
        }
      }
      return C;
    }

    friend bool operator==(SquareMatrix const&, SquareMatrix const&) = default;
    friend auto operator<=>(SquareMatrix const&, SquareMatrix const&) = default;

    std::size_t hash() const noexcept {
      std::uint64_t h = 0xcbf29ce484222325ull ^ (modulus_ * 31u + n_);
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
          h ^= get(i, j);
          h *= 0x100000001b3ull;
        }
      }
      return static_cast<std::size_t>(h ^ (h >> 29));
    }

    static void check_compatible(SquareMatrix const& a, SquareMatrix const& b) {
      if (a.modulus_ != b.modulus_ || a.n_ != b.n_) {
        throw UsageError("matrices over different rings or of different "
                         "dimensions");
      }
    }

   private:
    SquareMatrix minor(std::size_t row, std::size_t col) const {
      SquareMatrix M;
      M.modulus_ = modulus_;
      M.n_       = static_cast<std::uint8_t>(n_ - 1);
      for (std::size_t i = 0, ii = 0; i < n_; ++i) {
        if (i == row) {
          continue;
        }
        for (std::size_t j = 0, jj = 0; j < n_; ++j) {
          if (j == col) {
            continue;
          }
          M.set(ii, jj++, get(i, j));
        }
        ++ii;
      }
      return M;
    }

    static residue_type det_rec(SquareMatrix const& M, std::size_t n) {
      std::uint64_t const m = M.modulus_;
      if (n == 1) {
        return M.get(0, 0);
      }
      if (n == 2) {
        std::uint64_t p = static_cast<std::uint64_t>(M.get(0, 0)) * M.get(1, 1);
        std::uint64_t q = static_cast<std::uint64_t>(M.get(0, 1)) * M.get(1, 0);
        return static_cast<residue_type>((p % m + m - q % m) % m);
      }
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t term
            = static_cast<std::uint64_t>(M.get(0, j)) * M.minor(0, j).det() % m;
        s = j % 2 == 0 ? (s + term) % m : (s + m - term) % m;
      }
      return static_cast<residue_type>(s);
    }

    std::array<residue_type, max_dim * max_dim> e_{};
    residue_type                                modulus_ = 2;
    std::uint8_t                                n_       = 0;
  };

  struct SquareMatrixHash {
    std::size_t operator()(SquareMatrix const& M) const noexcept {
      return M.hash();
    }
  };

  //! [a, b] = a b a^-1 b^-1.
  inline SquareMatrix commutator(SquareMatrix const& a, SquareMatrix const& b) {
    SquareMatrix::check_compatible(a, b);
    return a * b * a.inverse() * b.inverse();
  }

  //! a^e for any integer e; negative exponents need det(a) = 1.
  inline SquareMatrix power(SquareMatrix const& a, std::int64_t e) {
    SquareMatrix base = e < 0 ? a.inverse() : a;
    std::uint64_t k   = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1
                              : static_cast<std::uint64_t>(e);
    SquareMatrix result = SquareMatrix::identity(a.ring(), a.dim());
    while (k != 0) {
      if (k & 1) {
        result = result * base;
      }
      base = base * base;
      k >>= 1;
    }
    return result;
  }

  inline std::ostream& operator<<(std::ostream& os, SquareMatrix const& M) {
    os << '[';
    for (std::size_t i = 0; i < M.dim(); ++i) {
      os << (i == 0 ? "[" : ", [");
      for (std::size_t j = 0; j < M.dim(); ++j) {
        os << (j == 0 ? "" : ",") << M.get(i, j);
      }
      os << ']';
    }
    return os << ']';
  }

  //! Every determinant-one matrix in M_n(Z/m), in row-major odometer order.
  inline std::vector<SquareMatrix> enumerate_sl(ResidueRing const& ring,
                                                std::size_t        n,
                                                std::uint64_t      scan_cap) {
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < n * n; ++k) {
      total *= ring.modulus();
      if (total > scan_cap) {
        throw CapExceeded("matrix scan", scan_cap);
      }
    }
    std::vector<SquareMatrix> out;
    SquareMatrix              M(ring, n);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t x = idx;
      for (std::size_t k = n * n; k-- > 0;) {
        M.set(k / n, k % n, static_cast<residue_type>(x % ring.modulus()));
        x /= ring.modulus();
      }
      if (M.is_unimodular()) {
        out.push_back(M);
      }
    }
    return out;
  }

}  // namespace honda

template <>
struct std::hash<honda::SquareMatrix> {
  std::size_t operator()(honda::SquareMatrix const& M) const noexcept {
    return M.hash();
  }
};
