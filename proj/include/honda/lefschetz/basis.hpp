#pragma once

// Monomial bases in the n^2 matrix-entry variables X_ij and the parameter
// tuples alpha that select the polynomials
//
//   g_d(X, alpha) = sum_e alpha_{e d} m_e(X),   1 <= d <= c.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "honda/errors.hpp"
#include "honda/matrix.hpp"
#include "honda/ring.hpp"

namespace honda::lefschetz {

  //! Whether a degree bound below the matrix dimension is accepted. With
  //! r < n the polynomial det(X) - 1 is not itself of complexity <= r, so
  //! the default is to reject such bounds.
  enum class DegreeBound { strict, relaxed };

  inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
      return 0;
    }
    k              = std::min(k, n - k);
    std::uint64_t b = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
      b = b * (n - k + i) / i;
    }
    return b;
  }

  //! All monomials of total degree <= r in X_11, X_12, ..., X_nn.
  //!
  //! Order: by degree, then lexicographically by exponent vector with the
  //! larger exponent of X_11 first (then X_12, ...). Index 0 is the
  //! constant monomial 1, and the basis for r is a prefix of the basis for
  //! r + 1.
  class MonomialBasis {
   public:
    using Exponents = std::vector<std::uint8_t>;

    MonomialBasis(std::size_t n, std::size_t r, DegreeBound bound = DegreeBound::strict)
        : n_(n), r_(r) {
      if (n < 1 || n > SquareMatrix::max_dim) {
        throw ValidationError("matrix dimension must be between 1 and "
                              + std::to_string(SquareMatrix::max_dim));
      }
      if (r > 64) {
        throw ValidationError("degree bound must be at most 64");
      }
      if (r < n && bound == DegreeBound::strict) {
        throw ValidationError(
            "degree bound r = " + std::to_string(r) + " is below n = "
            + std::to_string(n) + "; r >= n is required so that det(X) - 1 "
            "has degree at most r");
      }
      Exponents cur(n * n, 0);
      for (std::size_t deg = 0; deg <= r; ++deg) {
        fill(cur, 0, deg);
      }
    }

    std::size_t n() const noexcept {
      return n_;
    }
    std::size_t r() const noexcept {
      return r_;
    }
    //! Number of monomials, binomial(n^2 + r, n^2).
    std::size_t c() const noexcept {
      return exps_.size();
    }
    std::size_t variables() const noexcept {
      return n_ * n_;
    }
    //! Exponent vector of monomial e (0-based), indexed by i * n + j.
    Exponents const& exponent(std::size_t e) const {
      return exps_.at(e);
    }
    std::vector<Exponents> const& exponents() const noexcept {
      return exps_;
    }
    std::size_t degree(std::size_t e) const {
      std::size_t d = 0;
      for (auto k : exps_.at(e)) {
        d += k;
      }
      return d;
    }

    //! m_e(point) for every e, in basis order.
    std::vector<residue_type> monomials(SquareMatrix const& point) const {
      check_point(point);
      ResidueRing const         ring = point.ring();
      std::vector<residue_type> out(c());
      for (std::size_t e = 0; e < c(); ++e) {
        residue_type v = 1 % ring.modulus();
        for (std::size_t k = 0; k < variables(); ++k) {
          for (std::uint8_t p = 0; p < exps_[e][k]; ++p) {
            v = ring.mul(v, point.get(k / n_, k % n_));
          }
        }
        out[e] = v;
      }
      return out;
    }

    void check_point(SquareMatrix const& point) const {
      if (point.dim() != n_) {
        throw UsageError("point has dimension " + std::to_string(point.dim())
                         + ", basis expects " + std::to_string(n_));
      }
    }

    friend bool operator==(MonomialBasis const& a, MonomialBasis const& b) {
      return a.n_ == b.n_ && a.r_ == b.r_;
    }

   private:
    void fill(Exponents& cur, std::size_t k, std::size_t left) {
      if (k + 1 == cur.size()) {
        cur[k] = static_cast<std::uint8_t>(left);
        exps_.push_back(cur);
        cur[k] = 0;
        return;
      }
      for (std::size_t p = left + 1; p-- > 0;) {
        cur[k] = static_cast<std::uint8_t>(p);
        fill(cur, k + 1, left - p);
      }
      cur[k] = 0;
    }

    std::size_t            n_;
    std::size_t            r_;
    std::vector<Exponents> exps_;
  };

  inline MonomialBasis build_basis(std::size_t n,
                                   std::size_t r,
                                   DegreeBound bound = DegreeBound::strict) {
    return MonomialBasis(n, r, bound);
  }

  //! The c x c values alpha_{ab} of the parameter variables Z_ab.
  //!
  //! Indices in the public interface are 1-based, matching g_d. Column d
  //! holds the coefficients of g_d. The canonical integer encoding treats
  //! the entries as base-m digits, column by column, with alpha_{11} the
  //! least significant digit, then alpha_{21}, ..., alpha_{c1}, alpha_{12},
  //! and so on.
  class ParameterTuple {
   public:
    ParameterTuple(ResidueRing ring, MonomialBasis basis)
        : ring_(ring),
          basis_(std::move(basis)),
          entries_(basis_.c() * basis_.c(), 0) {}

    static ParameterTuple
    from_index(ResidueRing ring, MonomialBasis basis, std::uint64_t index) {
      ParameterTuple a(ring, std::move(basis));
      for (std::size_t k = 0; k < a.entries_.size() && index != 0; ++k) {
        a.entries_[k] = static_cast<residue_type>(index % ring.modulus());
        index /= ring.modulus();
      }
      if (index != 0) {
        throw UsageError("parameter index out of range");
      }
      return a;
    }

    //! From c^2 canonical (column-major) digits.
    static ParameterTuple from_digits(ResidueRing                   ring,
                                      MonomialBasis                 basis,
                                      std::span<residue_type const> digits) {
      ParameterTuple a(ring, std::move(basis));
      if (digits.size() != a.entries_.size()) {
        throw UsageError("expected " + std::to_string(a.entries_.size())
                         + " parameter digits");
      }
      for (std::size_t k = 0; k < digits.size(); ++k) {
        a.entries_[k] = digits[k] % ring.modulus();
      }
      return a;
    }

    ResidueRing const& ring() const noexcept {
      return ring_;
    }
    MonomialBasis const& basis() const noexcept {
      return basis_;
    }
    std::size_t c() const noexcept {
      return basis_.c();
    }

    residue_type get(std::size_t a, std::size_t b) const {
      return entries_[slot(a, b)];
    }
    ParameterTuple& set(std::size_t a, std::size_t b, std::int64_t v) {
      entries_[slot(a, b)] = ring_.reduce(v);
      return *this;
    }

    //! The c entries of column d, i.e. the coefficients of g_d.
    std::vector<residue_type> column(std::size_t d) const {
      std::size_t const base = slot(1, d);
      return {entries_.begin() + base, entries_.begin() + base + c()};
    }

    //! Entries in canonical digit order (column-major).
    std::vector<residue_type> const& digits() const noexcept {
      return entries_;
    }

    //! Canonical index; only defined when m^(c^2) fits in 64 bits.
    std::uint64_t index() const {
      std::uint64_t idx = 0;
      for (std::size_t k = entries_.size(); k-- > 0;) {
        if (idx > (UINT64_MAX - entries_[k]) / ring_.modulus()) {
          throw UsageError("parameter index does not fit in 64 bits");
        }
        idx = idx * ring_.modulus() + entries_[k];
      }
      return idx;
    }

    //! The same polynomials over a larger basis: old entries in the top
    //! left block and zeros elsewhere. Every added g_d is the zero
    //! polynomial, so the vanishing set is unchanged.
    ParameterTuple padded(MonomialBasis const& larger) const {
      if (larger.n() != basis_.n() || larger.c() < c()) {
        throw UsageError("padding requires a basis of the same dimension "
                         "and no smaller degree");
      }
      ParameterTuple out(ring_, larger);
      for (std::size_t b = 1; b <= c(); ++b) {
        for (std::size_t a = 1; a <= c(); ++a) {
          out.set(a, b, get(a, b));
        }
      }
      return out;
    }

    friend bool operator==(ParameterTuple const& x, ParameterTuple const& y) {
      return x.ring_ == y.ring_ && x.basis_ == y.basis_
             && x.entries_ == y.entries_;
    }

   private:
    std::size_t slot(std::size_t a, std::size_t b) const {
      if (a < 1 || a > c() || b < 1 || b > c()) {
        throw UsageError("parameter index (" + std::to_string(a) + ", "
                         + std::to_string(b) + ") outside 1.."
                         + std::to_string(c()));
      }
      return (b - 1) * c() + (a - 1);
    }

    ResidueRing               ring_;
    MonomialBasis             basis_;
    std::vector<residue_type> entries_;
  };

  //! g_d(point, alpha) = sum_e alpha_{e d} m_e(point), with d 1-based.
  inline RingElement eval_g(MonomialBasis const&  basis,
                            std::size_t           d,
                            SquareMatrix const&   point,
                            ParameterTuple const& alpha) {
    if (!(alpha.basis() == basis)) {
      throw UsageError("parameter tuple was built for a different basis");
    }
    if (d < 1 || d > basis.c()) {
      throw UsageError("polynomial index " + std::to_string(d)
                       + " outside 1.." + std::to_string(basis.c()));
    }
    if (!(point.ring() == alpha.ring())) {
      throw UsageError("point and parameters lie in different rings");
    }
    auto const   m    = basis.monomials(point);
    auto const&  ring = alpha.ring();
    residue_type sum  = 0;
    for (std::size_t e = 1; e <= basis.c(); ++e) {
      sum = ring.add(sum, ring.mul(alpha.get(e, d), m[e - 1]));
    }
    return RingElement(ring, sum);
  }

}  // namespace honda::lefschetz
