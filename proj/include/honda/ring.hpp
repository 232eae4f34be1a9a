#pragma once

// Residue rings Z/m and their elements.

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "honda/errors.hpp"

namespace honda {

  using residue_type = std::uint32_t;
  __extension__ using uint128 = unsigned __int128;  //!< GCC/Clang extension

  constexpr bool is_prime(std::uint64_t m) noexcept {
    if (m < 2) {
      return false;
    }
    for (std::uint64_t d = 2; d * d <= m; ++d) {
      if (m % d == 0) {
        return false;
      }
    }
    return true;
  }

  //! The ring Z/m. Covers F_p (m prime) and the quotients Z/p^k.
  //!
  //! Moduli are limited to 2^16 so that a product of two residues fits in
  //! 32 bits before reduction.
  class ResidueRing {
   public:
    static constexpr residue_type max_modulus = 1u << 16;

    explicit ResidueRing(residue_type modulus)
        : modulus_(modulus),
          is_field_(is_prime(modulus)),
          magic_(UINT64_MAX / (modulus == 0 ? 1 : modulus) + 1) {
      if (modulus < 2 || modulus > max_modulus) {
        throw ValidationError("ring modulus must lie in [2, 65536], got "
                              + std::to_string(modulus));
      }
    }

    residue_type modulus() const noexcept {
      return modulus_;
    }
    bool is_field() const noexcept {
      return is_field_;
    }
    std::size_t size() const noexcept {
      return modulus_;
    }

    residue_type reduce(std::int64_t x) const noexcept {
      auto r = x % static_cast<std::int64_t>(modulus_);
      return static_cast<residue_type>(r < 0 ? r + modulus_ : r);
    }
    residue_type add(residue_type a, residue_type b) const noexcept {
      residue_type s = a + b;
      return s >= modulus_ ? s - modulus_ : s;
    }
    residue_type sub(residue_type a, residue_type b) const noexcept {
      return a >= b ? a - b : a + modulus_ - b;
    }
    residue_type mul(residue_type a, residue_type b) const noexcept {
      // a, b < 2^16, so the product fits in 32 bits; reduce it with a
      // precomputed reciprocal instead of a division.
      std::uint64_t const low = magic_ * (a * b);
      return static_cast<residue_type>(
          (static_cast<uint128>(low) * modulus_) >> 64);
    }
    residue_type neg(residue_type a) const noexcept {
      return a == 0 ? 0 : modulus_ - a;
    }

    bool operator==(ResidueRing const& other) const noexcept {
      return modulus_ == other.modulus_;
    }

   private:
    residue_type  modulus_;
    bool          is_field_;
    std::uint64_t magic_;
  };

  inline std::ostream& operator<<(std::ostream& os, ResidueRing const& R) {
    return os << "Z/" << R.modulus();
  }

  //! A canonical residue tagged with its ring.
  class RingElement {
   public:
    RingElement(ResidueRing ring, std::int64_t value)
        : ring_(ring), value_(ring.reduce(value)) {}

    static RingElement zero(ResidueRing ring) {
      return RingElement(ring, 0);
    }
    static RingElement one(ResidueRing ring) {
      return RingElement(ring, 1);
    }

    residue_type value() const noexcept {
      return value_;
    }
    ResidueRing const& ring() const noexcept {
      return ring_;
    }

    friend RingElement operator+(RingElement const& a, RingElement const& b) {
      check_same_ring(a, b);
      return RingElement(a.ring_, a.ring_.add(a.value_, b.value_), raw{});
    }
    friend RingElement operator*(RingElement const& a, RingElement const& b) {
      check_same_ring(a, b);
      return RingElement(a.ring_, a.ring_.mul(a.value_, b.value_), raw{});
    }
    friend bool operator==(RingElement const& a, RingElement const& b) {
      return a.ring_ == b.ring_ && a.value_ == b.value_;
    }

    //! Image under Z/m -> Z/m' for m' dividing m.
    RingElement reduce_to(ResidueRing const& target) const {
      if (ring_.modulus() % target.modulus() != 0) {
        throw UsageError("Z/" + std::to_string(target.modulus())
                         + " is not a quotient of Z/"
                         + std::to_string(ring_.modulus()));
      }
      return RingElement(target, value_);
    }

   private:
    struct raw {};
    RingElement(ResidueRing ring, residue_type v, raw) : ring_(ring), value_(v) {}

    static void check_same_ring(RingElement const& a, RingElement const& b) {
      if (!(a.ring_ == b.ring_)) {
        throw UsageError("operands live in different rings (Z/"
                         + std::to_string(a.ring_.modulus()) + " and Z/"
                         + std::to_string(b.ring_.modulus()) + ")");
      }
    }

    ResidueRing  ring_;
    residue_type value_;
  };

  inline RingElement ring_add(RingElement const& a, RingElement const& b) {
    return a + b;
  }

  inline RingElement ring_mul(RingElement const& a, RingElement const& b) {
    return a * b;
  }

  inline std::ostream& operator<<(std::ostream& os, RingElement const& x) {
    return os << x.value();
  }

  //! All u in [1, m] with gcd(u, m) = 1; {1} for m = 1. These are the
  //! exponents u for which g^u generates the cyclic group of an element g of
  //! order m.
  inline std::vector<std::uint64_t> units_mod(std::uint64_t m) {
    if (m == 0) {
      throw UsageError("units_mod requires m >= 1");
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t u = 1; u <= m; ++u) {
      if (std::gcd(u, m) == 1) {
        out.push_back(u);
      }
    }
    return out;
  }

}  // namespace honda
