#include <gtest/gtest.h>

#include <random>

#include "honda/ring.hpp"

using namespace honda;

TEST(Ring, AdditionExamples) {
  ResidueRing F2(2), Z9(9);
  EXPECT_EQ((RingElement(F2, 1) + RingElement(F2, 1)).value(), 0u);
  EXPECT_EQ((RingElement(Z9, 5) + RingElement(Z9, 7)).value(), 3u);
  for (residue_type a = 0; a < 9; ++a) {
    EXPECT_EQ(ring_add(RingElement(Z9, a), RingElement::zero(Z9)),
              RingElement(Z9, a));
  }
}

TEST(Ring, MultiplicationExamples) {
  ResidueRing F3(3), Z8(8);
  EXPECT_EQ((RingElement(F3, 2) * RingElement(F3, 2)).value(), 1u);
  EXPECT_EQ((RingElement(Z8, 3) * RingElement(Z8, 5)).value(), 7u);
  for (residue_type a = 0; a < 8; ++a) {
    EXPECT_EQ(ring_mul(RingElement(Z8, a), RingElement::one(Z8)),
              RingElement(Z8, a));
  }
}

TEST(Ring, MixedRingsRejected) {
  RingElement a(ResidueRing(4), 1), b(ResidueRing(5), 1);
  EXPECT_THROW(a + b, UsageError);
  EXPECT_THROW(a * b, UsageError);
}

TEST(Ring, CanonicalResidues) {
  ResidueRing Z7(7);
  EXPECT_EQ(RingElement(Z7, -1).value(), 6u);
  EXPECT_EQ(RingElement(Z7, 700).value(), 0u);
  EXPECT_THROW(ResidueRing(1), ValidationError);
  EXPECT_THROW(ResidueRing(0), ValidationError);
}

TEST(Ring, IsFieldMatchesPrimality) {
  for (residue_type m = 2; m < 200; ++m) {
    bool prime = true;
    for (residue_type d = 2; d < m; ++d) {
      prime = prime && m % d != 0;
    }
    EXPECT_EQ(ResidueRing(m).is_field(), prime) << m;
  }
}

TEST(Ring, UnitsMod) {
  EXPECT_EQ(units_mod(6), (std::vector<std::uint64_t>{1, 5}));
  EXPECT_EQ(units_mod(1), (std::vector<std::uint64_t>{1}));
  EXPECT_EQ(units_mod(8), (std::vector<std::uint64_t>{1, 3, 5, 7}));
  EXPECT_EQ(units_mod(2), (std::vector<std::uint64_t>{1}));
}

// Ring axioms on random triples, for a spread of moduli.
TEST(RingProperty, Axioms) {
  std::mt19937_64 rng(20261015);
  for (residue_type m : {2u, 3u, 4u, 6u, 9u, 16u, 97u, 65536u}) {
    ResidueRing R(m);
    for (int trial = 0; trial < 500; ++trial) {
      RingElement a(R, static_cast<std::int64_t>(rng() % m));
      RingElement b(R, static_cast<std::int64_t>(rng() % m));
      RingElement c(R, static_cast<std::int64_t>(rng() % m));
      ASSERT_EQ((a + b) + c, a + (b + c));
      ASSERT_EQ((a * b) * c, a * (b * c));
      ASSERT_EQ(a + b, b + a);
      ASSERT_EQ(a * b, b * a);
      ASSERT_EQ(a * (b + c), a * b + a * c);
      ASSERT_EQ(a + RingElement::zero(R), a);
      ASSERT_EQ(a * RingElement::one(R), a);
    }
  }
}

// value -> value mod m' is a ring homomorphism Z/m -> Z/m' when m' | m.
TEST(RingProperty, ReductionIsHomomorphism) {
  for (residue_type m = 2; m <= 16; ++m) {
    ResidueRing R(m);
    for (residue_type q = 2; q <= m; ++q) {
      if (m % q != 0) {
        continue;
      }
      ResidueRing Q(q);
      for (residue_type x = 0; x < m; ++x) {
        for (residue_type y = 0; y < m; ++y) {
          RingElement a(R, x), b(R, y);
          ASSERT_EQ((a + b).reduce_to(Q), a.reduce_to(Q) + b.reduce_to(Q));
          ASSERT_EQ((a * b).reduce_to(Q), a.reduce_to(Q) * b.reduce_to(Q));
        }
      }
    }
  }
  EXPECT_THROW(RingElement(ResidueRing(9), 1).reduce_to(ResidueRing(2)),
               UsageError);
}
