#include <gtest/gtest.h>

#include <random>
#include <set>

#include "groups.hpp"
#include "honda/honda.hpp"
#include "oracles.hpp"

using namespace honda;
using honda::testing::m2;
using honda::testing::sl2;

TEST(Matrix, DeterminantAdjugateInverse) {
  ResidueRing  Z9(9);
  SquareMatrix A = SquareMatrix::from_rows(Z9, 2, {2, 7, 1, 4});
  EXPECT_EQ(A.det(), 1u);  // 8 - 7
  EXPECT_TRUE((A * A.inverse()).is_identity());
  EXPECT_TRUE((A.inverse() * A).is_identity());

  ResidueRing  F2(2);
  SquareMatrix B = SquareMatrix::from_rows(F2, 3, {1, 1, 0, 0, 1, 1, 0, 0, 1});
  EXPECT_EQ(B.det(), 1u);
  EXPECT_TRUE((B * B.inverse()).is_identity());

  SquareMatrix C = SquareMatrix::from_rows(F2, 2, {1, 1, 1, 1});
  EXPECT_THROW(C.inverse(), UsageError);
}

TEST(Matrix, DeterminantAgreesWithLeibniz) {
  std::mt19937_64 rng(7);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 200; ++trial) {
      std::int64_t              m = 2 + rng() % 30;
      std::vector<std::int64_t> v(n * n);
      oracle::IntMatrix         A(n, std::vector<std::int64_t>(n));
      for (std::size_t k = 0; k < n * n; ++k) {
        v[k] = A[k / n][k % n] = static_cast<std::int64_t>(rng() % m);
      }
      auto M = SquareMatrix::from_rows(ResidueRing(m), n, v);
      ASSERT_EQ(M.det(), oracle::leibniz_det(A, m));
    }
  }
}

TEST(Matrix, MixedOperandsRejected) {
  EXPECT_THROW(m2(3, 1, 0, 0, 1) * m2(5, 1, 0, 0, 1), UsageError);
  EXPECT_THROW(commutator(m2(3, 1, 0, 0, 1),
                          SquareMatrix::identity(ResidueRing(3), 3)),
               UsageError);
}

TEST(CloseGenerators, SL2OverF2AndF3) {
  EXPECT_EQ(sl2(2).size(), 6u);
  EXPECT_EQ(oracle::sl_order_by_scan(2, 2), 6u);
  EXPECT_EQ(sl2(3).size(), 24u);
  EXPECT_EQ(oracle::sl_order_by_scan(3, 2), 24u);
}

TEST(CloseGenerators, EmptyGeneratorsGiveTrivialGroup) {
  auto G = close_generators(ResidueRing(5), 3, {});
  EXPECT_EQ(G.size(), 1u);
  EXPECT_TRUE(G.element(0).is_identity());
  EXPECT_EQ(G.num_classes(), 1u);
}

TEST(CloseGenerators, Errors) {
  EXPECT_THROW(close_generators(ResidueRing(3), 2, {m2(3, 1, 1, 1, 1)}),
               ValidationError);
  try {
    close_generators(ResidueRing(3), 2,
                     {m2(3, 1, 1, 0, 1), m2(3, 1, 0, 1, 1)}, 10);
    FAIL() << "expected CapExceeded";
  } catch (CapExceeded const& e) {
    EXPECT_EQ(e.cap(), 10u);
    EXPECT_NE(std::string(e.what()).find("10"), std::string::npos);
  }
}

TEST(CloseGenerators, OrdersMatchScans) {
  for (residue_type m : {4u, 5u, 8u, 9u}) {
    EXPECT_EQ(sl2(m).size(), oracle::sl_order_by_scan(m, 2)) << m;
  }
  auto sl3 = close_generators(
      ResidueRing(2), 3,
      {SquareMatrix::from_rows(ResidueRing(2), 3, {1, 1, 0, 0, 1, 0, 0, 0, 1}),
       SquareMatrix::from_rows(ResidueRing(2), 3, {0, 0, 1, 1, 0, 0, 0, 1, 0})});
  EXPECT_EQ(sl3.size(), 168u);
}

TEST(GroupTable, FromElementsValidation) {
  ResidueRing F3(3);
  auto        G = sl2(3);
  auto        T = group_from_elements(F3, 2, G.elements());
  EXPECT_EQ(T.size(), 24u);

  // drop one non-identity element: no longer closed
  std::vector<SquareMatrix> broken(G.elements().begin(),
                                   G.elements().end() - 1);
  EXPECT_THROW(group_from_elements(F3, 2, broken), ValidationError);
  std::vector<SquareMatrix> no_id(G.elements().begin() + 1, G.elements().end());
  EXPECT_THROW(group_from_elements(F3, 2, no_id), ValidationError);
  std::vector<SquareMatrix> dup = G.elements();
  dup.push_back(G.element(3));
  EXPECT_THROW(group_from_elements(F3, 2, dup), ValidationError);
}

TEST(GroupTable, TableInvariants) {
  for (auto& [name, G] : honda::testing::small_groups()) {
    SCOPED_TRACE(name);
    ASSERT_TRUE(G.element(G.identity_index()).is_identity());
    std::set<std::size_t> reps_seen;
    for (ElementIndex i = 0; i < G.size(); ++i) {
      ASSERT_TRUE((G.element(i) * G.element(G.inverse(i))).is_identity());
      // least e >= 1 with g^e = I
      SquareMatrix x = G.element(i);
      std::uint64_t e = 1;
      while (!x.is_identity()) {
        x = x * G.element(i);
        ++e;
      }
      ASSERT_EQ(element_order(G, i), e);
      // conjugate to its class representative
      ElementIndex rep   = G.class_reps()[G.class_of(i)];
      bool         found = false;
      for (ElementIndex g = 0; g < G.size() && !found; ++g) {
        found = G.conjugate(g, rep) == i;
      }
      ASSERT_TRUE(found);
    }
    // representatives lie in distinct classes
    for (std::size_t r = 0; r < G.num_classes(); ++r) {
      ASSERT_EQ(G.class_of(G.class_reps()[r]), r);
      for (std::size_t s = r + 1; s < G.num_classes(); ++s) {
        for (ElementIndex g = 0; g < G.size(); ++g) {
          ASSERT_NE(G.conjugate(g, G.class_reps()[r]), G.class_reps()[s]);
        }
      }
    }
  }
}

TEST(ElementOrder, Examples) {
  auto F2 = sl2(2);
  EXPECT_EQ(element_order(F2, F2.identity_index()), 1u);
  EXPECT_EQ(element_order(F2, F2.index_of(m2(2, 1, 1, 0, 1))), 2u);
  auto F3 = sl2(3);
  EXPECT_EQ(element_order(F3, F3.index_of(m2(3, 1, 1, 0, 1))), 3u);
}

TEST(Commutator, Examples) {
  auto a = m2(2, 1, 1, 0, 1);
  auto b = m2(2, 1, 0, 1, 1);
  auto I = SquareMatrix::identity(ResidueRing(2), 2);
  EXPECT_TRUE(commutator(I, b).is_identity());
  EXPECT_TRUE(commutator(a, a).is_identity());
  // a b = [[0,1],[1,1]], (a b) a^-1 = [[0,1],[1,0]], then * b^-1
  auto c = commutator(a, b);
  EXPECT_EQ(c, m2(2, 1, 1, 1, 0));
  auto G = sl2(2);
  EXPECT_EQ(G.order(G.index_of(c)), 3u);
}

TEST(CommutatorSet, TrivialAndSL2F2) {
  auto T = close_generators(ResidueRing(2), 2, {});
  EXPECT_EQ(commutator_set(T), std::vector<ElementIndex>{0});

  auto G    = sl2(2);
  auto comm = commutator_set(G);
  ASSERT_EQ(comm.size(), 3u);
  for (auto x : comm) {
    EXPECT_TRUE(G.order(x) == 1 || G.order(x) == 3);
  }
  auto brute = oracle::commutators_by_pair_scan(G);
  EXPECT_EQ(std::set<ElementIndex>(comm.begin(), comm.end()), brute);
}

TEST(CommutatorSet, SL2F3FrozenByPairScan) {
  auto G     = sl2(3);
  auto brute = oracle::commutators_by_pair_scan(G);
  // 576-pair scan: the commutators of SL_2(F_3) are exactly its Q_8
  // subgroup: the identity, -I, and the six elements of order 4.
  ASSERT_EQ(brute.size(), 8u);
  std::multiset<std::uint64_t> orders;
  for (auto x : brute) {
    orders.insert(G.order(x));
  }
  EXPECT_EQ(orders.count(1), 1u);
  EXPECT_EQ(orders.count(2), 1u);
  EXPECT_EQ(orders.count(4), 6u);
  auto comm = commutator_set(G);
  EXPECT_EQ(std::set<ElementIndex>(comm.begin(), comm.end()), brute);
}

TEST(CommutatorSet, ClassRepScanMatchesPairScanOnCorpus) {
  for (auto& [name, G] : honda::testing::small_groups()) {
    if (G.size() > 1000) {
      continue;
    }
    SCOPED_TRACE(name);
    auto comm  = commutator_set(G);
    auto brute = oracle::commutators_by_pair_scan(G);
    EXPECT_EQ(std::set<ElementIndex>(comm.begin(), comm.end()), brute);
    // the other convention a^-1 b^-1 a b gives the same set
    EXPECT_EQ(oracle::commutators_by_pair_scan_alt(G), brute);
    // worker count does not change the answer
    EXPECT_EQ(commutator_set(G, 4), comm);
  }
}

TEST(CyclicGenerators, Examples) {
  auto G = close_generators(ResidueRing(7), 2, {m2(7, 3, 0, 0, 5)});
  ASSERT_EQ(G.size(), 6u);
  EXPECT_EQ(cyclic_generators(G, 0), std::vector<ElementIndex>{0});
  for (ElementIndex i = 0; i < G.size(); ++i) {
    auto gens = cyclic_generators(G, i);
    if (G.order(i) == 2) {
      EXPECT_EQ(gens, std::vector<ElementIndex>{i});
    }
    if (G.order(i) == 6) {
      std::vector<ElementIndex> expect{i, G.power(i, 5)};
      std::sort(expect.begin(), expect.end());
      EXPECT_EQ(gens, expect);
    }
  }
}

TEST(CyclicGenerators, SymmetricRelation) {
  for (auto& [name, G] : honda::testing::small_groups()) {
    SCOPED_TRACE(name);
    for (ElementIndex g = 0; g < G.size(); ++g) {
      for (auto d : cyclic_generators(G, g)) {
        auto back = cyclic_generators(G, d);
        ASSERT_TRUE(std::binary_search(back.begin(), back.end(), g));
      }
    }
  }
}

TEST(FindWitness, Examples) {
  auto G  = sl2(2);
  auto id = find_witness(G, G.identity_index());
  ASSERT_TRUE(id);
  EXPECT_TRUE(id->sigma.is_identity());
  EXPECT_TRUE(id->tau.is_identity());

  for (ElementIndex d = 0; d < G.size(); ++d) {
    auto w = find_witness(G, d);
    if (G.order(d) == 2) {
      EXPECT_FALSE(w);
    }
    if (G.order(d) == 3) {
      ASSERT_TRUE(w);
      EXPECT_TRUE(w->verify());
      EXPECT_EQ(w->target, G.element(d));
    }
  }
}

TEST(FindWitness, ValidOnEveryCommutatorAndDeterministic) {
  for (auto& [name, G] : honda::testing::small_groups()) {
    if (G.size() > 130) {
      continue;
    }
    SCOPED_TRACE(name);
    auto brute = oracle::commutators_by_pair_scan(G);
    for (ElementIndex d = 0; d < G.size(); ++d) {
      auto w = find_witness(G, d);
      ASSERT_EQ(w.has_value(), brute.count(d) == 1);
      if (w) {
        ASSERT_TRUE(w->verify());
        auto w4 = find_witness(G, d, 4);
        ASSERT_TRUE(w4);
        ASSERT_EQ(w4->sigma, w->sigma);
        ASSERT_EQ(w4->tau, w->tau);
      }
    }
  }
}

TEST(CheckHonda, PassesOnCorpus) {
  auto T = close_generators(ResidueRing(2), 2, {});
  EXPECT_TRUE(check_honda(T).pass);
  EXPECT_TRUE(check_honda(sl2(3)).pass);
  auto Z4 = sl2(4);
  EXPECT_EQ(Z4.size(), 48u);
  EXPECT_TRUE(check_honda(Z4).pass);
  for (auto& [name, G] : honda::testing::small_groups()) {
    SCOPED_TRACE(name);
    auto rep = check_honda(G);
    EXPECT_TRUE(rep.pass);
    EXPECT_FALSE(rep.counterexample);
    EXPECT_EQ(rep.group_order, G.size());
  }
}

TEST(CheckStrongHonda, Examples) {
  auto G  = sl2(2);
  auto id = check_strong_honda(G, 0, 0);
  EXPECT_TRUE(id.pass);
  EXPECT_EQ(id.subgroup_order, 1u);

  auto a   = G.index_of(m2(2, 1, 1, 0, 1));
  auto b   = G.index_of(m2(2, 1, 0, 1, 1));
  auto rep = check_strong_honda(G, a, b);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.subgroup_order, 6u);
  // [a, b] has order 3, so <[a, b]> has two generators.
  ASSERT_EQ(rep.witnesses.size(), 2u);
  for (auto const& w : rep.witnesses) {
    EXPECT_TRUE(w.verify());
  }
}

TEST(CheckStrongHonda, AllPairsSL2F3) {
  auto G     = sl2(3);
  auto sweep = strong_honda_sweep(G, all_pairs(G));
  EXPECT_EQ(sweep.pairs_checked, 576u);
  EXPECT_TRUE(sweep.failures.empty());
  auto sweep4 = strong_honda_sweep(G, all_pairs(G), 4);
  EXPECT_EQ(sweep4.witnesses_found, sweep.witnesses_found);
}
