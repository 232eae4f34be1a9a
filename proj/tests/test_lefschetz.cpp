#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "honda/folang/compile.hpp"
#include "honda/folang/eval.hpp"
#include "honda/folang/parser.hpp"
#include "honda/folang/printer.hpp"
#include "honda/lefschetz/psi.hpp"
#include "oracles.hpp"

using namespace honda;
using namespace honda::lefschetz;

namespace {

  fol::Assignment z_assignment(ParameterTuple const& alpha) {
    fol::Assignment env;
    for (std::size_t a = 1; a <= alpha.c(); ++a) {
      for (std::size_t b = 1; b <= alpha.c(); ++b) {
        env.set(z_name(a, b), RingElement(alpha.ring(), alpha.get(a, b)));
      }
    }
    return env;
  }

  void bind_matrix(fol::Assignment& env, std::string const& prefix, SquareMatrix const& M) {
    for (std::size_t i = 0; i < M.dim(); ++i) {
      for (std::size_t j = 0; j < M.dim(); ++j) {
        env.set(entry_name(prefix, i + 1, j + 1), M.at(i, j));
      }
    }
  }

  // Random tuples in which most columns are zero, so that G_alpha is often
  // nonempty and sometimes a proper subgroup.
  ParameterTuple sparse_alpha(ResidueRing const&   ring,
                              MonomialBasis const& basis,
                              std::mt19937_64&     rng) {
    ParameterTuple a(ring, basis);
    std::size_t    live = rng() % 4;
    for (std::size_t k = 0; k < live; ++k) {
      std::size_t d = 1 + rng() % basis.c();
      for (std::size_t e = 1; e <= basis.c(); ++e) {
        // low-degree terms are more likely to matter
        if (rng() % (e <= 5 ? 2 : 6) == 0) {
          a.set(e, d, static_cast<std::int64_t>(rng() % ring.modulus()));
        }
      }
    }
    return a;
  }

  std::set<std::vector<SquareMatrix>> sorted_sets(AlphaSpace const& space,
                                                  MaskSweep const&  sweep) {
    std::set<std::vector<SquareMatrix>> out;
    for (auto const& mc : sweep.classes) {
      auto m = space.members(mc.mask);
      std::sort(m.begin(), m.end());
      out.insert(m);
    }
    return out;
  }

  PsiParams relaxed(std::size_t n, std::int64_t s, std::int64_t t, std::size_t r) {
    return PsiParams{n, s, t, r, DegreeBound::relaxed};
  }

}  // namespace

// ---------------------------------------------------------------- basis

TEST(Basis, Examples) {
  EXPECT_EQ(build_basis(2, 2).c(), 15u);
  EXPECT_EQ(build_basis(1, 1).c(), 2u);
  EXPECT_EQ(build_basis(2, 3).c(), 35u);
}

TEST(Basis, DegreeBelowDimension) {
  EXPECT_THROW(build_basis(2, 1), ValidationError);
  EXPECT_THROW(build_basis(3, 2), ValidationError);
  EXPECT_EQ(build_basis(2, 1, DegreeBound::relaxed).c(), 5u);
  EXPECT_THROW(build_basis(0, 1), ValidationError);
  EXPECT_THROW(build_basis(5, 5), ValidationError);
}

TEST(Basis, CountLaw) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t r = n; r <= 5; ++r) {
      auto basis = build_basis(n, r);
      auto enumerated = oracle::exponent_vectors(n * n, static_cast<unsigned>(r));
      EXPECT_EQ(basis.c(), enumerated.size()) << n << " " << r;
      EXPECT_EQ(basis.c(), oracle::binomial(n * n + r, n * n)) << n << " " << r;
      std::set<std::vector<unsigned>> a(enumerated.begin(), enumerated.end()), b;
      for (auto const& e : basis.exponents()) {
        b.insert(std::vector<unsigned>(e.begin(), e.end()));
      }
      EXPECT_EQ(a, b);
    }
  }
}

TEST(Basis, GradedLexOrder) {
  auto basis = build_basis(2, 2);
  std::vector<std::vector<std::uint8_t>> expected{
      {0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1},
      {2, 0, 0, 0}, {1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}, {0, 2, 0, 0},
      {0, 1, 1, 0}, {0, 1, 0, 1}, {0, 0, 2, 0}, {0, 0, 1, 1}, {0, 0, 0, 2}};
  EXPECT_EQ(basis.exponents(), expected);
  for (std::size_t n = 1; n <= 2; ++n) {
    for (std::size_t r = n; r < 5; ++r) {
      auto small = build_basis(n, r), large = build_basis(n, r + 1);
      EXPECT_TRUE(std::equal(small.exponents().begin(), small.exponents().end(),
                             large.exponents().begin()));
    }
  }
}

// ---------------------------------------------------------------- g_d

TEST(EvalG, ZeroAndConstant) {
  ResidueRing F3(3);
  auto        basis = build_basis(2, 2);
  ParameterTuple zero(F3, basis), one(F3, basis);
  for (std::size_t d = 1; d <= basis.c(); ++d) {
    one.set(1, d, 1);
  }
  for (auto const& beta : enumerate_sl(F3, 2, 1000)) {
    for (std::size_t d = 1; d <= basis.c(); ++d) {
      EXPECT_EQ(eval_g(basis, d, beta, zero).value(), 0u);
      EXPECT_EQ(eval_g(basis, d, beta, one).value(), 1u);
    }
  }
  EXPECT_THROW(eval_g(basis, 0, SquareMatrix::identity(F3, 2), zero), UsageError);
  EXPECT_THROW(eval_g(basis, 16, SquareMatrix::identity(F3, 2), zero), UsageError);
}

TEST(EvalG, HandExample) {
  // g_3 = 1 + 2 X11 + X11 X22 + X22^2 at [[2, 1], [1, 1]] over Z/3:
  // 1 + 4 + 2 + 1 = 8 = 2.
  ResidueRing    F3(3);
  auto           basis = build_basis(2, 2);
  ParameterTuple alpha(F3, basis);
  alpha.set(1, 3, 1).set(2, 3, 2).set(9, 3, 1).set(15, 3, 1);
  auto point = SquareMatrix::from_rows(F3, 2, {2, 1, 1, 1});
  EXPECT_EQ(eval_g(basis, 3, point, alpha).value(), 2u);
  EXPECT_EQ(eval_g(basis, 2, point, alpha).value(), 0u);
}

TEST(EvalG, AgreesWithDirectPolynomialSum) {
  std::mt19937_64 rng(3);
  for (residue_type m : {3u, 4u, 7u}) {
    ResidueRing R(m);
    auto        basis = build_basis(2, 3);
    for (int trial = 0; trial < 50; ++trial) {
      ParameterTuple alpha(R, basis);
      std::size_t    d = 1 + rng() % basis.c();
      for (std::size_t e = 1; e <= basis.c(); ++e) {
        alpha.set(e, d, static_cast<std::int64_t>(rng() % m));
      }
      std::int64_t x[4];
      for (auto& v : x) {
        v = static_cast<std::int64_t>(rng() % m);
      }
      auto point = SquareMatrix::from_rows(R, 2, {x[0], x[1], x[2], x[3]});
      // textbook evaluation in int64, reduced once at the end
      std::int64_t sum = 0;
      for (std::size_t e = 0; e < basis.c(); ++e) {
        std::int64_t term = alpha.get(e + 1, d);
        for (std::size_t k = 0; k < 4; ++k) {
          for (int p = 0; p < basis.exponent(e)[k]; ++p) {
            term *= x[k];
          }
        }
        sum += term;
      }
      EXPECT_EQ(static_cast<std::int64_t>(eval_g(basis, d, point, alpha).value()), oracle::mod(sum, m));
    }
  }
}

TEST(ParameterTuple, CanonicalIndex) {
  ResidueRing F2(2);
  auto        basis = build_basis(2, 1, DegreeBound::relaxed);
  auto        a     = ParameterTuple::from_index(F2, basis, 1);
  EXPECT_EQ(a.get(1, 1), 1u);
  a = ParameterTuple::from_index(F2, basis, 1u << 5);  // first entry of column 2
  EXPECT_EQ(a.get(1, 2), 1u);
  a = ParameterTuple::from_index(F2, basis, 2);
  EXPECT_EQ(a.get(2, 1), 1u);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    std::uint64_t idx = rng() % (std::uint64_t(1) << 25);
    EXPECT_EQ(ParameterTuple::from_index(F2, basis, idx).index(), idx);
  }
  EXPECT_THROW(ParameterTuple::from_index(F2, basis, std::uint64_t(1) << 25), UsageError);
  EXPECT_THROW(a.get(0, 1), UsageError);
  EXPECT_THROW(a.get(1, 6), UsageError);
}

// ---------------------------------------------------------------- G_alpha

TEST(RealizeSubgroup, Examples) {
  ResidueRing F2(2), F5(5);
  auto        basis = build_basis(2, 2);
  EXPECT_EQ(realize_subgroup(ParameterTuple(F2, basis)).members.size(), 6u);

  // g_1 = X12, g_2 = X21
  auto diag = [&](ResidueRing const& R) {
    ParameterTuple a(R, basis);
    a.set(3, 1, 1).set(4, 2, 1);
    return realize_subgroup(a).members;
  };
  EXPECT_EQ(diag(F2), std::vector<SquareMatrix>{SquareMatrix::identity(F2, 2)});
  auto torus = diag(F5);
  EXPECT_EQ(torus.size(), 4u);
  for (auto const& M : torus) {
    EXPECT_EQ(M.get(0, 1), 0u);
    EXPECT_EQ(M.get(1, 0), 0u);
  }
  EXPECT_TRUE(is_subgroup(torus));

  ParameterTuple unsat(F2, basis);
  unsat.set(1, 4, 1);
  EXPECT_TRUE(realize_subgroup(unsat).members.empty());
  EXPECT_FALSE(is_subgroup({}));
}

TEST(RealizeSubgroup, MaskAgreesWithDirectScan) {
  std::mt19937_64 rng(11);
  for (residue_type m : {2u, 3u, 4u}) {
    ResidueRing R(m);
    auto        basis = build_basis(2, 2);
    AlphaSpace  space(R, basis);
    for (int trial = 0; trial < 100; ++trial) {
      auto a      = sparse_alpha(R, basis, rng);
      auto direct = realize_subgroup(a).members;
      auto viamask = space.members(space.mask(a));
      std::sort(direct.begin(), direct.end());
      std::sort(viamask.begin(), viamask.end());
      EXPECT_EQ(direct, viamask);
    }
  }
}

// ---------------------------------------------------------------- formulas

TEST(Formulas, DeterminantWithoutSubtraction) {
  EXPECT_EQ(fol::print(det_one(MatrixTerm::variable("U", 2))),
            "U_1_1*U_2_2 = 1 + U_1_2*U_2_1");
  EXPECT_EQ(fol::print(det_one(MatrixTerm::variable("U", 1))), "U_1_1 = 1");
  // det = 1 over Z/4 for every 3x3 matrix with a det(X) = 1 formula
  ResidueRing     Z4(4);
  auto            f = det_one(MatrixTerm::variable("U", 3));
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    SquareMatrix M(Z4, 3);
    for (std::size_t k = 0; k < 9; ++k) {
      M.set(k / 3, k % 3, static_cast<residue_type>(rng() % 4));
    }
    fol::Assignment env;
    bind_matrix(env, "U", M);
    EXPECT_EQ(fol::eval_naive(f, Z4, env), M.det() == 1);
  }
}

TEST(Formulas, FreeVariablesAreTheParameters) {
  for (auto const& basis : {build_basis(2, 1, DegreeBound::relaxed), build_basis(2, 2)}) {
    auto zs = z_names(basis.c());
    std::set<std::string> expected(zs.begin(), zs.end());
    EXPECT_EQ(fol::free_vars(build_phi(basis)), expected);
    EXPECT_EQ(fol::free_vars(build_chi(basis)), expected);
    EXPECT_EQ(fol::free_vars(build_eta(basis)), expected);
  }
}

TEST(Formulas, ZeroParametersGiveAGroup) {
  ResidueRing    F2(2);
  auto           basis = build_basis(2, 2);
  auto           env   = z_assignment(ParameterTuple(F2, basis));
  EXPECT_TRUE(fol::eval_naive(build_phi(basis), F2, env));
  EXPECT_TRUE(fol::eval_naive(build_chi(basis), F2, env));
  EXPECT_TRUE(fol::eval_naive(build_eta(basis), F2, env));
}

TEST(Formulas, MembershipShorthandIsSound) {
  std::mt19937_64 rng(5);
  ResidueRing     F3(3);
  auto            basis = build_basis(2, 2);
  auto            member = membership(basis, MatrixTerm::variable("U", 2));
  for (int trial = 0; trial < 20; ++trial) {
    auto alpha = sparse_alpha(F3, basis, rng);
    auto G     = realize_subgroup(alpha).members;
    auto env   = z_assignment(alpha);
    for (std::int64_t code = 0; code < 81; ++code) {
      auto beta = SquareMatrix::from_rows(F3, 2, {code % 3, code / 3 % 3, code / 9 % 3, code / 27});
      bind_matrix(env, "U", beta);
      bool in = std::find(G.begin(), G.end(), beta) != G.end();
      EXPECT_EQ(fol::eval_naive(member, F3, env), in);
    }
  }
}

TEST(Formulas, GuardMatchesDirectValidation) {
  std::mt19937_64 rng(7);
  for (residue_type m : {2u, 3u}) {
    ResidueRing R(m);
    auto        basis = build_basis(2, 2);
    auto        guard = build_guard(basis);
    auto        compiled = fol::compile(guard, R);
    int         groups = 0, checked_naive = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      auto alpha = sparse_alpha(R, basis, rng);
      auto env   = z_assignment(alpha);
      bool valid = is_subgroup(realize_subgroup(alpha).members);
      groups += valid;
      EXPECT_EQ(compiled.evaluate(env), valid);
      if (m == 2 || trial % 20 == 0) {
        EXPECT_EQ(fol::eval_naive(guard, R, env), valid);
        ++checked_naive;
      }
    }
    EXPECT_GT(groups, 50) << "too few subgroup cases to be meaningful";
    EXPECT_LT(groups, 1000);
    EXPECT_GT(checked_naive, 0);
  }
}

TEST(Formulas, PowerEncoding) {
  ResidueRing F3(3);
  auto        sl = enumerate_sl(F3, 2, 100);
  auto        X = MatrixTerm::variable("X", 2), Y = MatrixTerm::variable("Y", 2);
  for (std::int64_t e = -4; e <= 6; ++e) {
    auto f = power_eq(X, Y, e, "P");
    std::set<std::string> fv{"X_1_1", "X_1_2", "X_2_1", "X_2_2"};
    if (e != 0) {  // X = Y^0 says X = I
      fv.insert({"Y_1_1", "Y_1_2", "Y_2_1", "Y_2_2"});
    }
    EXPECT_EQ(fol::free_vars(f), fv);
    auto cf = fol::compile(f, F3);
    for (std::size_t i = 0; i < sl.size(); i += 5) {
      for (auto const& x : sl) {
        fol::Assignment env;
        bind_matrix(env, "X", x);
        bind_matrix(env, "Y", sl[i]);
        EXPECT_EQ(cf.evaluate(env), x == power(sl[i], e)) << e;
      }
    }
  }
  // size grows linearly with the exponent
  auto len = [&](std::int64_t e) { return fol::print(power_eq(X, Y, e, "P")).size(); };
  EXPECT_EQ(len(12) - len(11), len(11) - len(10));
}

// ---------------------------------------------------------------- psi

TEST(Psi, IsASentence) {
  for (auto p : {PsiParams{2, 1, 1, 2}, PsiParams{2, -2, 5, 2}, PsiParams{2, 0, -1, 3},
                 relaxed(2, 3, 2, 1), relaxed(1, 2, 2, 0)}) {
    EXPECT_TRUE(fol::is_sentence(build_psi(p)));
    EXPECT_TRUE(fol::is_sentence(build_psi(p, PsiScope::guard_only)));
  }
}

TEST(Psi, PrintsStablyAndRoundTrips) {
  auto p = relaxed(2, -1, 2, 1);
  auto a = fol::print(build_psi(p));
  auto b = fol::print(build_psi(p));
  EXPECT_EQ(a, b);
  EXPECT_EQ(fol::parse(a), build_psi(p));
  EXPECT_EQ(a.rfind("forall Z_1_1, Z_1_2, Z_1_3", 0), 0u);
  EXPECT_NE(a.find("forall A_1_1, A_1_2, A_2_1, A_2_2."), std::string::npos);
}

TEST(Psi, FiniteFieldExamples) {
  ResidueRing  F2(2);
  SweepOptions closure{.mode = SweepMode::closure};
  for (auto [s, t] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {3, 5}, {-1, -1}, {5, 2}}) {
    PsiParams p{2, s, t, 2};
    auto      r = eval_psi(F2, p, closure);
    EXPECT_TRUE(r.value) << s << " " << t;
    EXPECT_EQ(r.distinct_sets, 64u) << "every subset of SL_2(F_2) is a vanishing set at r = 2";
    EXPECT_TRUE(dagger_check(F2, p.basis(), s, t, closure).pass);
  }
}

TEST(Psi, FullyNaiveEvaluationInDimensionOne) {
  // n = 1 keeps the parameter space small enough for quantifier-by-
  // quantifier evaluation of the whole sentence.
  for (residue_type m : {2u, 3u}) {
    ResidueRing R(m);
    for (auto [s, t] : std::vector<std::pair<int, int>>{{1, 1}, {-1, 2}, {0, 3}}) {
      auto p = relaxed(1, s, t, 1);
      bool naive = eval_psi_naive(R, p);
      EXPECT_TRUE(naive);
      EXPECT_EQ(eval_psi_naive(R, p, PsiScope::guard_only), naive);
      SweepOptions ex;
      EXPECT_EQ(eval_psi(R, p, ex).value, naive);
      EXPECT_EQ(dagger_check(R, p.basis(), s, t, ex).pass, naive);
    }
  }
}

TEST(Psi, AgreesWithCriterion) {
  SweepOptions closure{.mode = SweepMode::closure};
  SweepOptions sampled{.mode = SweepMode::sampled, .seed = 9, .samples = 200};
  for (auto [s, t] : std::vector<std::pair<int, int>>{{1, 1}, {-2, 5}, {0, 1}, {3, -1}}) {
    struct Case {
      residue_type m;
      PsiParams    p;
      SweepOptions o;
    };
    for (auto const& c : {Case{2, relaxed(2, s, t, 1), SweepOptions{}},
                          Case{2, PsiParams{2, s, t, 2}, closure},
                          Case{3, relaxed(2, s, t, 1), closure},
                          Case{3, PsiParams{2, s, t, 2}, sampled}}) {
      ResidueRing R(c.m);
      auto        psi    = eval_psi(R, c.p, c.o);
      auto        dagger = dagger_check(R, c.p.basis(), s, t, c.o);
      EXPECT_EQ(psi.value, dagger.pass);
      EXPECT_EQ(eval_psi(R, c.p, c.o, PsiScope::guard_only).value, psi.value);
      auto x = cross_check(R, c.p, c.o, 50);
      EXPECT_TRUE(x.agree) << "m=" << c.m << " r=" << c.p.r;
      EXPECT_EQ(x.guard_disagreements, 0u);
      EXPECT_EQ(x.body_disagreements, 0u);
    }
  }
}

TEST(Psi, MemoisedBodyMatchesDirectEvaluation) {
  // The body is evaluated once per vanishing set; spot-check that other
  // alphas with the same set give the same value.
  ResidueRing  F2(2);
  auto         p     = relaxed(2, 2, -1, 1);
  auto         basis = p.basis();
  auto         body  = fol::compile(build_psi_body(p), F2);
  AlphaSpace   space(F2, basis);
  std::mt19937_64 rng(4);
  std::unordered_map<Mask, bool, MaskHash> seen;
  int repeats = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    auto alpha = ParameterTuple::from_index(F2, basis, rng() % (1u << 25));
    bool v     = body.evaluate(z_assignment(alpha));
    auto [it, fresh] = seen.emplace(space.mask(alpha), v);
    if (!fresh) {
      ++repeats;
      EXPECT_EQ(it->second, v);
    }
  }
  EXPECT_GT(repeats, 1000);
}

TEST(Psi, NaiveBodyMatchesCriterionPerAlpha) {
  ResidueRing  F2(2);
  auto         p = relaxed(2, 1, 1, 1);
  AlphaSpace   space(F2, p.basis());
  auto         sweep = sweep_masks(space, SweepOptions{.mode = SweepMode::closure});
  fol::NaiveEvaluator ev(build_psi_body(p), F2);
  for (auto const& mc : sweep.classes) {
    auto alpha = ParameterTuple::from_digits(F2, p.basis(), mc.rep);
    auto v     = analyze_subgroup(space, mc.mask, p.s, p.t);
    EXPECT_EQ(ev.evaluate(z_assignment(alpha)), !v.valid || v.dagger);
  }
}

TEST(Sweep, ClosureFindsExactlyTheExhaustiveSets) {
  ResidueRing F2(2);
  AlphaSpace  space(F2, build_basis(2, 1, DegreeBound::relaxed));
  auto        ex = sweep_masks(space, SweepOptions{});
  auto        cl = sweep_masks(space, SweepOptions{.mode = SweepMode::closure});
  EXPECT_EQ(ex.visited, std::uint64_t(1) << 25);
  std::uint64_t total = 0;
  for (auto const& mc : ex.classes) {
    total += mc.count;
    EXPECT_EQ(space.mask(mc.rep), mc.mask);
  }
  EXPECT_EQ(total, ex.visited);
  for (auto const& mc : cl.classes) {
    EXPECT_EQ(space.mask(mc.rep), mc.mask);
  }
  EXPECT_EQ(sorted_sets(space, ex), sorted_sets(space, cl));
  EXPECT_EQ(ex.classes.size(), 58u);
}

TEST(Sweep, CapsAndErrors) {
  ResidueRing F3(3);
  EXPECT_THROW(dagger_check(F3, build_basis(2, 1, DegreeBound::relaxed), 1, 1, SweepOptions{}),
               CapExceeded);
  EXPECT_THROW(eval_psi(F3, PsiParams{2, 1, 1, 2}, SweepOptions{.mode = SweepMode::closure}),
               CapExceeded);
  EXPECT_THROW(AlphaSpace(ResidueRing(37), build_basis(2, 2), 1u << 20), CapExceeded);
}

TEST(Sweep, DeterministicAcrossWorkers) {
  ResidueRing  F3(3);
  auto         basis = build_basis(2, 2);
  SweepOptions one{.mode = SweepMode::sampled, .seed = 42, .samples = 3000, .workers = 1};
  SweepOptions many = one;
  many.workers      = 8;
  auto a = dagger_check(F3, basis, 2, -1, one);
  auto b = dagger_check(F3, basis, 2, -1, many);
  EXPECT_EQ(a.alphas_visited, b.alphas_visited);
  EXPECT_EQ(a.subgroup_alphas, b.subgroup_alphas);
  EXPECT_EQ(a.distinct_sets, b.distinct_sets);
  EXPECT_EQ(a.subgroup_orders, b.subgroup_orders);
  auto sa = sweep_masks(AlphaSpace(F3, basis), one);
  auto sb = sweep_masks(AlphaSpace(F3, basis), many);
  ASSERT_EQ(sa.classes.size(), sb.classes.size());
  for (std::size_t k = 0; k < sa.classes.size(); ++k) {
    EXPECT_EQ(sa.classes[k].mask, sb.classes[k].mask);
    EXPECT_EQ(sa.classes[k].count, sb.classes[k].count);
    EXPECT_EQ(sa.classes[k].first_visit, sb.classes[k].first_visit);
  }
  // a different seed visits different alphas
  SweepOptions other = one;
  other.seed         = 43;
  EXPECT_NE(alpha_at(F3, basis, one, 0), alpha_at(F3, basis, other, 0));
}

TEST(Dagger, SampledFieldOfThree) {
  ResidueRing F3(3);
  auto r = dagger_check(F3, build_basis(2, 2), 1, 1,
                        SweepOptions{.mode = SweepMode::sampled, .seed = 1, .samples = 10'000});
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.alphas_visited, 10'000u);
}

TEST(Dagger, ExhaustiveFieldOfTwo) {
  ResidueRing F2(2);
  auto r = dagger_check(F2, build_basis(2, 1, DegreeBound::relaxed), 2, 5, SweepOptions{});
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.alphas_visited, std::uint64_t(1) << 25);
  // every subgroup of SL_2(F_2) = S_3 is cut out by linear equations
  EXPECT_EQ(r.subgroup_orders, (std::vector<std::size_t>{1, 2, 2, 2, 3, 6}));
}

TEST(Dagger, MonotoneComplexity) {
  std::mt19937_64 rng(8);
  for (residue_type m : {2u, 3u}) {
    ResidueRing R(m);
    auto        b2 = build_basis(2, 2), b3 = build_basis(2, 3);
    AlphaSpace  s2(R, b2), s3(R, b3);
    for (int trial = 0; trial < 200; ++trial) {
      auto a  = sparse_alpha(R, b2, rng);
      auto ap = a.padded(b3);
      auto g2 = s2.members(s2.mask(a)), g3 = s3.members(s3.mask(ap));
      std::sort(g2.begin(), g2.end());
      std::sort(g3.begin(), g3.end());
      EXPECT_EQ(g2, g3);
      auto v2 = analyze_subgroup(s2, s2.mask(a), 2, 3);
      auto v3 = analyze_subgroup(s3, s3.mask(ap), 2, 3);
      EXPECT_EQ(v2.valid, v3.valid);
      EXPECT_EQ(v2.dagger, v3.dagger);
      EXPECT_EQ(v2.triples, v3.triples);
    }
  }
}

TEST(NaiveGuard, AgreesWithValidationOnSamples) {
  ResidueRing F2(2);
  auto        basis = build_basis(2, 1, DegreeBound::relaxed);
  auto r = naive_guard_check(F2, basis,
                             SweepOptions{.mode = SweepMode::sampled, .seed = 5, .samples = 5000});
  EXPECT_EQ(r.alphas_checked, 5000u);
  EXPECT_EQ(r.disagreements, 0u);
  EXPECT_GT(r.subgroup_alphas, 0u);
  auto e = naive_guard_check(F2, basis, SweepOptions{}, 5000);
  EXPECT_EQ(e.disagreements, 0u);
}
