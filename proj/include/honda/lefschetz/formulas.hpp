#pragma once

// Builders for the ring-language formulas that describe the vanishing-set
// subgroups G_Z and the sentence psi_{n,s,t,r}.
//
// Matrices are spelled out entry by entry: the matrix variable U stands for
// the n^2 scalar variables U_1_1, U_1_2, ..., U_n_n, and "U in G_Z"
// abbreviates
//
//   det(U) = 1  &  g_1(U, Z) = 0  &  ...  &  g_c(U, Z) = 0.
//
// The language has no subtraction, so det(U) = 1 is written as
// (sum of even permutation terms) = 1 + (sum of odd permutation terms).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "honda/errors.hpp"
#include "honda/folang/ast.hpp"
#include "honda/lefschetz/basis.hpp"

namespace honda::lefschetz {

  using fol::Formula;
  using fol::Term;

  inline std::string entry_name(std::string const& prefix,
                                std::size_t        i,
                                std::size_t        j) {
    return prefix + "_" + std::to_string(i) + "_" + std::to_string(j);
  }

  //! Name of the parameter variable Z_ab (1-based).
  inline std::string z_name(std::size_t a, std::size_t b) {
    return entry_name("Z", a, b);
  }

  //! All Z_ab in row-major order.
  inline std::vector<std::string> z_names(std::size_t c) {
    std::vector<std::string> out;
    for (std::size_t a = 1; a <= c; ++a) {
      for (std::size_t b = 1; b <= c; ++b) {
        out.push_back(z_name(a, b));
      }
    }
    return out;
  }

  //! An n x n matrix of terms.
  class MatrixTerm {
   public:
    MatrixTerm(std::size_t n, std::vector<Term> entries)
        : n_(n), e_(std::move(entries)) {}

    //! The matrix variable `prefix`, with entries prefix_i_j.
    static MatrixTerm variable(std::string const& prefix, std::size_t n) {
      std::vector<Term> e;
      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
          e.push_back(Term::variable(entry_name(prefix, i, j)));
        }
      }
      return {n, std::move(e)};
    }

    static MatrixTerm identity(std::size_t n) {
      std::vector<Term> e;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          e.push_back(i == j ? Term::one() : Term::zero());
        }
      }
      return {n, std::move(e)};
    }

    std::size_t n() const noexcept {
      return n_;
    }
    //! 0-based entry access.
    Term const& operator()(std::size_t i, std::size_t j) const {
      return e_[i * n_ + j];
    }
    std::vector<Term> const& entries() const noexcept {
      return e_;
    }

    //! (XY)_ij = X_i1 Y_1j + ... + X_in Y_nj.
    friend MatrixTerm operator*(MatrixTerm const& x, MatrixTerm const& y) {
      std::vector<Term> e;
      for (std::size_t i = 0; i < x.n_; ++i) {
        for (std::size_t j = 0; j < x.n_; ++j) {
          Term s = x(i, 0) * y(0, j);
          for (std::size_t l = 1; l < x.n_; ++l) {
            s = s + x(i, l) * y(l, j);
          }
          e.push_back(s);
        }
      }
      return {x.n_, std::move(e)};
    }

   private:
    std::size_t       n_;
    std::vector<Term> e_;
  };

  //! Scalar names of the matrix variable `prefix`, row-major.
  inline std::vector<std::string> matrix_names(std::string const& prefix,
                                               std::size_t        n) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) {
        out.push_back(entry_name(prefix, i, j));
      }
    }
    return out;
  }

  //! Entrywise equality X = Y.
  inline Formula matrix_eq(MatrixTerm const& x, MatrixTerm const& y) {
    std::vector<Formula> parts;
    for (std::size_t k = 0; k < x.entries().size(); ++k) {
      parts.push_back(fol::eq(x.entries()[k], y.entries()[k]));
    }
    return fol::conjoin(parts);
  }

  //! m_e(X) as a product of entries; the constant monomial is 1.
  inline Term monomial_term(MonomialBasis const& basis,
                            std::size_t          e,
                            MatrixTerm const&    x) {
    auto const&         exps = basis.exponent(e);
    std::optional<Term> t;
    for (std::size_t k = 0; k < exps.size(); ++k) {
      for (std::uint8_t p = 0; p < exps[k]; ++p) {
        Term const& f = x.entries()[k];
        t             = t ? *t * f : f;
      }
    }
    return t ? *t : Term::one();
  }

  //! g_d(X, Z) = Z_1d m_1(X) + ... + Z_cd m_c(X), with d 1-based. The
  //! constant monomial contributes the bare Z_1d.
  inline Term g_term(MonomialBasis const& basis, std::size_t d, MatrixTerm const& x) {
    std::optional<Term> sum;
    for (std::size_t e = 0; e < basis.c(); ++e) {
      Term z    = Term::variable(z_name(e + 1, d));
      Term part = basis.degree(e) == 0 ? z : z * monomial_term(basis, e, x);
      sum       = sum ? *sum + part : part;
    }
    return *sum;
  }

  //! det(X) = 1 without subtraction.
  inline Formula det_one(MatrixTerm const& x) {
    std::size_t const        n = x.n();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<Term> even, odd;
    do {
      std::size_t inversions = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          inversions += perm[i] > perm[j];
        }
      }
      Term prod = x(0, perm[0]);
      for (std::size_t i = 1; i < n; ++i) {
        prod = prod * x(i, perm[i]);
      }
      auto& side = inversions % 2 == 0 ? even : odd;
      side       = side ? *side + prod : prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    Term rhs = Term::one();
    if (odd) {
      // 1 + p_1 + p_2 + ..., left-nested
      std::vector<Term> terms;
      Term              cur = *odd;
      while (cur.kind() == Term::Kind::add) {
        terms.push_back(cur.rhs());
        cur = cur.lhs();
      }
      terms.push_back(cur);
      std::reverse(terms.begin(), terms.end());
      for (auto const& t : terms) {
        rhs = rhs + t;
      }
    }
    return fol::eq(*even, rhs);
  }

  //! "X in G_Z": det(X) = 1 and every g_d(X, Z) = 0.
  inline Formula membership(MonomialBasis const& basis, MatrixTerm const& x) {
    std::vector<Formula> parts{det_one(x)};
    for (std::size_t d = 1; d <= basis.c(); ++d) {
      parts.push_back(fol::eq(g_term(basis, d, x), Term::zero()));
    }
    return fol::conjoin(parts);
  }

  //! Closure under products:
  //! forall U, V. (U in G_Z & V in G_Z) -> UV in G_Z.
  inline Formula build_phi(MonomialBasis const& basis) {
    std::size_t const n = basis.n();
    auto              U = MatrixTerm::variable("U", n);
    auto              V = MatrixTerm::variable("V", n);
    auto body = fol::implies(membership(basis, U) && membership(basis, V),
                             membership(basis, U * V));
    return fol::forall(matrix_names("U", n),
                       fol::forall(matrix_names("V", n), body));
  }

  //! Closure under inverses:
  //! forall U, V. (U in G_Z & UV = I & VU = I) -> V in G_Z.
  inline Formula build_chi(MonomialBasis const& basis) {
    std::size_t const n = basis.n();
    auto              U = MatrixTerm::variable("U", n);
    auto              V = MatrixTerm::variable("V", n);
    auto              I = MatrixTerm::identity(n);
    auto body = fol::implies(membership(basis, U) && matrix_eq(U * V, I)
                                 && matrix_eq(V * U, I),
                             membership(basis, V));
    return fol::forall(matrix_names("U", n),
                       fol::forall(matrix_names("V", n), body));
  }

  //! The identity lies in G_Z: g_d(I, Z) = 0 for every d.
  inline Formula build_eta(MonomialBasis const& basis) {
    auto                 I = MatrixTerm::identity(basis.n());
    std::vector<Formula> parts;
    for (std::size_t d = 1; d <= basis.c(); ++d) {
      parts.push_back(fol::eq(g_term(basis, d, I), Term::zero()));
    }
    return fol::conjoin(parts);
  }

  //! phi & chi & eta: true exactly when G_Z is a subgroup of SL_n.
  inline Formula build_guard(MonomialBasis const& basis) {
    return build_phi(basis) && build_chi(basis) && build_eta(basis);
  }

  struct PsiParams {
    std::size_t  n = 2;
    std::int64_t s = 1;
    std::int64_t t = 1;
    std::size_t  r = 2;
    DegreeBound  bound = DegreeBound::strict;

    MonomialBasis basis() const {
      return MonomialBasis(n, r, bound);
    }
  };

  //! Where the quantifier over Z sits. `whole_implication` binds Z over
  //! guard and consequent together; `guard_only` reads the display as
  //! [(forall Z) guard] -> (forall Z) consequent.
  enum class PsiScope { whole_implication, guard_only };

  //! X = Y^e, using existentially quantified auxiliary matrices whose
  //! names start with `aux`. Size grows linearly in |e|.
  inline Formula power_eq(MatrixTerm const&  x,
                          MatrixTerm const&  y,
                          std::int64_t       e,
                          std::string const& aux) {
    std::size_t const n = x.n();
    if (e < 0) {
      // exists Y' with YY' = I = Y'Y and X = Y'^|e|
      std::string const inv = aux + "i";
      auto              Yi  = MatrixTerm::variable(inv, n);
      auto              I   = MatrixTerm::identity(n);
      return fol::exists(matrix_names(inv, n),
                         matrix_eq(y * Yi, I) && matrix_eq(Yi * y, I)
                             && power_eq(x, Yi, -e, aux));
    }
    if (e == 0) {
      return matrix_eq(x, MatrixTerm::identity(n));
    }
    if (e == 1) {
      return matrix_eq(x, y);
    }
    if (e == 2) {
      return matrix_eq(x, y * y);
    }
    // P2 = YY, P3 = P2 Y, ..., X = P_{e-1} Y
    Formula inner = matrix_eq(x, MatrixTerm::variable(aux + std::to_string(e - 1), n) * y);
    for (std::int64_t k = e - 1; k >= 2; --k) {
      std::string const name = aux + std::to_string(k);
      auto const        Pk   = MatrixTerm::variable(name, n);
      auto const prev = k == 2 ? y : MatrixTerm::variable(aux + std::to_string(k - 1), n);
      inner = fol::exists(matrix_names(name, n), matrix_eq(Pk, prev * y) && inner);
    }
    return inner;
  }

  //! The part of psi after the guard, with the Z_ab free:
  //!
  //!   forall A in G. forall B in G. forall D in G. forall C.
  //!     CBA = AB -> ((D = C^s & C = D^t) ->
  //!       exists S in G. exists T in G. DTS = ST)
  //!
  //! C = [A, B] = ABA^-1B^-1 and D = [S, T] are written as the equivalent
  //! product equations CBA = AB and DTS = ST.
  inline Formula build_psi_consequent(PsiParams const& p) {
    MonomialBasis const basis = p.basis();
    std::size_t const   n     = p.n;
    auto A = MatrixTerm::variable("A", n), B = MatrixTerm::variable("B", n),
         C = MatrixTerm::variable("C", n), D = MatrixTerm::variable("D", n),
         S = MatrixTerm::variable("S", n), T = MatrixTerm::variable("T", n);
    Formula witness = fol::exists(
        matrix_names("S", n),
        membership(basis, S)
            && fol::exists(matrix_names("T", n),
                           membership(basis, T) && matrix_eq(D * T * S, S * T)));
    Formula powers = power_eq(D, C, p.s, "P") && power_eq(C, D, p.t, "Q");
    Formula f      = fol::forall(
        matrix_names("C", n),
        fol::implies(matrix_eq(C * B * A, A * B), fol::implies(powers, witness)));
    f = fol::forall(matrix_names("D", n), fol::implies(membership(basis, D), f));
    f = fol::forall(matrix_names("B", n), fol::implies(membership(basis, B), f));
    f = fol::forall(matrix_names("A", n), fol::implies(membership(basis, A), f));
    return f;
  }

  //! guard -> consequent, with the Z_ab free.
  inline Formula build_psi_body(PsiParams const& p) {
    return fol::implies(build_guard(p.basis()), build_psi_consequent(p));
  }

  //! The sentence psi_{n,s,t,r}.
  inline Formula build_psi(PsiParams const& p,
                           PsiScope scope = PsiScope::whole_implication) {
    auto const zs = z_names(p.basis().c());
    if (scope == PsiScope::whole_implication) {
      return fol::forall(zs, build_psi_body(p));
    }
    return fol::implies(fol::forall(zs, build_guard(p.basis())),
                        fol::forall(zs, build_psi_consequent(p)));
  }

}  // namespace honda::lefschetz
