#pragma once

// Fully enumerated finite subgroups of SL_n(Z/m).

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "honda/errors.hpp"
#include "honda/matrix.hpp"
#include "honda/ring.hpp"

namespace honda {

  using ElementIndex = std::uint32_t;

  inline constexpr std::size_t default_closure_cap = 1'000'000;

  //! A finite group of determinant-one matrices with every element listed.
  //!
  //! Elements are stored in discovery order; index 0 is always the identity.
  //! Inverses, element orders and conjugacy classes are computed once at
  //! construction, after which the table is immutable.
  class GroupTable {
   public:
    GroupTable(GroupTable const&)            = default;
    GroupTable(GroupTable&&)                 = default;
    GroupTable& operator=(GroupTable const&) = default;
    GroupTable& operator=(GroupTable&&)      = default;

    ResidueRing ring() const {
      return ring_;
    }
    std::size_t dim() const noexcept {
      return n_;
    }
    std::size_t size() const noexcept {
      return elements_.size();
    }
    SquareMatrix const& element(ElementIndex i) const {
      return elements_.at(i);
    }
    std::vector<SquareMatrix> const& elements() const noexcept {
      return elements_;
    }
    ElementIndex identity_index() const noexcept {
      return 0;
    }
    //! Indices of the generators the table was closed from (or of every
    //! element, for tables built from an explicit element list).
    std::vector<ElementIndex> const& generators() const noexcept {
      return generators_;
    }

    std::optional<ElementIndex> find(SquareMatrix const& M) const {
      auto it = index_.find(M);
      if (it == index_.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    ElementIndex index_of(SquareMatrix const& M) const {
      auto it = index_.find(M);
      if (it == index_.end()) {
        throw UsageError("matrix is not an element of this group");
      }
      return it->second;
    }

    bool contains(SquareMatrix const& M) const {
      return index_.count(M) != 0;
    }

    ElementIndex multiply(ElementIndex a, ElementIndex b) const {
      return index_of(elements_[a] * elements_[b]);
    }
    ElementIndex inverse(ElementIndex a) const {
      return inverse_[a];
    }
    std::uint64_t order(ElementIndex a) const {
      return order_[a];
    }
    //! a^e for any integer e.
    ElementIndex power(ElementIndex a, std::int64_t e) const {
      std::int64_t o = static_cast<std::int64_t>(order_[a]);
      std::int64_t k = ((e % o) + o) % o;
      return index_of(honda::power(elements_[a], k));
    }
    //! a b a^-1 b^-1.
    ElementIndex commutator(ElementIndex a, ElementIndex b) const {
      return index_of(elements_[a] * elements_[b] * elements_[inverse_[a]]
                      * elements_[inverse_[b]]);
    }
    //! g x g^-1.
    ElementIndex conjugate(ElementIndex g, ElementIndex x) const {
      return index_of(elements_[g] * elements_[x] * elements_[inverse_[g]]);
    }

    std::vector<ElementIndex> const& class_reps() const noexcept {
      return class_reps_;
    }
    //! Position in class_reps() of the class containing a.
    std::size_t class_of(ElementIndex a) const {
      return class_of_[a];
    }
    std::size_t num_classes() const noexcept {
      return class_reps_.size();
    }

    friend GroupTable close_generators(ResidueRing const&               ring,
                                       std::size_t                      n,
                                       std::vector<SquareMatrix> const& gens,
                                       std::size_t                      cap);
    friend GroupTable
    group_from_elements(ResidueRing const&               ring,
                        std::size_t                      n,
                        std::vector<SquareMatrix> const& elements);

   private:
    GroupTable(ResidueRing ring, std::size_t n) : ring_(ring), n_(n) {}

    void add(SquareMatrix const& M) {
      index_.emplace(M, static_cast<ElementIndex>(elements_.size()));
      elements_.push_back(M);
    }

    void finish() {
      std::size_t const N = elements_.size();
      inverse_.resize(N);
      order_.resize(N);
      for (ElementIndex i = 0; i < N; ++i) {
        inverse_[i] = index_of(elements_[i].adjugate());
      }
      for (ElementIndex i = 0; i < N; ++i) {
        SquareMatrix  x = elements_[i];
        std::uint64_t e = 1;
        while (!x.is_identity()) {
          x = x * elements_[i];
          ++e;
        }
        order_[i] = e;
      }
      // Conjugacy classes as orbits under conjugation by the generators.
      constexpr std::size_t unset = static_cast<std::size_t>(-1);
      class_of_.assign(N, unset);
      for (ElementIndex i = 0; i < N; ++i) {
        if (class_of_[i] != unset) {
          continue;
        }
        std::size_t const c = class_reps_.size();
        class_reps_.push_back(i);
        class_of_[i] = c;
        std::deque<ElementIndex> queue{i};
        while (!queue.empty()) {
          ElementIndex x = queue.front();
          queue.pop_front();
          for (ElementIndex g : generators_) {
            ElementIndex y = conjugate(g, x);
            if (class_of_[y] == unset) {
              class_of_[y] = c;
              queue.push_back(y);
            }
          }
        }
      }
    }

    ResidueRing                                                    ring_;
    std::size_t                                                    n_;
    std::vector<SquareMatrix>                                      elements_;
    std::unordered_map<SquareMatrix, ElementIndex, SquareMatrixHash> index_;
    std::vector<ElementIndex>                                      generators_;
    std::vector<ElementIndex>                                      inverse_;
    std::vector<std::uint64_t>                                     order_;
    std::vector<ElementIndex>                                      class_reps_;
    std::vector<std::size_t>                                       class_of_;
  };

  namespace detail {
    inline void check_generator(ResidueRing const&  ring,
                                std::size_t         n,
                                SquareMatrix const& g,
                                std::size_t         pos) {
      if (g.modulus() != ring.modulus() || g.dim() != n) {
        throw ValidationError("generator " + std::to_string(pos)
                              + " is not an " + std::to_string(n) + "x"
                              + std::to_string(n) + " matrix over Z/"
                              + std::to_string(ring.modulus()));
      }
      if (!g.is_unimodular()) {
        throw ValidationError("generator " + std::to_string(pos)
                              + " has determinant "
                              + std::to_string(g.det()) + ", expected 1");
      }
    }
  }  // namespace detail

  //! Breadth-first closure of `gens` under right multiplication.
  //! Throws CapExceeded as soon as more than `cap` elements are found.
  inline GroupTable close_generators(ResidueRing const&               ring,
                                     std::size_t                      n,
                                     std::vector<SquareMatrix> const& gens,
                                     std::size_t cap = default_closure_cap) {
    if (cap == 0) {
      throw UsageError("closure cap must be at least 1");
    }
    for (std::size_t k = 0; k < gens.size(); ++k) {
      detail::check_generator(ring, n, gens[k], k);
    }
    GroupTable G(ring, n);
    G.add(SquareMatrix::identity(ring, n));
    for (std::size_t head = 0; head < G.elements_.size(); ++head) {
      for (auto const& g : gens) {
        SquareMatrix y = G.elements_[head] * g;
        if (!G.contains(y)) {
          if (G.elements_.size() >= cap) {
            throw CapExceeded("closure element", cap);
          }
          G.add(y);
        }
      }
    }
    for (auto const& g : gens) {
      ElementIndex gi = G.index_of(g);
      if (std::find(G.generators_.begin(), G.generators_.end(), gi)
          == G.generators_.end()) {
        G.generators_.push_back(gi);
      }
    }
    G.finish();
    return G;
  }

  //! Builds a table from an explicit element list after checking that the
  //! list is duplicate-free, contains I, and is closed under products and
  //! inverses. The identity is moved to index 0; other elements keep their
  //! relative order.
  inline GroupTable
  group_from_elements(ResidueRing const&               ring,
                      std::size_t                      n,
                      std::vector<SquareMatrix> const& elements) {
    GroupTable   G(ring, n);
    SquareMatrix I = SquareMatrix::identity(ring, n);
    for (std::size_t k = 0; k < elements.size(); ++k) {
      detail::check_generator(ring, n, elements[k], k);
    }
    if (std::find(elements.begin(), elements.end(), I) == elements.end()) {
      throw ValidationError("element list does not contain the identity");
    }
    G.add(I);
    for (auto const& M : elements) {
      if (M == I) {
        continue;
      }
      if (G.contains(M)) {
        throw ValidationError("element list contains a duplicate");
      }
      G.add(M);
    }
    std::size_t const N = G.size();
    for (ElementIndex i = 0; i < N; ++i) {
      if (!G.contains(G.elements_[i].adjugate())) {
        throw ValidationError("element list is not closed under inverses");
      }
      for (ElementIndex j = 0; j < N; ++j) {
        if (!G.contains(G.elements_[i] * G.elements_[j])) {
          throw ValidationError("element list is not closed under "
                                "multiplication (elements "
                                + std::to_string(i) + " and "
                                + std::to_string(j) + ")");
        }
      }
    }
    for (ElementIndex i = 0; i < N; ++i) {
      G.generators_.push_back(i);
    }
    G.finish();
    return G;
  }

  inline std::uint64_t element_order(GroupTable const& G, ElementIndex i) {
    return G.order(i);
  }

}  // namespace honda
