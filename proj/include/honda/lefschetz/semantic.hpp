#pragma once

// The semantic side of psi: vanishing sets G_alpha inside SL_n(Z/m), their
// validation as subgroups, and the criterion
//
//   (dagger) for every subgroup G_alpha and all a, b, d in it with
//            d = [a, b]^s and [a, b] = d^t there are sigma, tau in G_alpha
//            with d = [sigma, tau].
//
// Sweeps over alpha are organised around the member mask of G_alpha (a
// bitset over the elements of SL_n): every quantity reported here depends
// on alpha only through that mask, so each distinct mask is analysed once.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "honda/errors.hpp"
#include "honda/lefschetz/basis.hpp"
#include "honda/matrix.hpp"
#include "honda/parallel.hpp"

namespace honda::lefschetz {

  //! Upper bound on the m^(n^2) candidate matrices scanned to list SL_n.
  inline constexpr std::uint64_t default_scan_cap = std::uint64_t(1) << 20;
  //! Upper bound on m^(c^2) for exhaustive sweeps over alpha.
  inline constexpr std::uint64_t default_exhaustive_cap = std::uint64_t(1) << 26;

  //! The vanishing set of the g_d(-, alpha) inside SL_n.
  struct SubgroupCandidate {
    ParameterTuple            params;
    std::vector<SquareMatrix> members;
  };

  //! Direct computation: scans SL_n and evaluates every g_d at each element.
  inline SubgroupCandidate realize_subgroup(ParameterTuple const& alpha,
                                            std::uint64_t scan_cap = default_scan_cap) {
    auto const&       basis = alpha.basis();
    SubgroupCandidate out{alpha, {}};
    for (auto const& beta : enumerate_sl(alpha.ring(), basis.n(), scan_cap)) {
      bool in = true;
      for (std::size_t d = 1; d <= basis.c() && in; ++d) {
        in = eval_g(basis, d, beta, alpha).value() == 0;
      }
      if (in) {
        out.members.push_back(beta);
      }
    }
    return out;
  }

  //! Nonempty, contains I, closed under products and inverses.
  inline bool is_subgroup(std::vector<SquareMatrix> const& members) {
    if (members.empty()) {
      return false;
    }
    std::unordered_set<SquareMatrix, SquareMatrixHash> set(members.begin(),
                                                           members.end());
    if (!set.contains(SquareMatrix::identity(members[0].ring(), members[0].dim()))) {
      return false;
    }
    for (auto const& x : members) {
      if (!set.contains(x.inverse())) {
        return false;
      }
      for (auto const& y : members) {
        if (!set.contains(x * y)) {
          return false;
        }
      }
    }
    return true;
  }

  using Mask = std::vector<std::uint64_t>;

  struct MaskHash {
    std::size_t operator()(Mask const& m) const noexcept {
      std::uint64_t h = 0x9e3779b97f4a7c15ull;
      for (auto w : m) {
        h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };

  //! SL_n(Z/m) listed once, with the monomial values of each element, so
  //! that the member mask of any G_alpha is cheap to compute.
  class AlphaSpace {
   public:
    using Index = std::uint32_t;

    AlphaSpace(ResidueRing ring, MonomialBasis basis, std::uint64_t scan_cap = default_scan_cap)
        : ring_(ring),
          basis_(std::move(basis)),
          elements_(enumerate_sl(ring_, basis_.n(), scan_cap)) {
      std::size_t const N = elements_.size();
      words_              = (N + 63) / 64;
      for (Index i = 0; i < N; ++i) {
        index_.emplace(elements_[i], i);
      }
      identity_ = index_.at(SquareMatrix::identity(ring_, basis_.n()));
      inverse_.resize(N);
      monos_.reserve(N * basis_.c());
      for (Index i = 0; i < N; ++i) {
        inverse_[i] = index_.at(elements_[i].adjugate());
        auto m      = basis_.monomials(elements_[i]);
        monos_.insert(monos_.end(), m.begin(), m.end());
      }
      if (N <= cayley_limit) {
        cayley_.resize(N * N);
        for (Index i = 0; i < N; ++i) {
          for (Index j = 0; j < N; ++j) {
            cayley_[i * N + j] = index_.at(elements_[i] * elements_[j]);
          }
        }
      }
    }

    ResidueRing const& ring() const noexcept {
      return ring_;
    }
    MonomialBasis const& basis() const noexcept {
      return basis_;
    }
    //! |SL_n(Z/m)|.
    std::size_t size() const noexcept {
      return elements_.size();
    }
    std::size_t words() const noexcept {
      return words_;
    }
    SquareMatrix const& element(Index i) const {
      return elements_[i];
    }
    Index identity() const noexcept {
      return identity_;
    }
    Index inverse(Index i) const {
      return inverse_[i];
    }
    Index multiply(Index a, Index b) const {
      if (!cayley_.empty()) {
        return cayley_[a * elements_.size() + b];
      }
      return index_.at(elements_[a] * elements_[b]);
    }
    Index commutator(Index a, Index b) const {
      return multiply(multiply(a, b), multiply(inverse_[a], inverse_[b]));
    }
    Index power(Index a, std::int64_t e) const {
      Index base = e < 0 ? inverse_[a] : a;
      // |e| fits after the sign flip for every value except INT64_MIN
      std::uint64_t k = e < 0 ? std::uint64_t(0) - std::uint64_t(e) : std::uint64_t(e);
      Index         r = identity_;
      while (k != 0) {
        if (k & 1) {
          r = multiply(r, base);
        }
        base = multiply(base, base);
        k >>= 1;
      }
      return r;
    }

    //! Elements beta with sum_e column[e] m_e(beta) = 0.
    Mask column_mask(std::span<residue_type const> column) const {
      Mask              out(words_, 0);
      std::size_t const c = basis_.c();
      for (std::size_t i = 0; i < elements_.size(); ++i) {
        std::uint64_t s = 0;
        for (std::size_t e = 0; e < c; ++e) {
          s += static_cast<std::uint64_t>(column[e]) * monos_[i * c + e];
        }
        if (s % ring_.modulus() == 0) {
          out[i / 64] |= std::uint64_t(1) << (i % 64);
        }
      }
      return out;
    }

    //! Member mask of G_alpha from its c^2 digits (column-major).
    Mask mask(std::span<residue_type const> digits) const {
      std::size_t const c = basis_.c();
      Mask              out(words_, ~std::uint64_t(0));
      trim(out);
      for (std::size_t d = 0; d < c; ++d) {
        Mask col = column_mask(digits.subspan(d * c, c));
        for (std::size_t w = 0; w < words_; ++w) {
          out[w] &= col[w];
        }
      }
      return out;
    }
    Mask mask(ParameterTuple const& alpha) const {
      return mask(alpha.digits());
    }

    void trim(Mask& m) const {
      if (elements_.size() % 64 != 0) {
        m.back() &= (std::uint64_t(1) << (elements_.size() % 64)) - 1;
      }
    }

    static bool test(Mask const& m, Index i) {
      return (m[i / 64] >> (i % 64)) & 1;
    }

    std::vector<Index> member_indices(Mask const& m) const {
      std::vector<Index> out;
      for (Index i = 0; i < elements_.size(); ++i) {
        if (test(m, i)) {
          out.push_back(i);
        }
      }
      return out;
    }

    std::vector<SquareMatrix> members(Mask const& m) const {
      std::vector<SquareMatrix> out;
      for (auto i : member_indices(m)) {
        out.push_back(elements_[i]);
      }
      return out;
    }

   private:
    static constexpr std::size_t cayley_limit = 1024;

    ResidueRing                                                   ring_;
    MonomialBasis                                                 basis_;
    std::vector<SquareMatrix>                                     elements_;
    std::unordered_map<SquareMatrix, Index, SquareMatrixHash>     index_;
    Index                                                         identity_ = 0;
    std::vector<Index>                                            inverse_;
    std::vector<residue_type>                                     monos_;
    std::vector<Index>                                            cayley_;
    std::size_t                                                   words_ = 1;
  };

  struct TripleFailure {
    SquareMatrix a, b, d;
  };

  //! What the criterion needs to know about one member mask.
  struct SubgroupVerdict {
    bool          valid  = false;  //!< a subgroup (so in particular I is in it)
    std::size_t   order  = 0;      //!< number of members
    bool          dagger = true;   //!< the criterion holds (vacuous if !valid)
    std::uint64_t triples = 0;     //!< triples (a, b, d) meeting the hypothesis
    std::optional<TripleFailure> failure;
  };

  inline SubgroupVerdict analyze_subgroup(AlphaSpace const& space,
                                          Mask const&       mask,
                                          std::int64_t      s,
                                          std::int64_t      t) {
    using Index = AlphaSpace::Index;
    SubgroupVerdict v;
    auto const      members = space.member_indices(mask);
    v.order                 = members.size();
    if (members.empty() || !AlphaSpace::test(mask, space.identity())) {
      return v;
    }
    for (Index x : members) {
      if (!AlphaSpace::test(mask, space.inverse(x))) {
        return v;
      }
      for (Index y : members) {
        if (!AlphaSpace::test(mask, space.multiply(x, y))) {
          return v;
        }
      }
    }
    v.valid = true;
    std::vector<bool> is_comm(space.size(), false);
    for (Index x : members) {
      for (Index y : members) {
        is_comm[space.commutator(x, y)] = true;
      }
    }
    // For a pair (a, b) the only candidate d is [a, b]^s.
    for (Index a : members) {
      for (Index b : members) {
        Index c = space.commutator(a, b);
        Index d = space.power(c, s);
        if (space.power(d, t) != c) {
          continue;
        }
        ++v.triples;
        if (!is_comm[d] && v.dagger) {
          v.dagger  = false;
          v.failure = TripleFailure{space.element(a), space.element(b), space.element(d)};
        }
      }
    }
    return v;
  }

  //! How the parameter space is covered.
  //!
  //! `exhaustive` visits every alpha in canonical order (capped).
  //! `sampled` visits seeded pseudo-random alphas. `closure` is exact
  //! without visiting every alpha: it lists the vanishing set of every
  //! possible single column, then closes that family under intersections
  //! of at most c columns, which yields every G_alpha that occurs, each
  //! with one representative alpha.
  enum class SweepMode { exhaustive, sampled, closure };

  inline char const* to_string(SweepMode m) {
    switch (m) {
      case SweepMode::exhaustive:
        return "exhaustive";
      case SweepMode::sampled:
        return "sampled";
      case SweepMode::closure:
        return "closure";
    }
    return "?";
  }

  //! Upper bound on m^c, the number of columns listed in closure mode.
  inline constexpr std::uint64_t default_column_cap = std::uint64_t(1) << 20;
  //! Upper bound on the number of distinct vanishing sets in closure mode.
  inline constexpr std::uint64_t default_class_cap = std::uint64_t(1) << 20;

  struct SweepOptions {
    SweepMode     mode           = SweepMode::exhaustive;
    std::uint64_t seed           = 0;
    std::uint64_t samples        = 10'000;
    std::uint64_t exhaustive_cap = default_exhaustive_cap;
    std::uint64_t column_cap     = default_column_cap;
    std::uint64_t class_cap      = default_class_cap;
    std::size_t   workers        = 1;
  };

  namespace detail {
    inline std::uint64_t splitmix64(std::uint64_t& state) {
      std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
      z               = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z               = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      return z ^ (z >> 31);
    }

    //! Uniform in [0, bound) by rejection, independent of the standard
    //! library's distribution implementation.
    inline std::uint64_t uniform_below(std::uint64_t& state, std::uint64_t bound) {
      std::uint64_t const limit = UINT64_MAX - UINT64_MAX % bound;
      for (;;) {
        std::uint64_t x = splitmix64(state);
        if (x < limit) {
          return x % bound;
        }
      }
    }

    inline std::uint64_t checked_power(std::uint64_t base,
                                       std::size_t   exp,
                                       std::uint64_t cap,
                                       char const*   what) {
      std::uint64_t total = 1;
      bool          over  = false;
      for (std::size_t k = 0; k < exp; ++k) {
        if (total > UINT64_MAX / base) {
          throw CapExceeded(what, cap, UINT64_MAX);  // required: beyond 64 bits
        }
        total *= base;
        over = over || total > cap;
      }
      if (over) {
        throw CapExceeded(what, cap, total);
      }
      return total;
    }
  }  // namespace detail

  //! Digits of the alpha visited at step `visit` of an exhaustive or
  //! sampled sweep. In exhaustive mode this is the tuple with canonical
  //! index `visit`; in sampled mode each sample draws from its own stream
  //! seeded by (seed, visit), so results do not depend on how samples are
  //! split among workers.
  inline void alpha_digits(ResidueRing const&      ring,
                           std::size_t             c,
                           SweepOptions const&     opts,
                           std::uint64_t           visit,
                           std::span<residue_type> out) {
    std::size_t const count = c * c;
    if (opts.mode == SweepMode::closure) {
      throw UsageError("closure sweeps have no visit order");
    }
    if (opts.mode == SweepMode::exhaustive) {
      for (std::size_t k = 0; k < count; ++k) {
        out[k] = static_cast<residue_type>(visit % ring.modulus());
        visit /= ring.modulus();
      }
      return;
    }
    std::uint64_t state = opts.seed;
    detail::splitmix64(state);
    state ^= visit * 0xd1b54a32d192ed03ull;
    for (std::size_t k = 0; k < count; ++k) {
      out[k] = static_cast<residue_type>(detail::uniform_below(state, ring.modulus()));
    }
  }

  inline ParameterTuple alpha_at(ResidueRing const&   ring,
                                 MonomialBasis const& basis,
                                 SweepOptions const&  opts,
                                 std::uint64_t        visit) {
    std::vector<residue_type> d(basis.c() * basis.c());
    alpha_digits(ring, basis.c(), opts, visit, d);
    return ParameterTuple::from_digits(ring, basis, d);
  }

  //! Number of alphas an exhaustive or sampled sweep visits; throws
  //! CapExceeded for an exhaustive sweep whose space m^(c^2) exceeds the
  //! cap, and for a closure sweep with more than `column_cap` columns.
  inline std::uint64_t sweep_size(ResidueRing const&  ring,
                                  std::size_t         c,
                                  SweepOptions const& opts) {
    switch (opts.mode) {
      case SweepMode::sampled:
        return opts.samples;
      case SweepMode::closure:
        detail::checked_power(ring.modulus(), c, opts.column_cap, "closure column space");
        return 0;
      case SweepMode::exhaustive:
        break;
    }
    return detail::checked_power(ring.modulus(), c * c, opts.exhaustive_cap,
                                 "exhaustive parameter space");
  }

  //! All visited alphas with one member mask.
  struct MaskClass {
    Mask                      mask;
    std::uint64_t             count       = 0;  //!< alphas visited (0 in closure mode)
    std::uint64_t             first_visit = 0;  //!< least visit step (discovery rank in closure mode)
    std::vector<residue_type> rep;              //!< digits of that alpha
  };

  struct MaskSweep {
    std::uint64_t          visited = 0;  //!< alphas visited (classes in closure mode)
    std::vector<MaskClass> classes;      //!< ordered by first_visit
  };

  namespace detail {
    inline void decode_column(std::uint64_t v, std::uint64_t m, std::span<residue_type> col) {
      for (auto& x : col) {
        x = static_cast<residue_type>(v % m);
        v /= m;
      }
    }

    inline MaskSweep closure_sweep(AlphaSpace const& space, SweepOptions const& opts) {
      std::size_t const   c     = space.basis().c();
      std::uint64_t const m     = space.ring().modulus();
      std::uint64_t const total = checked_power(m, c, opts.column_cap, "closure column space");

      // Distinct single-column masks, each with its least column code.
      std::vector<Mask>          masks(total);
      std::vector<residue_type>  col(c);
      parallel_blocks(total, 1 << 12, opts.workers,
                      [&](std::size_t begin, std::size_t end) {
                        std::vector<residue_type> cl(c);
                        for (std::size_t v = begin; v < end; ++v) {
                          decode_column(v, m, cl);
                          masks[v] = space.column_mask(cl);
                        }
                      });
      std::unordered_map<Mask, std::uint64_t, MaskHash> first;
      std::vector<std::pair<Mask, std::uint64_t>>       singles;
      for (std::uint64_t v = 0; v < total; ++v) {
        if (first.emplace(masks[v], v).second) {
          singles.emplace_back(masks[v], v);
        }
      }
      masks.clear();
      masks.shrink_to_fit();

      // Breadth-first: level k holds the sets first reached with k columns.
      struct Node {
        Mask                       mask;
        std::vector<std::uint64_t> cols;
      };
      std::vector<Node>                              nodes;
      std::unordered_map<Mask, std::size_t, MaskHash> seen;
      for (auto const& [mk, v] : singles) {
        seen.emplace(mk, nodes.size());
        nodes.push_back({mk, {v}});
      }
      std::size_t level_begin = 0;
      for (std::size_t level = 1; level < c; ++level) {
        std::size_t const level_end = nodes.size();
        for (std::size_t i = level_begin; i < level_end; ++i) {
          for (auto const& [mk, v] : singles) {
            Mask y = nodes[i].mask;
            for (std::size_t w = 0; w < y.size(); ++w) {
              y[w] &= mk[w];
            }
            if (seen.contains(y)) {
              continue;
            }
            if (nodes.size() >= opts.class_cap) {
              throw CapExceeded("distinct vanishing sets", opts.class_cap);
            }
            auto cols = nodes[i].cols;
            cols.push_back(v);
            seen.emplace(y, nodes.size());
            nodes.push_back({std::move(y), std::move(cols)});
          }
        }
        if (nodes.size() == level_end) {
          break;
        }
        level_begin = level_end;
      }

      MaskSweep out;
      out.visited = nodes.size();
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        MaskClass mc{std::move(nodes[k].mask), 0, k, std::vector<residue_type>(c * c, 0)};
        for (std::size_t d = 0; d < nodes[k].cols.size(); ++d) {
          decode_column(nodes[k].cols[d], m,
                        std::span<residue_type>(mc.rep).subspan(d * c, c));
        }
        out.classes.push_back(std::move(mc));
      }
      return out;
    }
  }  // namespace detail

  //! Covers the parameter space according to `opts` and groups the
  //! alphas by member mask.
  inline MaskSweep sweep_masks(AlphaSpace const& space, SweepOptions const& opts) {
    if (opts.mode == SweepMode::closure) {
      return detail::closure_sweep(space, opts);
    }
    std::size_t const   c     = space.basis().c();
    std::uint64_t const total = sweep_size(space.ring(), c, opts);
    std::uint64_t const m     = space.ring().modulus();

    // In exhaustive mode m^c is small (m^(c^2) is capped), so the mask of
    // every possible column is tabulated.
    std::vector<Mask> table;
    std::uint64_t     col_count = 0;
    if (opts.mode == SweepMode::exhaustive) {
      col_count = detail::checked_power(m, c, UINT64_MAX, "column space");
      std::vector<residue_type> col(c);
      table.reserve(col_count);
      for (std::uint64_t v = 0; v < col_count; ++v) {
        detail::decode_column(v, m, col);
        table.push_back(space.column_mask(col));
      }
    }

    using LocalMap = std::unordered_map<Mask, MaskClass, MaskHash>;
    std::uint64_t const   block   = std::uint64_t(1) << 16;
    std::uint64_t const   nblocks = (total + block - 1) / block;
    std::vector<LocalMap> locals(nblocks);
    std::size_t const     W = space.words();

    parallel_for(nblocks, opts.workers, [&](std::size_t b) {
      std::uint64_t const        begin = b * block;
      std::uint64_t const        end   = std::min(total, begin + block);
      LocalMap&                  local = locals[b];
      Mask                       cur(W);
      std::vector<residue_type>  digits(c * c);
      std::vector<std::uint64_t> cols(c);
      if (opts.mode == SweepMode::exhaustive) {
        std::uint64_t x = begin;
        for (std::size_t d = 0; d < c; ++d) {
          cols[d] = x % col_count;
          x /= col_count;
        }
      }
      for (std::uint64_t visit = begin; visit < end; ++visit) {
        if (opts.mode == SweepMode::exhaustive) {
          cur = table[cols[0]];
          for (std::size_t d = 1; d < c; ++d) {
            Mask const& cm = table[cols[d]];
            for (std::size_t w = 0; w < W; ++w) {
              cur[w] &= cm[w];
            }
          }
          for (std::size_t d = 0; d < c && ++cols[d] == col_count; ++d) {
            cols[d] = 0;
          }
        } else {
          alpha_digits(space.ring(), c, opts, visit, digits);
          cur = space.mask(digits);
        }
        auto it = local.find(cur);
        if (it == local.end()) {
          local.emplace(cur, MaskClass{cur, 1, visit, {}});
        } else {
          ++it->second.count;
        }
      }
    });

    LocalMap merged;
    for (auto& local : locals) {
      for (auto& [k, v] : local) {
        auto it = merged.find(k);
        if (it == merged.end()) {
          merged.emplace(k, std::move(v));
        } else {
          it->second.count += v.count;
          it->second.first_visit = std::min(it->second.first_visit, v.first_visit);
        }
      }
    }
    MaskSweep out;
    out.visited = total;
    for (auto& [k, v] : merged) {
      v.rep.resize(c * c);
      alpha_digits(space.ring(), c, opts, v.first_visit, v.rep);
      out.classes.push_back(std::move(v));
    }
    std::sort(out.classes.begin(), out.classes.end(),
              [](MaskClass const& x, MaskClass const& y) {
                return x.first_visit < y.first_visit;
              });
    return out;
  }

  struct DaggerCounterexample {
    std::uint64_t  visit;  //!< first sweep step whose subgroup fails
    ParameterTuple alpha;
    std::size_t    subgroup_order;
    TripleFailure  triple;
  };

  struct DaggerReport {
    bool          pass = true;
    SweepMode     mode = SweepMode::exhaustive;
    std::uint64_t alphas_visited  = 0;
    std::uint64_t subgroup_alphas = 0;  //!< alphas whose G_alpha is a subgroup
    std::uint64_t distinct_sets   = 0;  //!< distinct G_alpha seen
    std::uint64_t distinct_groups = 0;  //!< distinct G_alpha that are subgroups
    std::uint64_t triples_checked = 0;  //!< summed over distinct subgroups
    std::vector<std::size_t>          subgroup_orders;  //!< sorted, one per distinct group
    std::vector<DaggerCounterexample> counterexamples;  //!< in sweep order
  };

  //! Maximum number of counterexamples kept in reports.
  inline constexpr std::size_t max_counterexamples = 16;

  //! Checks the criterion on every alpha of the sweep.
  inline DaggerReport dagger_check(ResidueRing const&   ring,
                                   MonomialBasis const& basis,
                                   std::int64_t         s,
                                   std::int64_t         t,
                                   SweepOptions const&  opts,
                                   std::uint64_t scan_cap = default_scan_cap) {
    sweep_size(ring, basis.c(), opts);  // cap check before any work
    AlphaSpace space(ring, basis, scan_cap);
    MaskSweep  sweep = sweep_masks(space, opts);
    std::vector<SubgroupVerdict> verdicts(sweep.classes.size());
    parallel_for(sweep.classes.size(), opts.workers, [&](std::size_t k) {
      verdicts[k] = analyze_subgroup(space, sweep.classes[k].mask, s, t);
    });
    DaggerReport r;
    r.mode           = opts.mode;
    r.alphas_visited = sweep.visited;
    r.distinct_sets  = sweep.classes.size();
    for (std::size_t k = 0; k < verdicts.size(); ++k) {
      auto const& v = verdicts[k];
      if (!v.valid) {
        continue;
      }
      r.subgroup_alphas += sweep.classes[k].count;
      ++r.distinct_groups;
      r.triples_checked += v.triples;
      r.subgroup_orders.push_back(v.order);
      if (!v.dagger) {
        r.pass = false;
        if (r.counterexamples.size() < max_counterexamples) {
          auto const& mc = sweep.classes[k];
          r.counterexamples.push_back(
              {mc.first_visit, ParameterTuple::from_digits(ring, basis, mc.rep),
               v.order, *v.failure});
        }
      }
    }
    std::sort(r.subgroup_orders.begin(), r.subgroup_orders.end());
    return r;
  }

}  // namespace honda::lefschetz
