#pragma once

// Mixed Hodge tables of isolated cluster varieties (no quiver edges) from
// the isotypic decomposition over the group G = (C Q^n  meet  Z^m) / C Z^n.

#include <cstddef>
#include <functional>
#include <vector>

#include "clusterlab/errors.hpp"
#include "clusterlab/exactlinalg.hpp"
#include "clusterlab/standard_cohomology.hpp"

namespace clusterlab {

/// One isotypic component (or, in strata mode, all components sharing |J|).
struct IsotypicSummary {
  std::vector<Integer> g;   // residues a_i mod d_i in SNF coordinates; empty in strata mode
  std::size_t j_size = 0;   // number of non-integral lift coordinates
  Integer multiplicity = 1;
  std::vector<Integer> dims;  // coefficients of q^{2|J|}(1+q+q^2)^{n-|J|}(1+q)^{m-n}
};

inline constexpr std::size_t kDefaultGroupCap = 1000000;

/// Coefficients of q^{2j}(1+q+q^2)^{n-j}(1+q)^{m-n}.
inline std::vector<Integer> isotypic_generating_function(std::size_t n, std::size_t m, std::size_t j) {
  std::vector<Integer> p(2 * j + 1, 0);
  p[2 * j] = 1;
  for (std::size_t i = 0; i < n - j; ++i) p = detail::poly_mul(p, {1, 1, 1});
  for (std::size_t i = 0; i < m - n; ++i) p = detail::poly_mul(p, {1, 1});
  return p;
}

namespace detail {

struct GroupData {
  std::vector<Integer> d;  // invariant factors of C (all nonzero)
  Integer L = 1;           // lcm = d.back()
  IntMatrix shift;         // n x n: column i of V^{-1} scaled by L / d_i
  Integer order = 1;
};

inline GroupData isolated_group(const IntMatrix& c) {
  const std::size_t n = c.cols();
  if (c.rows() < n || rank(c) != n) throw NotFullRank("isolated matrix C must have rank n");
  SnfDecomposition snf = smith_normal_form(c);
  GroupData g;
  for (std::size_t i = 0; i < n; ++i) g.d.push_back(snf.d(i, i));
  g.L = n ? g.d.back() : Integer(1);
  g.shift = IntMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) g.shift(j, i) = snf.v_inv(j, i) * (g.L / g.d[i]);
  for (const auto& v : g.d) g.order *= v;
  return g;
}

inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace detail

/// Number of group elements with exactly j non-integral lift coordinates,
/// indexed by j.  Enumerates G directly.
inline std::vector<Integer> j_strata_by_enumeration(const IntMatrix& c) {
  auto g = detail::isolated_group(c);
  const std::size_t n = c.cols();
  std::vector<Integer> counts(n + 1, 0);
  std::vector<Integer> a(n, 0);
  for (;;) {
    std::size_t j = 0;
    for (std::size_t r = 0; r < n; ++r) {
      Integer x = 0;
      for (std::size_t i = 0; i < n; ++i) x += g.shift(r, i) * a[i];
      if (detail::mod_floor(x, g.L) != 0) ++j;
    }
    counts[j] += 1;
    std::size_t pos = 0;
    while (pos < n && ++a[pos] == g.d[pos]) a[pos++] = 0;
    if (pos == n) break;
  }
  return counts;
}

/// Same counts without enumerating G: for each set T of coordinates the
/// subgroup where those coordinates are integral has order
/// |G| * [Z^T : lattice] / L^{|T|}, then inclusion-exclusion.
inline std::vector<Integer> j_strata_by_lattice(const IntMatrix& c) {
  auto g = detail::isolated_group(c);
  const std::size_t n = c.cols();
  if (n > 20) throw DimensionCap("too many coordinates for strata counting");
  const std::size_t full = std::size_t{1} << n;
  std::vector<Integer> integral_at_least(full);
  for (std::size_t mask = 0; mask < full; ++mask) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < n; ++r)
      if (mask >> r & 1) rows.push_back(r);
    IntMatrix lat(rows.size(), n + rows.size());
    for (std::size_t t = 0; t < rows.size(); ++t) {
      for (std::size_t i = 0; i < n; ++i) lat(t, i) = g.shift(rows[t], i);
      lat(t, n + t) = g.L;
    }
    Integer index = 1;
    for (const auto& v : invariant_factors(lat)) index *= v;
    Integer lpow;
    mpz_pow_ui(lpow.get_mpz_t(), g.L.get_mpz_t(), rows.size());
    integral_at_least[mask] = g.order * index / lpow;
  }
  std::vector<Integer> counts(n + 1, 0);
  for (std::size_t mask = 0; mask < full; ++mask) {
    // Exactly the coordinates in mask are integral.
    Integer exact = 0;
    for (std::size_t super = mask;; super = (super + 1) | mask) {
      std::size_t extra = static_cast<std::size_t>(__builtin_popcountll(super ^ mask));
      exact += (extra % 2 ? -1 : 1) * integral_at_least[super];
      if (super == full - 1) break;
    }
    counts[n - static_cast<std::size_t>(__builtin_popcountll(mask))] += exact;
  }
  return counts;
}

struct IsotypicResult {
  std::vector<IsotypicSummary> components;
  HodgeTable table;
};

/// Hodge table of the isolated cluster variety with B~ = (0; C), C of size m x n.
inline IsotypicResult isotypic_table(const IntMatrix& c, std::size_t group_cap = kDefaultGroupCap) {
  const std::size_t n = c.cols(), m = c.rows();
  auto g = detail::isolated_group(c);
  IsotypicResult res;
  res.table = HodgeTable{n, m, {}};
  auto add = [&](std::size_t j, const Integer& mult) {
    auto dims = isotypic_generating_function(n, m, j);
    for (std::size_t k = 0; k < dims.size(); ++k)
      res.table.add(static_cast<long>(k), static_cast<long>(k) - static_cast<long>(j), dims[k] * mult);
    return dims;
  };
  if (g.order <= group_cap) {
    std::vector<Integer> a(n, 0);
    for (;;) {
      std::size_t j = 0;
      for (std::size_t r = 0; r < n; ++r) {
        Integer x = 0;
        for (std::size_t i = 0; i < n; ++i) x += g.shift(r, i) * a[i];
        if (detail::mod_floor(x, g.L) != 0) ++j;
      }
      res.components.push_back({a, j, 1, add(j, 1)});
      std::size_t pos = 0;
      while (pos < n && ++a[pos] == g.d[pos]) a[pos++] = 0;
      if (pos == n) break;
    }
  } else {
    auto counts = j_strata_by_lattice(c);
    for (std::size_t j = 0; j <= n; ++j)
      if (counts[j] != 0) res.components.push_back({{}, j, counts[j], add(j, counts[j])});
  }
  return res;
}

/// Table of B~ = (0; b).
inline HodgeTable rank1_table(const Integer& b) {
  if (b < 1) throw PreconditionViolated("rank-1 table needs b >= 1");
  IntMatrix c(1, 1);
  c(0, 0) = b;
  return isotypic_table(c).table;
}

}  // namespace clusterlab
