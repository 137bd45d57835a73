#pragma once

// Character groups of cluster automorphisms, covering R-matrices, GSV forms.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "clusterlab/cluster_core.hpp"
#include "clusterlab/errors.hpp"
#include "clusterlab/exactlinalg.hpp"

namespace clusterlab {

/// Z^{n+m} / B~ Z^n.
inline AbelianGroup aut_characters(const ExchangeMatrix& b) { return cokernel(b.mat()); }

/// (B~ Q^n intersect Z^{n+m}) / B~ Z^n.
inline AbelianGroup locally_constant_characters(const ExchangeMatrix& b) {
  return torsion_cokernel(b.mat());
}

/// Smallest d with d Z^n contained in B~^T Z^{n+m}: the largest invariant factor.
inline Integer cover_degree(const ExchangeMatrix& b) {
  auto inv = invariant_factors(b.mat());
  if (inv.size() != b.n()) throw NotFullRank("exchange matrix is not of full rank");
  return inv.empty() ? Integer(1) : inv.back();
}

/// Square (n+m) matrix (Id_n 0; P Q).
struct CoverMatrix {
  std::size_t n = 0;
  IntMatrix r;

  bool block_form_ok() const {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < r.cols(); ++j)
        if (r(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }
};

/// The target of R * B~ for a cover of degree d: (B; d Id_n; 0).
inline IntMatrix cover_target(const ExchangeMatrix& b, const Integer& d) {
  IntMatrix t(b.size(), b.n());
  for (std::size_t i = 0; i < b.n(); ++i)
    for (std::size_t j = 0; j < b.n(); ++j) t(i, j) = b.mat()(i, j);
  for (std::size_t i = 0; i < b.n(); ++i) t(b.n() + i, i) = d;
  return t;
}

/// R with R * B~ = (B; d Id_n; 0) and R of full rank.
inline CoverMatrix build_cover(const ExchangeMatrix& b, const Integer& d, std::uint64_t seed = 1) {
  const std::size_t n = b.n(), m = b.m(), N = b.size();
  if (m < n) throw PreconditionViolated("covering needs m >= n");
  Integer d0 = cover_degree(b);
  if (d <= 0 || d % d0 != 0)
    throw PreconditionViolated("cover degree must be a positive multiple of " + d0.get_str());

  // U' = diag(V^-1, Id_m) diag(d/d_i, 1) U^-1 satisfies U' B~ = (d Id_n; 0).
  SnfDecomposition snf = smith_normal_form(b.mat());
  IntMatrix left = IntMatrix::identity(N);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) left(i, j) = snf.v_inv(i, j) * (d / snf.d(j, j));
  IntMatrix uprime = left * snf.u_inv;
  // Last m columns of U'; the bottom rows span the left kernel directions.
  IntMatrix w = uprime.block(0, N, n, N);

  auto as_row = [&](const std::vector<Integer>& v) {
    SparseRow r;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) r[j] = Rational(v[j]);
    return r;
  };
  auto wrow = [&](std::size_t i) {
    std::vector<Integer> v(m);
    for (std::size_t j = 0; j < m; ++j) v[j] = w(i, j);
    return v;
  };

  // Rows of X, the m x N matrix with (P Q) = X U'.
  auto attempt = [&](std::mt19937_64* rng) -> std::optional<IntMatrix> {
    IntMatrix x(m, N);
    RationalEliminator elim(m);
    std::size_t bottom = n;
    for (std::size_t s = n; s < N && bottom < m; ++s) {
      if (!elim.add(as_row(wrow(s)))) continue;
      x(bottom++, s) = 1;
    }
    if (bottom != m) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) {
      x(i, i) = 1;
      bool placed = false;
      for (long t = 0; t <= 3 && !placed; ++t)
        for (std::size_t s = n; s < N && !placed; ++s)
          for (long sign : {1L, -1L}) {
            std::vector<Integer> v = wrow(i);
            long coef = sign * t;
            if (rng) coef = static_cast<long>((*rng)() % 7) - 3;
            for (std::size_t j = 0; j < m; ++j) v[j] += coef * w(s, j);
            RationalEliminator trial = elim;
            if (trial.add(as_row(v))) {
              elim = trial;
              x(i, s) += coef;
              placed = true;
              break;
            }
            if (t == 0) break;
          }
      if (!placed) return std::nullopt;
    }
    return x;
  };

  std::optional<IntMatrix> x = attempt(nullptr);
  std::mt19937_64 rng(seed);
  for (int tries = 0; !x && tries < 1000; ++tries) x = attempt(&rng);
  if (!x) throw CompletionFailed("could not complete the cover matrix");

  IntMatrix pq = *x * uprime;
  CoverMatrix cover{n, IntMatrix::identity(N)};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < N; ++j) cover.r(n + i, j) = pq(i, j);

  if (cover.r * b.mat() != cover_target(b, d))
    throw CompletionFailed("cover postcondition R*B~ = (B; d Id; 0) failed");
  if (determinant(cover.r) == 0) throw CompletionFailed("cover matrix is singular");
  return cover;
}

inline CoverMatrix build_cover(const ExchangeMatrix& b) { return build_cover(b, cover_degree(b)); }

/// Mutation of the R-matrix in direction k relative to B~.
inline CoverMatrix mutate_cover(const CoverMatrix& cover, const ExchangeMatrix& b, std::size_t k) {
  if (k >= b.n()) throw OutOfRange("mutation index " + std::to_string(k + 1) + " not mutable");
  if (cover.r.rows() != b.size() || cover.r.cols() != b.size())
    throw InvalidInput("cover matrix shape does not match exchange matrix");
  const IntMatrix& r = cover.r;
  IntMatrix c = r * b.mat();
  CoverMatrix out = cover;
  for (std::size_t i = b.n(); i < b.size(); ++i) {
    Integer v = -r(i, k) - pos_part(c(i, k));
    for (std::size_t l = 0; l < b.size(); ++l) v += r(i, l) * pos_part(b.mat()(l, k));
    out.r(i, k) = v;
  }
  return out;
}

/// Square skew-symmetric extension of B~.
struct GsvMatrix {
  IntMatrix bhat;
};

/// Full-rank skew-symmetric completion of B~.  The free bottom-right block
/// is tried as zero, then the standard symplectic block, then seeded random
/// samples of growing range.
inline GsvMatrix complete_gsv(const ExchangeMatrix& b, std::uint64_t seed = 1,
                              std::size_t max_tries = 10000) {
  const std::size_t n = b.n(), m = b.m(), N = b.size();
  if (N % 2 != 0) throw OddDimension("full rank GSV forms need n+m even");
  if (rank(b.mat()) != n) throw NotFullRank("exchange matrix is not of full rank");
  IntMatrix base(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      base(i, j) = b.mat()(i, j);
      base(j, i) = -b.mat()(i, j);
    }
  auto with_block = [&](const std::vector<Integer>& lower) {
    IntMatrix h = base;
    std::size_t t = 0;
    for (std::size_t i = 1; i < m; ++i)
      for (std::size_t j = 0; j < i; ++j, ++t) {
        h(n + i, n + j) = lower[t];
        h(n + j, n + i) = -lower[t];
      }
    return h;
  };
  const std::size_t free = m * (m - (m > 0 ? 1 : 0)) / 2;
  std::vector<Integer> lower(free, 0);
  IntMatrix h = with_block(lower);
  if (determinant(h) != 0) return {h};
  // Standard symplectic pairing of consecutive frozen directions.
  for (std::size_t i = 1, t = 0; i < m; ++i)
    for (std::size_t j = 0; j < i; ++j, ++t) lower[t] = (i % 2 == 1 && j + 1 == i) ? 1 : 0;
  h = with_block(lower);
  if (determinant(h) != 0) return {h};
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
    long range = 1 + static_cast<long>(attempt / 100);
    std::uniform_int_distribution<long> dist(-range, range);
    for (auto& v : lower) v = dist(rng);
    h = with_block(lower);
    if (determinant(h) != 0) return {h};
  }
  throw CompletionFailed("no full rank GSV completion found within the retry cap");
}

inline GsvMatrix gsv_pullback(const GsvMatrix& g, const CoverMatrix& cover) {
  if (g.bhat.rows() != cover.r.rows()) throw InvalidInput("GSV and cover shapes differ");
  return {cover.r * g.bhat * cover.r.transpose()};
}

}  // namespace clusterlab
