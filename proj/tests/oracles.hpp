#pragma once

// Slow, direct reference computations used to cross-check the library.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "clusterlab/clusterlab.hpp"

namespace oracle {

using clusterlab::ExchangeMatrix;
using clusterlab::IntMatrix;
using clusterlab::Integer;

inline long powmod(long b, long e, long p) {
  long r = 1 % p;
  b %= p;
  if (b < 0) b += p;
  for (; e > 0; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

// Points of x_i x'_i = P_i^+(x) + P_i^-(x) (frozen coordinates nonzero) over
// F_p for an acyclic exchange matrix, summed stratum by stratum over the set
// S of vanishing mutable coordinates: on a stratum, x'_i is determined when
// x_i != 0 and free when x_i = 0 (which forces P_i = 0).
inline Integer stratified_count(const ExchangeMatrix& b, long p) {
  const std::size_t n = b.n(), N = b.size();
  Integer total = 0;
  std::vector<long> x(N, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Integer stratum = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == N) {
        for (std::size_t k = 0; k < n; ++k) {
          if (!(mask >> k & 1)) continue;
          long plus = 1, minus = 1;
          for (std::size_t j = 0; j < N; ++j) {
            long e = b.mat()(j, k).get_si();
            if (e > 0) plus = plus * powmod(x[j], e, p) % p;
            if (e < 0) minus = minus * powmod(x[j], -e, p) % p;
          }
          if ((plus + minus) % p != 0) return;
        }
        stratum += 1;
        return;
      }
      if (i < n && (mask >> i & 1)) {
        x[i] = 0;
        rec(i + 1);
        return;
      }
      for (long v = 1; v < p; ++v) {
        x[i] = v;
        rec(i + 1);
      }
    };
    rec(0);
    Integer scale = 1;
    for (std::size_t k = 0; k < n; ++k)
      if (mask >> k & 1) scale *= p;
    total += stratum * scale;
  }
  return total;
}

// Points of x x' = y^d + 1 with y != 0 over F_p.
inline Integer rank1_brute(long d, long p) {
  Integer total = 0;
  for (long y = 1; y < p; ++y) total += (powmod(y, d, p) + 1) % p == 0 ? 2 * p - 1 : p - 1;
  return total;
}

// Edges lying on no bi-infinite directed walk: i -> j is separating unless
// some walk of length n ends at i and some walk of length n starts at j.
inline std::vector<clusterlab::EdgePair> separating_by_walks(const clusterlab::Quiver& q) {
  const std::size_t n = q.vertices;
  using BoolMat = std::vector<std::vector<bool>>;
  BoolMat a(n, std::vector<bool>(n, false));
  for (const auto& e : q.edges) a[e.from][e.to] = true;
  auto mul = [&](const BoolMat& x, const BoolMat& y) {
    BoolMat z(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (x[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (y[k][j]) z[i][j] = true;
    return z;
  };
  BoolMat pw(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) pw[i][i] = true;
  for (std::size_t s = 0; s < n; ++s) pw = mul(pw, a);
  std::vector<clusterlab::EdgePair> out;
  for (const auto& e : q.edges) {
    bool into = false, outof = false;
    for (std::size_t v = 0; v < n; ++v) {
      into = into || pw[v][e.from];
      outof = outof || pw[e.to][v];
    }
    if (!(into && outof)) out.emplace_back(e.from, e.to);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Determinant by cofactor expansion.
inline Integer det_small(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer d = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t j = 0; j < n; ++j)
      if (j != c) cols.push_back(j);
    Integer minor = det_small(m.select_rows(rows).select_columns(cols));
    d += (c % 2 ? -1 : 1) * m(0, c) * minor;
  }
  return d;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out,
                    std::vector<std::size_t>& cur, std::size_t start = 0) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, out, cur, i + 1);
    cur.pop_back();
  }
}

// gcd of all k x k minors.
inline Integer minor_gcd(const IntMatrix& m, std::size_t k) {
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  subsets(m.rows(), k, rs, cur);
  subsets(m.cols(), k, cs, cur);
  Integer g = 0;
  for (const auto& r : rs)
    for (const auto& c : cs) {
      Integer d = det_small(m.select_rows(r).select_columns(c));
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  return g;
}

inline long phi_by_gcd(long n) {
  long c = 0;
  for (long a = 1; a <= n; ++a)
    if (std::gcd(a, n) == 1) ++c;
  return c;
}

// Random skew-symmetric principal part with entries in [-w, w] and m frozen
// rows with entries in [-f, f].
inline ExchangeMatrix random_exchange(std::mt19937_64& rng, std::size_t n, std::size_t m, long w = 2, long f = 2) {
  std::uniform_int_distribution<long> dw(-w, w), df(-f, f);
  IntMatrix a(n + m, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      long v = dw(rng);
      a(i, j) = v;
      a(j, i) = -v;
    }
  for (std::size_t i = n; i < n + m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = df(rng);
  return ExchangeMatrix(n, m, a);
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long w) {
  std::uniform_int_distribution<long> d(-w, w);
  IntMatrix a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = d(rng);
  return a;
}

// Acyclic quiver: edges only from lower to higher index, weight 1.
inline ExchangeMatrix random_acyclic(std::mt19937_64& rng, std::size_t n, std::size_t m, double density = 0.5) {
  std::bernoulli_distribution edge(density);
  std::uniform_int_distribution<long> df(-1, 1);
  IntMatrix a(n + m, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (edge(rng)) {
        a(i, j) = 1;
        a(j, i) = -1;
      }
  for (std::size_t i = n; i < n + m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = df(rng);
  return ExchangeMatrix(n, m, a);
}

}  // namespace oracle
