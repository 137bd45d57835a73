#pragma once

// Point counts of cluster varieties over finite fields.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <thread>
#include <vector>

#include "clusterlab/cluster_core.hpp"
#include "clusterlab/errors.hpp"
#include "clusterlab/exactlinalg.hpp"
#include "clusterlab/finite_field.hpp"
#include "clusterlab/quiver_struct.hpp"

namespace clusterlab {

struct PointCountSample {
  u64 q = 0;
  Integer count = 0;
  bool suspect = false;

  bool operator==(const PointCountSample&) const = default;
};

struct CountOptions {
  unsigned threads = 1;
  // Direct torus enumeration is used while (q-1)^{m'} stays below this.
  u64 enumeration_cap = 4000000;
};

inline Integer int_pow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

namespace detail {

// Frozen rows of c that carry a nonzero entry.
inline std::vector<std::size_t> occurring_rows(const IntMatrix& c) {
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < c.rows(); ++r)
    for (std::size_t i = 0; i < c.cols(); ++i)
      if (c(r, i) != 0) {
        rows.push_back(r);
        break;
      }
  return rows;
}

inline Integer combine_histogram(const std::vector<Integer>& hist, u64 q, std::size_t n) {
  Integer total = 0;
  Integer a = Integer(static_cast<unsigned long>(q)) - 1, b = 2 * Integer(static_cast<unsigned long>(q)) - 1;
  for (std::size_t z = 0; z < hist.size(); ++z)
    if (hist[z] != 0) total += hist[z] * int_pow(a, n - z) * int_pow(b, z);
  return total;
}

}  // namespace detail

/// Enumerate the torus of occurring frozen variables in discrete-log
/// coordinates y_j = g^{t_j} and evaluate each binomial with field arithmetic.
inline Integer count_isolated_enumerate(const IntMatrix& c, const FiniteField& field, unsigned threads = 1) {
  const std::size_t n = c.cols();
  const u64 q = field.order(), N = q - 1;
  auto rows = detail::occurring_rows(c);
  const std::size_t mp = rows.size();
  auto exp = field.exp_table();

  // Exponent of the + and - monomial of each binomial, per frozen coordinate.
  std::vector<std::vector<u64>> plus(n, std::vector<u64>(mp)), minus(n, std::vector<u64>(mp));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < mp; ++j) {
      const Integer& e = c(rows[j], i);
      Integer m = e > 0 ? e : Integer(-e);
      u64 red = mpz_fdiv_ui(m.get_mpz_t(), N);
      (e > 0 ? plus : minus)[i][j] = red;
    }

  u64 total = 1;
  for (std::size_t j = 0; j < mp; ++j) total *= N;
  const u64 outer = mp == 0 ? 1 : N;
  const u64 inner = mp == 0 ? 1 : total / N;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(outer)));

  std::vector<std::vector<u64>> hist(threads, std::vector<u64>(n + 1, 0));
  auto work = [&](unsigned tid) {
    std::vector<u64> t(mp, 0);
    std::vector<u64> sp(n), sm(n);
    for (u64 t0 = tid; t0 < outer; t0 += threads) {
      for (u64 idx = 0; idx < inner; ++idx) {
        u64 x = idx;
        if (mp > 0) t[0] = t0;
        for (std::size_t j = 1; j < mp; ++j) {
          t[j] = x % N;
          x /= N;
        }
        std::size_t zeros = 0;
        for (std::size_t i = 0; i < n; ++i) {
          u64 ep = 0, em = 0;
          for (std::size_t j = 0; j < mp; ++j) {
            ep = (ep + plus[i][j] * t[j]) % N;
            em = (em + minus[i][j] * t[j]) % N;
          }
          if (field.add(exp[ep], exp[em]) == 0) ++zeros;
        }
        ++hist[tid][zeros];
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned tid = 0; tid < threads; ++tid) pool.emplace_back(work, tid);
    for (auto& th : pool) th.join();
  }
  std::vector<Integer> merged(n + 1, 0);
  for (unsigned tid = 0; tid < threads; ++tid)
    for (std::size_t z = 0; z <= n; ++z) merged[z] += Integer(static_cast<unsigned long>(hist[tid][z]));
  Integer count = detail::combine_histogram(merged, q, n);
  return count * int_pow(Integer(static_cast<unsigned long>(N)), c.rows() - mp);
}

/// Number of t in (Z/N)^cols with A t = h (mod N) for every row of A.
inline Integer congruence_solutions(const IntMatrix& a, const Integer& h, const Integer& N) {
  if (a.rows() == 0) return int_pow(N, a.cols());
  SnfDecomposition snf = smith_normal_form(a);
  // D (V t) = U^{-1} h 1.
  std::vector<Integer> rhs(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.rows(); ++j) rhs[i] += snf.u_inv(i, j) * h;
  Integer count = 1;
  const std::size_t diag = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer di = i < diag ? snf.d(i, i) : Integer(0);
    Integer g;
    mpz_gcd(g.get_mpz_t(), di.get_mpz_t(), N.get_mpz_t());
    if (!mpz_divisible_p(rhs[i].get_mpz_t(), g.get_mpz_t())) return 0;
    if (i < diag) count *= g;
  }
  if (a.cols() > diag) count *= int_pow(N, a.cols() - diag);
  return count;
}

/// Same count via inclusion over vanishing sets S:
/// sum_S (q-1)^{n-|S|} q^{|S|} #{t : C_S^T t = h mod q-1}, h the discrete log of -1.
inline Integer count_isolated_congruence(const IntMatrix& c, u64 q) {
  const std::size_t n = c.cols();
  if (n > 24) throw DimensionCap("too many binomials for the congruence route");
  const Integer N = Integer(static_cast<unsigned long>(q - 1));
  const Integer h = q % 2 ? N / 2 : Integer(0);
  const Integer Q = Integer(static_cast<unsigned long>(q));
  Integer total = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) cols.push_back(i);
    IntMatrix a(cols.size(), c.rows());
    for (std::size_t s = 0; s < cols.size(); ++s)
      for (std::size_t r = 0; r < c.rows(); ++r) a(s, r) = c(r, cols[s]);
    Integer sol = congruence_solutions(a, h, N);
    if (sol == 0) continue;
    total += int_pow(N, n - cols.size()) * int_pow(Q, cols.size()) * sol;
  }
  return total;
}

/// Points of x_i x'_i = prod y^{[C]+} + prod y^{[-C]+} (i = 1..n) over the torus in y.
inline Integer count_isolated(const IntMatrix& c, const FiniteField& field, const CountOptions& opt = {}) {
  const u64 q = field.order();
  auto rows = detail::occurring_rows(c);
  long double work = 1;
  for (std::size_t j = 0; j < rows.size(); ++j) work *= static_cast<long double>(q - 1);
  if (work <= static_cast<long double>(opt.enumeration_cap)) return count_isolated_enumerate(c, field, opt.threads);
  return count_isolated_congruence(c, q);
}

/// q^2 + (c-2) q + 1 with c = gcd(q-1, 2d) - gcd(q-1, d).
inline Integer rank1_count(const Integer& d, u64 q) {
  if (q % 2 == 0 && d != 1) throw PreconditionViolated("rank-1 closed form needs odd q unless d = 1");
  if (q == 2 && d == 1) return 3;
  Integer Q = Integer(static_cast<unsigned long>(q)), N = Q - 1;
  Integer g1, g2, two_d = 2 * d;
  mpz_gcd(g1.get_mpz_t(), N.get_mpz_t(), two_d.get_mpz_t());
  mpz_gcd(g2.get_mpz_t(), N.get_mpz_t(), d.get_mpz_t());
  Integer cc = g1 - g2;
  return Q * Q + (cc - 2) * Q + 1;
}

/// Recursion #A = #A_{not i} + #A_{not j} - #A_{not i,j} along a certificate,
/// with leaves counted by count_isolated.
class LouiseCounter {
 public:
  LouiseCounter(const FiniteField& field, CountOptions opt = {}) : field_(field), opt_(opt) {}

  Integer count(const ExchangeMatrix& b, const LouiseCertificate& cert) {
    if (!verify_certificate(b, cert)) throw CertificateMismatch("certificate does not verify against the matrix");
    return recurse(b, cert);
  }

 private:
  Integer recurse(const ExchangeMatrix& b, const LouiseCertificate& cert) {
    ExchangeMatrix cur = mutate_path(b, cert.path);
    if (auto it = memo_.find(cur); it != memo_.end()) return it->second;
    Integer result;
    if (cert.is_leaf()) {
      result = count_isolated(cur.frozen_part(), field_, opt_);
    } else {
      auto kids = split_children(cur, *cert.edge);
      result = recurse(kids[0], cert.children[0]) + recurse(kids[1], cert.children[1]) -
               recurse(kids[2], cert.children[2]);
    }
    memo_.emplace(cur, result);
    return result;
  }

  const FiniteField& field_;
  CountOptions opt_;
  std::map<ExchangeMatrix, Integer> memo_;
};

inline Integer count_louise(const ExchangeMatrix& b, const LouiseCertificate& cert, const FiniteField& field,
                            const CountOptions& opt = {}) {
  return LouiseCounter(field, opt).count(b, cert);
}

/// Primes at or below max(2, largest invariant factor, largest |entry|) are
/// flagged as suspect for fitting.
inline Integer suspect_bound(const ExchangeMatrix& b) {
  Integer bound = 2;
  for (const auto& v : invariant_factors(b.mat())) bound = std::max(bound, v);
  return std::max(bound, b.mat().max_abs());
}

inline PointCountSample make_sample(const ExchangeMatrix& b, u64 q, const Integer& count) {
  u64 p;
  unsigned a;
  if (!prime_power(q, p, a)) throw InvalidInput(std::to_string(q) + " is not a prime power");
  return {q, count, Integer(static_cast<unsigned long>(p)) <= suspect_bound(b)};
}

}  // namespace clusterlab
