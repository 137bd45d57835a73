#pragma once

// Finite fields F_{p^a} with elements coded as integers in base p.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "clusterlab/errors.hpp"

namespace clusterlab {

using u64 = std::uint64_t;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Distinct prime factors in increasing order.
inline std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

/// If q = p^a for a prime p, returns true and sets p, a.
inline bool prime_power(u64 q, u64& p, unsigned& a) {
  if (q < 2) return false;
  auto f = prime_factors(q);
  if (f.size() != 1) return false;
  p = f[0];
  a = 0;
  while (q > 1) {
    q /= p;
    ++a;
  }
  return true;
}

inline constexpr unsigned kMaxExtensionDegree = 4;

class FiniteField {
 public:
  using Elem = u64;

  FiniteField(u64 p, unsigned a, unsigned max_degree = kMaxExtensionDegree) : p_(p), a_(a) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    if (a < 1) throw PreconditionViolated("extension degree must be at least 1");
    if (a > max_degree) throw PreconditionViolated("extension degree above the configured cap");
    q_ = 1;
    for (unsigned i = 0; i < a; ++i) q_ *= p;
    modulus_ = least_irreducible();
  }

  u64 characteristic() const { return p_; }
  unsigned degree() const { return a_; }
  u64 order() const { return q_; }
  /// Coefficients of the monic modulus, constant term first (length a+1).
  const std::vector<u64>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  std::vector<u64> coeffs(Elem x) const {
    std::vector<u64> c(a_);
    for (unsigned i = 0; i < a_; ++i) {
      c[i] = x % p_;
      x /= p_;
    }
    return c;
  }

  Elem from_coeffs(const std::vector<u64>& c) const {
    Elem x = 0;
    for (std::size_t i = c.size(); i-- > 0;) x = x * p_ + c[i] % p_;
    return x;
  }

  Elem add(Elem x, Elem y) const {
    if (a_ == 1) return (x + y) % p_;
    auto cx = coeffs(x), cy = coeffs(y);
    for (unsigned i = 0; i < a_; ++i) cx[i] = (cx[i] + cy[i]) % p_;
    return from_coeffs(cx);
  }

  Elem neg(Elem x) const {
    auto c = coeffs(x);
    for (auto& v : c) v = (p_ - v) % p_;
    return from_coeffs(c);
  }

  Elem sub(Elem x, Elem y) const { return add(x, neg(y)); }

  Elem mul(Elem x, Elem y) const {
    if (a_ == 1) return static_cast<Elem>((static_cast<unsigned __int128>(x) * y) % p_);
    auto cx = coeffs(x), cy = coeffs(y);
    std::vector<u64> prod(2 * a_ - 1, 0);
    for (unsigned i = 0; i < a_; ++i)
      for (unsigned j = 0; j < a_; ++j) prod[i + j] = (prod[i + j] + cx[i] * cy[j]) % p_;
    reduce(prod);
    prod.resize(a_);
    return from_coeffs(prod);
  }

  Elem pow(Elem x, u64 e) const {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }

  Elem inv(Elem x) const {
    if (x == 0) throw PreconditionViolated("inverse of zero");
    return pow(x, q_ - 2);
  }

  /// Smallest code generating the multiplicative group.
  Elem primitive_element() const {
    auto f = prime_factors(q_ - 1);
    for (Elem g = 1; g < q_; ++g) {
      bool ok = true;
      for (u64 l : f)
        if (pow(g, (q_ - 1) / l) == 1) {
          ok = false;
          break;
        }
      if (ok) return g;
    }
    throw PreconditionViolated("no primitive element found");
  }

  /// exp[t] = g^t for t in [0, q-1).
  std::vector<Elem> exp_table() const {
    Elem g = primitive_element();
    std::vector<Elem> t(q_ - 1);
    Elem x = 1;
    for (u64 i = 0; i + 1 < q_; ++i) {
      t[i] = x;
      x = mul(x, g);
    }
    return t;
  }

 private:
  // Reduce a coefficient vector modulo the monic modulus in place.
  void reduce(std::vector<u64>& c) const {
    const auto& f = modulus_;
    for (std::size_t d = c.size(); d-- > a_;) {
      u64 lead = c[d];
      if (lead == 0) continue;
      for (unsigned i = 0; i <= a_; ++i) {
        std::size_t k = d - a_ + i;
        c[k] = (c[k] + (p_ - lead) * f[i]) % p_;
      }
    }
  }

  // Monic polynomials of degree a ordered by their lower coefficients read
  // as base-p numbers; the first without a factor of degree <= a/2 is used.
  std::vector<u64> least_irreducible() {
    if (a_ == 1) return {0, 1};
    u64 count = q_;
    for (u64 code = 0; code < count; ++code) {
      std::vector<u64> f(a_ + 1);
      u64 x = code;
      for (unsigned i = 0; i < a_; ++i) {
        f[i] = x % p_;
        x /= p_;
      }
      f[a_] = 1;
      if (irreducible(f)) return f;
    }
    throw PreconditionViolated("no irreducible polynomial found");
  }

  static std::vector<u64> poly_mod(std::vector<u64> a, const std::vector<u64>& b, u64 p) {
    // b monic
    while (a.size() >= b.size()) {
      u64 lead = a.back();
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
      a.pop_back();
      while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
  }

  bool irreducible(const std::vector<u64>& f) const {
    // Trial division by every monic polynomial of degree 1..a/2.
    for (unsigned deg = 1; 2 * deg <= a_; ++deg) {
      u64 count = 1;
      for (unsigned i = 0; i < deg; ++i) count *= p_;
      for (u64 code = 0; code < count; ++code) {
        std::vector<u64> g(deg + 1);
        u64 x = code;
        for (unsigned i = 0; i < deg; ++i) {
          g[i] = x % p_;
          x /= p_;
        }
        g[deg] = 1;
        if (poly_mod(f, g, p_).empty()) return false;
      }
    }
    return true;
  }

  u64 p_;
  unsigned a_;
  u64 q_;
  std::vector<u64> modulus_;
};

inline FiniteField make_field(u64 p, unsigned a, unsigned max_degree = kMaxExtensionDegree) {
  return FiniteField(p, a, max_degree);
}

/// Field of order q (a prime power).
inline FiniteField field_of_order(u64 q, unsigned max_degree = kMaxExtensionDegree) {
  u64 p;
  unsigned a;
  if (!prime_power(q, p, a)) throw InvalidInput(std::to_string(q) + " is not a prime power");
  return FiniteField(p, a, max_degree);
}

}  // namespace clusterlab
