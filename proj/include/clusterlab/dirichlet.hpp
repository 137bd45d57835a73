#pragma once

// Dirichlet characters with exact cyclotomic values.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "clusterlab/errors.hpp"
#include "clusterlab/finite_field.hpp"

namespace clusterlab {

inline long euler_phi(long n) {
  long r = n;
  for (auto p : prime_factors(static_cast<u64>(n))) r -= r / static_cast<long>(p);
  return r;
}

inline std::vector<long> divisors(long n) {
  std::vector<long> out;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

/// Character of (Z/n)^x extended by zero.  value_exp[a] = e means
/// chi(a) = zeta_order^e; -1 marks non-units.
struct DirichletCharacter {
  long modulus = 1;
  long order = 1;  // values are order-th roots of unity
  std::vector<long> value_exp;
  std::vector<long> index;  // coordinates in the generator decomposition

  long exp_at(long a) const {
    long r = a % modulus;
    if (r < 0) r += modulus;
    return value_exp[static_cast<std::size_t>(r)];
  }

  bool is_trivial() const {
    for (long v : value_exp)
      if (v > 0) return false;
    return true;
  }

  /// Multiplicative order of the character itself.
  long character_order() const {
    long g = order;
    for (long v : value_exp)
      if (v >= 0) g = std::gcd(g, v);
    return order / g;
  }

  std::string label() const {
    std::string s = "chi_" + std::to_string(modulus) + "[";
    for (std::size_t i = 0; i < index.size(); ++i) s += (i ? "," : "") + std::to_string(index[i]);
    return s + "]";
  }
};

/// Sum of roots of unity: counts[e] copies of zeta_L^e.
class CyclotomicSum {
 public:
  explicit CyclotomicSum(long order) : order_(order), counts_(static_cast<std::size_t>(order), 0) {}

  void add_root(long e, long mult = 1) {
    e %= order_;
    if (e < 0) e += order_;
    counts_[static_cast<std::size_t>(e)] += mult;
  }

  void add_integer(long c) { counts_[0] += c; }

  long order() const { return order_; }

  /// The exact value, which must be a rational integer.
  mpz_class to_integer() const {
    auto red = reduce();
    for (std::size_t i = 1; i < red.size(); ++i)
      if (red[i] != 0) throw NonIntegerSum("cyclotomic sum is not an integer");
    return red.empty() ? mpz_class(0) : red[0];
  }

  /// Coefficients modulo the cyclotomic polynomial Phi_order.
  std::vector<mpz_class> reduce() const {
    auto phi = cyclotomic_polynomial(order_);
    std::vector<mpz_class> a(counts_.begin(), counts_.end());
    const std::size_t deg = phi.size() - 1;
    for (std::size_t d = a.size(); d-- > deg;) {
      mpz_class lead = a[d];
      if (lead == 0) continue;
      for (std::size_t i = 0; i <= deg; ++i) a[d - deg + i] -= lead * phi[i];
    }
    a.resize(deg);
    return a;
  }

  /// Integer coefficients of Phi_n, constant term first.
  static std::vector<mpz_class> cyclotomic_polynomial(long n) {
    // t^n - 1 divided by Phi_d for every proper divisor d.
    std::vector<mpz_class> p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (long d : divisors(n)) {
      if (d == n) continue;
      p = divide_monic(p, cyclotomic_polynomial(d));
    }
    return p;
  }

 private:
  static std::vector<mpz_class> divide_monic(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
    const std::size_t db = b.size() - 1;
    std::vector<mpz_class> q(a.size() - db, 0);
    for (std::size_t d = a.size(); d-- > db;) {
      mpz_class lead = a[d];
      q[d - db] = lead;
      for (std::size_t i = 0; i <= db; ++i) a[d - db + i] -= lead * b[i];
    }
    return q;
  }

  long order_;
  std::vector<long> counts_;
};

namespace detail {

// Cyclic factor of (Z/n)^x: generator g of order ord inside Z/pk.
struct UnitFactor {
  long pk;
  long g;
  long ord;
};

inline long powmod(long b, long e, long m) {
  long r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

inline long primitive_root_mod(long pk, long phi) {
  auto f = prime_factors(static_cast<u64>(phi));
  for (long g = 2; g < pk; ++g) {
    if (std::gcd(g, pk) != 1) continue;
    bool ok = true;
    for (auto l : f)
      if (powmod(g, phi / static_cast<long>(l), pk) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return 1;
}

inline std::vector<UnitFactor> unit_group_factors(long n) {
  std::vector<UnitFactor> out;
  for (auto up : prime_factors(static_cast<u64>(n))) {
    long p = static_cast<long>(up);
    long pk = 1;
    long k = 0;
    while (n % (pk * p) == 0) {
      pk *= p;
      ++k;
    }
    if (p != 2) {
      long phi = pk / p * (p - 1);
      out.push_back({pk, primitive_root_mod(pk, phi), phi});
    } else if (k == 2) {
      out.push_back({4, 3, 2});
    } else if (k >= 3) {
      out.push_back({pk, pk - 1, 2});
      out.push_back({pk, 5, pk / 4});
    }
  }
  return out;
}

}  // namespace detail

/// Check the four defining axioms; throws on failure.
inline void check_character_axioms(const DirichletCharacter& chi) {
  const long n = chi.modulus;
  for (long a = 0; a < n; ++a) {
    bool unit = std::gcd(a, n) == 1;
    if ((chi.value_exp[static_cast<std::size_t>(a)] >= 0) != unit)
      throw PreconditionViolated("character support is not the unit group");
  }
  if (chi.exp_at(1) != 0) throw PreconditionViolated("character is not 1 at 1");
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      long ea = chi.exp_at(a), eb = chi.exp_at(b), eab = chi.exp_at(a * b);
      if (ea < 0 || eb < 0) {
        if (eab >= 0) throw PreconditionViolated("character is not multiplicative");
        continue;
      }
      if ((ea + eb) % chi.order != eab) throw PreconditionViolated("character is not multiplicative");
    }
  if (chi.exp_at(n + 1) != chi.exp_at(1)) throw PreconditionViolated("character is not periodic");
}

/// All phi(n) characters of modulus n; the first one is trivial.
inline std::vector<DirichletCharacter> dirichlet_group(long n) {
  if (n < 1) throw PreconditionViolated("modulus must be positive");
  auto factors = detail::unit_group_factors(n);
  long order = 1;
  for (const auto& f : factors) order = std::lcm(order, f.ord);

  // Discrete log coordinates of every unit.
  std::vector<std::vector<long>> coords(static_cast<std::size_t>(n));
  for (std::size_t fi = 0; fi < factors.size(); ++fi) {
    const auto& f = factors[fi];
    std::map<long, long> dlog;
    bool two_power_pair = f.pk % 2 == 0 && f.pk >= 8;
    long x = 1;
    for (long e = 0; e < f.ord; ++e) {
      dlog[x] = e;
      x = x * f.g % f.pk;
    }
    for (long a = 0; a < n; ++a) {
      if (std::gcd(a, n) != 1) continue;
      long r = a % f.pk;
      long v = 0;
      if (two_power_pair && f.g == f.pk - 1) {
        v = (r % 4 == 3) ? 1 : 0;  // sign component
      } else if (two_power_pair) {
        if (r % 4 == 3) r = (f.pk - r) % f.pk;  // strip the sign
        v = dlog.at(r);
      } else {
        v = dlog.at(r);
      }
      coords[static_cast<std::size_t>(a)].push_back(v);
    }
  }

  std::vector<DirichletCharacter> out;
  std::vector<long> idx(factors.size(), 0);
  for (;;) {
    DirichletCharacter chi{n, order, std::vector<long>(static_cast<std::size_t>(n), -1), idx};
    for (long a = 0; a < n; ++a) {
      if (std::gcd(a, n) != 1) continue;
      long e = 0;
      for (std::size_t fi = 0; fi < factors.size(); ++fi)
        e += idx[fi] * coords[static_cast<std::size_t>(a)][fi] * (order / factors[fi].ord);
      chi.value_exp[static_cast<std::size_t>(a)] = e % order;
    }
    check_character_axioms(chi);
    out.push_back(std::move(chi));
    std::size_t pos = 0;
    while (pos < factors.size() && ++idx[pos] == factors[pos].ord) idx[pos++] = 0;
    if (pos == factors.size()) break;
  }
  return out;
}

/// Multiset union of Dir(d) over d | n.
inline std::vector<DirichletCharacter> dir_star(long n) {
  std::vector<DirichletCharacter> out;
  for (long d : divisors(n))
    for (auto& chi : dirichlet_group(d)) out.push_back(std::move(chi));
  return out;
}

/// Union of Dir(c) over c | 2d with c not dividing d, minus the trivial
/// character of modulus 2d.
inline std::vector<DirichletCharacter> x_multiset(long d) {
  if (d < 1) throw PreconditionViolated("d must be positive");
  std::vector<DirichletCharacter> out;
  bool removed = false;
  for (long c : divisors(2 * d)) {
    if (d % c == 0) continue;
    for (auto& chi : dirichlet_group(c)) {
      if (!removed && c == 2 * d && chi.is_trivial()) {
        removed = true;
        continue;
      }
      out.push_back(std::move(chi));
    }
  }
  return out;
}

/// Exact value of sum_chi chi(q)^power over the given characters.
inline mpz_class character_power_sum(const std::vector<DirichletCharacter>& chars, long q, long power = 1) {
  std::map<long, CyclotomicSum> by_order;
  for (const auto& chi : chars) {
    long e = chi.exp_at(q);
    if (e < 0) continue;
    auto it = by_order.try_emplace(chi.order, chi.order).first;
    it->second.add_root(e * power);
  }
  mpz_class total = 0;
  for (const auto& [_, s] : by_order) total += s.to_integer();
  return total;
}

/// sum over Dir*(n) of chi(q).
inline mpz_class char_sum_star(long n, long q) { return character_power_sum(dir_star(n), q); }

/// Frobenius eigenvalue chi(p) * p^s on H^k.
struct Eigenvalue {
  int degree = 0;
  int p_power = 0;
  std::optional<DirichletCharacter> character;  // empty means trivial

  std::string describe() const {
    std::string s = character ? character->label() + "(p)" : "";
    std::string pp = p_power == 0 ? "1" : (p_power == 1 ? "p" : "p^" + std::to_string(p_power));
    return s.empty() ? pp : s + "*" + pp;
  }
};

/// Eigenvalues of Frobenius on H^*(xx' = y^d + 1) over F_p.
inline std::vector<Eigenvalue> frobenius_rank1(long d, long p) {
  if (d < 1) throw PreconditionViolated("d must be positive");
  if (!is_prime(static_cast<u64>(p))) throw PreconditionViolated("p must be prime");
  if (d != 1 && (p == 2 || d % p == 0)) throw PreconditionViolated("p must be odd and prime to d");
  std::vector<Eigenvalue> out{{0, 0, std::nullopt}, {1, 1, std::nullopt}, {2, 2, std::nullopt}};
  for (auto& chi : x_multiset(d)) out.push_back({2, 1, std::move(chi)});
  return out;
}

/// p^{2a} - p^a + 1 + p^a * sum_{chi in X(d)} chi(p)^a.
inline mpz_class frobenius_trace_count(long d, long p, long a) {
  mpz_class pa;
  mpz_ui_pow_ui(pa.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(a));
  mpz_class s = character_power_sum(x_multiset(d), p, a);
  return pa * pa - pa + 1 + pa * s;
}

}  // namespace clusterlab
