#pragma once

// Sparse multivariate Laurent polynomials over Z with exact division.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "clusterlab/errors.hpp"

namespace clusterlab {

using Exponent = std::vector<long>;

namespace detail {

inline long degree_of(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0L); }

// Graded lexicographic comparison: total degree first, then lexicographic.
struct GradedLex {
  bool operator()(const Exponent& a, const Exponent& b) const {
    long da = degree_of(a), db = degree_of(b);
    if (da != db) return da < db;
    return a < b;
  }
};

}  // namespace detail

/// Element of Z[x_1^{+-1}, ..., x_N^{+-1}].  Terms are kept in graded-lex
/// order with zero coefficients removed.
class LaurentPoly {
 public:
  using Terms = std::map<Exponent, mpz_class, detail::GradedLex>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {}

  static LaurentPoly constant(std::size_t nvars, const mpz_class& c) {
    LaurentPoly p(nvars);
    if (c != 0) p.terms_[Exponent(nvars, 0)] = c;
    return p;
  }

  static LaurentPoly variable(std::size_t nvars, std::size_t i) {
    Exponent e(nvars, 0);
    e.at(i) = 1;
    return monomial(e, 1);
  }

  static LaurentPoly monomial(const Exponent& e, const mpz_class& c = 1) {
    LaurentPoly p(e.size());
    if (c != 0) p.terms_[e] = c;
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_monomial() const { return terms_.size() == 1; }

  mpz_class coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? mpz_class(0) : it->second;
  }

  mpz_class constant_term() const { return coefficient(Exponent(nvars_, 0)); }

  void add_term(const Exponent& e, const mpz_class& c) {
    if (e.size() != nvars_) throw InvalidInput("exponent length mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly operator+(const LaurentPoly& o) const {
    check_vars(o);
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }

  LaurentPoly operator-(const LaurentPoly& o) const {
    check_vars(o);
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  LaurentPoly operator*(const LaurentPoly& o) const {
    check_vars(o);
    LaurentPoly r(nvars_);
    Exponent e(nvars_);
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : o.terms_) {
        for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  LaurentPoly pow(unsigned long k) const {
    LaurentPoly result = constant(nvars_, 1);
    LaurentPoly base = *this;
    while (k) {
      if (k & 1) result = result * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return result;
  }

  bool operator==(const LaurentPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  /// Componentwise minimum of exponents over all terms (zero polynomial: all zeros).
  Exponent min_exponents() const {
    Exponent lo(nvars_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) lo[i] = first ? e[i] : std::min(lo[i], e[i]);
      first = false;
    }
    return lo;
  }

  /// Multiply by x^shift.
  LaurentPoly shifted(const Exponent& shift) const {
    LaurentPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      for (std::size_t i = 0; i < nvars_; ++i) f[i] += shift[i];
      r.terms_.emplace(std::move(f), c);
    }
    return r;
  }

  /// Exponent vector of the monomial denominator in lowest terms: for each
  /// variable, max(0, -min exponent).
  Exponent denominator_exponents() const {
    Exponent d = min_exponents();
    for (auto& v : d) v = std::max(0L, -v);
    return d;
  }

  /// Polynomial numerator: this * x^{denominator_exponents()}.
  LaurentPoly numerator() const { return shifted(denominator_exponents()); }

  /// Substitute values[i] for x_i.  Negative powers are handled by exact division.
  LaurentPoly substitute(const std::vector<LaurentPoly>& values) const;

  std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      bool unit = true;
      for (long v : e) unit = unit && v == 0;
      mpz_class a = abs(c);
      os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
      first = false;
      bool wrote = false;
      if (a != 1 || unit) {
        os << a;
        wrote = true;
      }
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        if (wrote) os << "*";
        os << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
        if (e[i] != 1) os << "^" << e[i];
        wrote = true;
      }
    }
    return os.str();
  }

 private:
  void check_vars(const LaurentPoly& o) const {
    if (nvars_ != o.nvars_) throw InvalidInput("Laurent polynomials over different rings");
  }

  std::size_t nvars_ = 0;
  Terms terms_;
};

/// A cluster variable written as a Laurent polynomial in the initial cluster.
/// The numerator/denominator split of the defining data is derived on demand.
using LaurentFraction = LaurentPoly;

/// Exact quotient a / b in the Laurent ring; throws ExactDivisionFailure when
/// b does not divide a.
inline LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars() != b.nvars()) throw InvalidInput("Laurent polynomials over different rings");
  if (b.is_zero()) throw ExactDivisionFailure("division by zero Laurent polynomial");
  const std::size_t n = a.nvars();
  if (a.is_zero()) return LaurentPoly(n);

  // Bring both to polynomials with no monomial factor; the remaining
  // quotient is then a genuine polynomial if it exists at all.
  Exponent sa = a.min_exponents(), sb = b.min_exponents();
  for (auto& v : sa) v = -v;
  for (auto& v : sb) v = -v;
  LaurentPoly num = a.shifted(sa);
  LaurentPoly den = b.shifted(sb);

  const auto& lead = *den.terms().rbegin();
  LaurentPoly quot(n);
  Exponent qe(n);
  while (!num.is_zero()) {
    const auto& [re, rc] = *num.terms().rbegin();
    for (std::size_t i = 0; i < n; ++i) {
      qe[i] = re[i] - lead.first[i];
      if (qe[i] < 0) throw ExactDivisionFailure("leading monomial does not divide");
    }
    if (rc % lead.second != 0) throw ExactDivisionFailure("leading coefficient does not divide");
    mpz_class qc = rc / lead.second;
    quot.add_term(qe, qc);
    num = num - LaurentPoly::monomial(qe, qc) * den;
  }
  Exponent back(n);
  for (std::size_t i = 0; i < n; ++i) back[i] = sb[i] - sa[i];
  return quot.shifted(back);
}

inline LaurentPoly LaurentPoly::substitute(const std::vector<LaurentPoly>& values) const {
  if (values.size() != nvars_) throw InvalidInput("substitution arity mismatch");
  if (terms_.empty()) return LaurentPoly(values.empty() ? 0 : values[0].nvars());
  const std::size_t target = values.at(0).nvars();
  Exponent den = denominator_exponents();
  LaurentPoly top(target);
  for (const auto& [e, c] : terms_) {
    LaurentPoly t = constant(target, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      long k = e[i] + den[i];
      if (k > 0) t = t * values[i].pow(static_cast<unsigned long>(k));
    }
    top = top + t;
  }
  LaurentPoly bottom = constant(target, 1);
  for (std::size_t i = 0; i < nvars_; ++i)
    if (den[i] > 0) bottom = bottom * values[i].pow(static_cast<unsigned long>(den[i]));
  return exact_divide(top, bottom);
}

}  // namespace clusterlab
