#pragma once

// Residue-class polynomials fitted to point-count samples.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "clusterlab/errors.hpp"
#include "clusterlab/point_count.hpp"

namespace clusterlab {

/// For each residue class r mod N that occurred in the data, an integer
/// polynomial in q (constant term first).
struct QuasiPolynomial {
  u64 modulus = 1;
  std::map<u64, std::vector<Integer>> classes;

  std::optional<Integer> evaluate(u64 q) const {
    auto it = classes.find(q % modulus);
    if (it == classes.end()) return std::nullopt;
    Integer acc = 0;
    Integer Q = Integer(static_cast<unsigned long>(q));
    for (std::size_t i = it->second.size(); i-- > 0;) acc = acc * Q + it->second[i];
    return acc;
  }

  static std::string poly_string(const std::vector<Integer>& c) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] == 0) continue;
      Integer a = abs(c[i]);
      os << (c[i] < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
      first = false;
      if (a != 1 || i == 0) os << a;
      if (i > 0) os << (a != 1 ? "*" : "") << "q" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    if (first) os << "0";
    return os.str();
  }
};

namespace detail {

// Exact Lagrange interpolation through (x_i, y_i); nullopt if a coefficient
// is not an integer.
inline std::optional<std::vector<Integer>> interpolate_integer(const std::vector<PointCountSample>& pts) {
  const std::size_t k = pts.size();
  std::vector<Rational> coeffs(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Rational> basis{1};
    Rational denom = 1;
    Rational xi = Rational(Integer(static_cast<unsigned long>(pts[i].q)));
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      Rational xj = Rational(Integer(static_cast<unsigned long>(pts[j].q)));
      std::vector<Rational> next(basis.size() + 1, 0);
      for (std::size_t t = 0; t < basis.size(); ++t) {
        next[t + 1] += basis[t];
        next[t] -= basis[t] * xj;
      }
      basis = std::move(next);
      denom *= xi - xj;
    }
    Rational scale = Rational(pts[i].count) / denom;
    for (std::size_t t = 0; t < basis.size(); ++t) coeffs[t] += basis[t] * scale;
  }
  std::vector<Integer> out;
  for (auto& c : coeffs) {
    c.canonicalize();
    if (c.get_den() != 1) return std::nullopt;
    out.push_back(c.get_num());
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace detail

/// Smallest modulus N <= max_modulus for which every populated residue class
/// is fitted by an integer polynomial of degree <= max_degree interpolated on
/// max_degree+1 samples and validated on the rest.  Classes with fewer than
/// max_degree+2 samples make N ineligible.  Suspect samples are dropped
/// unless include_suspect is set.
inline QuasiPolynomial fit_quasi_polynomial(const std::vector<PointCountSample>& samples, u64 max_modulus,
                                            std::size_t max_degree, bool include_suspect = false) {
  std::vector<PointCountSample> use;
  std::map<u64, bool> seen;
  for (const auto& s : samples) {
    if (s.suspect && !include_suspect) continue;
    if (seen.count(s.q)) continue;
    seen[s.q] = true;
    use.push_back(s);
  }
  for (u64 N = 1; N <= max_modulus; ++N) {
    std::map<u64, std::vector<PointCountSample>> by_class;
    for (const auto& s : use) by_class[s.q % N].push_back(s);
    bool ok = !by_class.empty();
    QuasiPolynomial qp{N, {}};
    for (const auto& [r, pts] : by_class) {
      if (pts.size() < max_degree + 2) {
        ok = false;
        break;
      }
      std::vector<PointCountSample> head(pts.begin(), pts.begin() + static_cast<long>(max_degree + 1));
      auto poly = detail::interpolate_integer(head);
      if (!poly) {
        ok = false;
        break;
      }
      qp.classes[r] = *poly;
      for (const auto& s : pts)
        if (*qp.evaluate(s.q) != s.count) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    if (ok) return qp;
  }
  throw NoFit("no quasi-polynomial with modulus <= " + std::to_string(max_modulus) + " and degree <= " +
              std::to_string(max_degree) + " fits the samples");
}

}  // namespace clusterlab
