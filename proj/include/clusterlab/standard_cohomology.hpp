#pragma once

// Standard cohomology of cluster varieties: residue constraints on dlog
// forms, the closed-form Poincare series, the principal-coefficient basis,
// and Hodge tables with the curious Lefschetz symmetry check.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "clusterlab/cluster_core.hpp"
#include "clusterlab/errors.hpp"
#include "clusterlab/exactlinalg.hpp"

namespace clusterlab {

using Subset = std::vector<std::size_t>;

/// Element of the exterior algebra on theta_0 .. theta_{N-1}, keyed by
/// increasing index lists.  Homogeneous forms carry a single degree.
struct StandardForm {
  std::size_t nvars = 0;
  std::map<Subset, Rational> coeffs;

  bool is_zero() const { return coeffs.empty(); }

  void add(const Subset& s, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs.try_emplace(s, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs.erase(it);
    }
  }

  static StandardForm one(std::size_t nvars) {
    StandardForm f{nvars, {}};
    f.add({}, 1);
    return f;
  }

  static StandardForm theta(std::size_t nvars, std::size_t i) {
    StandardForm f{nvars, {}};
    f.add({i}, 1);
    return f;
  }

  StandardForm operator+(const StandardForm& o) const {
    StandardForm r = *this;
    for (const auto& [s, c] : o.coeffs) r.add(s, c);
    return r;
  }

  StandardForm operator*(const Rational& k) const {
    StandardForm r{nvars, {}};
    for (const auto& [s, c] : coeffs) r.add(s, c * k);
    return r;
  }
};

/// theta_a ^ theta_b for increasing lists a, b: sign is the parity of the
/// number of pairs (x in a, y in b) with x > y.  Returns 0 if they overlap.
inline int wedge_sign(const Subset& a, const Subset& b, Subset* merged = nullptr) {
  std::size_t inversions = 0;
  std::size_t i = 0, j = 0;
  Subset out;
  out.reserve(a.size() + b.size());
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j] < a[i]) {
      inversions += a.size() - i;
      out.push_back(b[j++]);
    } else {
      return 0;
    }
  }
  if (merged) *merged = std::move(out);
  return inversions % 2 ? -1 : 1;
}

inline StandardForm wedge(const StandardForm& x, const StandardForm& y) {
  StandardForm r{x.nvars, {}};
  Subset merged;
  for (const auto& [a, ca] : x.coeffs)
    for (const auto& [b, cb] : y.coeffs) {
      int s = wedge_sign(a, b, &merged);
      if (s != 0) r.add(merged, s * ca * cb);
    }
  return r;
}

/// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<Subset> k_subsets(std::size_t n, std::size_t k) {
  std::vector<Subset> out;
  if (k > n) return out;
  Subset s(k);
  std::iota(s.begin(), s.end(), 0);
  for (;;) {
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

/// alpha_r = sum_s B~_{s r} theta_s.
inline StandardForm residue_direction(const ExchangeMatrix& b, std::size_t r) {
  StandardForm a{b.size(), {}};
  for (std::size_t s = 0; s < b.size(); ++s)
    if (b.mat()(s, r) != 0) a.add({s}, Rational(b.mat()(s, r)));
  return a;
}

/// Write f = f1 + f2 ^ theta_r with theta_r absent from f1 and f2; return f2.
inline StandardForm residue_part(const StandardForm& f, std::size_t r) {
  StandardForm f2{f.nvars, {}};
  for (const auto& [s, c] : f.coeffs) {
    auto it = std::find(s.begin(), s.end(), r);
    if (it == s.end()) continue;
    std::size_t pos = static_cast<std::size_t>(it - s.begin());
    Subset rest = s;
    rest.erase(rest.begin() + static_cast<long>(pos));
    // Move theta_r from position pos to the end.
    int sign = (s.size() - 1 - pos) % 2 ? -1 : 1;
    f2.add(rest, sign * c);
  }
  return f2;
}

/// True iff f satisfies f2 ^ alpha_r = 0 for every mutable r.
inline bool satisfies_residue_constraints(const ExchangeMatrix& b, const StandardForm& f) {
  for (std::size_t r = 0; r < b.n(); ++r)
    if (!wedge(residue_part(f, r), residue_direction(b, r)).is_zero()) return false;
  return true;
}

struct StandardDegree {
  std::size_t degree = 0;
  std::size_t dimension = 0;
  std::vector<StandardForm> basis;  // filled only on request
};

inline constexpr std::size_t kDefaultDimensionCap = 16;

/// Dimension of the space of standard k-forms satisfying the residue
/// constraints, for k = 0..n+m.
inline std::vector<StandardDegree> standard_dims(const ExchangeMatrix& b, bool with_basis = false,
                                                 std::size_t cap = kDefaultDimensionCap) {
  const std::size_t N = b.size();
  if (N > cap)
    throw DimensionCap("n+m = " + std::to_string(N) + " exceeds the dimension cap " +
                       std::to_string(cap));
  std::vector<StandardDegree> out;
  for (std::size_t k = 0; k <= N; ++k) {
    auto basis = k_subsets(N, k);
    RationalEliminator elim(basis.size());
    Subset merged;
    for (std::size_t r = 0; r < b.n(); ++r) {
      // One equation per k-subset J produced by theta_{I\r} ^ theta_s.
      std::map<Subset, SparseRow> equations;
      for (std::size_t col = 0; col < basis.size(); ++col) {
        const Subset& s = basis[col];
        auto it = std::find(s.begin(), s.end(), r);
        if (it == s.end()) continue;
        std::size_t pos = static_cast<std::size_t>(it - s.begin());
        Subset rest = s;
        rest.erase(rest.begin() + static_cast<long>(pos));
        int sign = (k - 1 - pos) % 2 ? -1 : 1;
        for (std::size_t t = 0; t < N; ++t) {
          const Integer& e = b.mat()(t, r);
          if (e == 0) continue;
          int ws = wedge_sign(rest, {t}, &merged);
          if (ws == 0) continue;
          auto& row = equations[merged];
          auto [slot, inserted] = row.try_emplace(col, 0);
          slot->second += sign * ws * Rational(e);
          if (slot->second == 0) row.erase(slot);
        }
      }
      for (auto& [_, row] : equations)
        if (!row.empty()) elim.add(std::move(row));
    }
    StandardDegree deg{k, elim.nullity(), {}};
    if (with_basis) {
      for (const auto& v : elim.kernel_basis()) {
        StandardForm f{N, {}};
        for (const auto& [col, c] : v) f.add(basis[col], c);
        deg.basis.push_back(std::move(f));
      }
    }
    out.push_back(std::move(deg));
  }
  return out;
}

inline std::vector<std::size_t> standard_dim_vector(const ExchangeMatrix& b,
                                                    std::size_t cap = kDefaultDimensionCap) {
  std::vector<std::size_t> v;
  for (const auto& d : standard_dims(b, false, cap)) v.push_back(d.dimension);
  return v;
}

/// Polynomial in t with integer coefficients, lowest degree first.
struct PoincareSeries {
  std::vector<Integer> coeffs;

  bool operator==(const PoincareSeries& o) const = default;

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0) continue;
      os << (first ? "" : " + ");
      first = false;
      if (coeffs[i] != 1 || i == 0) os << coeffs[i];
      if (i > 0) os << (coeffs[i] != 1 ? "*" : "") << "t" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    if (first) os << "0";
    return os.str();
  }
};

namespace detail {

inline std::vector<Integer> poly_mul(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Integer> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Exact division by (1 + t).
inline std::vector<Integer> divide_one_plus_t(const std::vector<Integer>& a) {
  if (a.size() < 2) throw ExactDivisionFailure("(1+t) does not divide the product");
  std::vector<Integer> q(a.size() - 1);
  Integer carry = 0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    q[i] = a[i] - carry;
    carry = q[i];
  }
  if (a.back() != carry) throw ExactDivisionFailure("(1+t) does not divide the product");
  return q;
}

inline void trim(std::vector<Integer>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

}  // namespace detail

/// Connected components of the undirected graph underlying the quiver.
inline std::vector<std::vector<std::size_t>> quiver_components(const ExchangeMatrix& b) {
  const std::size_t n = b.n();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (b.mat()(i, j) != 0) parent[find(i)] = find(j);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [_, g] : groups) out.push_back(std::move(g));
  std::sort(out.begin(), out.end());
  return out;
}

/// (1+t)^{m-r} prod_i (1 + t + ... + t^{n_i+1}) over the r components of the quiver.
inline PoincareSeries poincare_closed(const ExchangeMatrix& b) {
  if (!is_full_rank(b.mat())) throw NotFullRank("exchange matrix is not of full rank");
  auto comps = quiver_components(b);
  std::vector<Integer> p{1};
  for (const auto& c : comps) p = detail::poly_mul(p, std::vector<Integer>(c.size() + 2, 1));
  long shift = static_cast<long>(b.m()) - static_cast<long>(comps.size());
  for (long i = 0; i < shift; ++i) p = detail::poly_mul(p, {1, 1});
  for (long i = 0; i < -shift; ++i) p = detail::divide_one_plus_t(p);
  detail::trim(p);
  return {p};
}

/// Forms gamma^j ^ eta_I (j + |I| <= n) for principal coefficients
/// (B; Id), grouped by degree 2j + |I|.  Variables: theta_0..theta_{n-1}
/// for the mutable directions, eta_i = theta_{n+i} for the frozen ones.
/// gamma = sum_{i,j} B_ij theta_i ^ theta_j + 2 sum_i eta_i ^ theta_i.
/// The closed form as a product, e.g. "(1+t)(1+t+t^2+t^3+t^4+t^5)".
inline std::string poincare_factored(const ExchangeMatrix& b) {
  auto comps = quiver_components(b);
  std::map<std::size_t, long> sizes;
  for (const auto& c : comps) ++sizes[c.size()];
  auto geometric = [](std::size_t top) {
    std::string s = "(1";
    for (std::size_t i = 1; i <= top; ++i) s += "+t" + (i > 1 ? "^" + std::to_string(i) : std::string());
    return s + ")";
  };
  auto power = [](const std::string& f, long e) { return e == 1 ? f : f + "^" + std::to_string(e); };
  long shift = static_cast<long>(b.m()) - static_cast<long>(comps.size());
  std::string s = shift > 0 ? power("(1+t)", shift) : "";
  for (const auto& [size, mult] : sizes) s += power(geometric(size + 1), mult);
  if (s.empty()) s = "1";
  if (shift < 0) s += "/" + power("(1+t)", -shift);
  return s;
}

inline std::vector<std::vector<StandardForm>> principal_standard_basis(const IntMatrix& b) {
  const std::size_t n = b.rows();
  if (b.cols() != n || !is_skew_symmetric(b)) throw InvalidInput("principal part must be square skew-symmetric");
  ExchangeMatrix bt = ExchangeMatrix::principal(b);
  if (n > 0 && quiver_components(bt).size() != 1) throw NotConnected("quiver is not connected");
  const std::size_t N = 2 * n;
  StandardForm gamma{N, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (b(i, j) != 0) gamma = gamma + wedge(StandardForm::theta(N, i), StandardForm::theta(N, j)) * Rational(b(i, j));
  for (std::size_t i = 0; i < n; ++i)
    gamma = gamma + wedge(StandardForm::theta(N, n + i), StandardForm::theta(N, i)) * Rational(2);

  std::vector<StandardForm> gamma_pow{StandardForm::one(N)};
  for (std::size_t j = 1; j <= n; ++j) gamma_pow.push_back(wedge(gamma_pow.back(), gamma));

  std::vector<std::vector<StandardForm>> out(N + 1);
  for (std::size_t size = 0; size <= n; ++size)
    for (const auto& sub : k_subsets(n, size)) {
      StandardForm eta = StandardForm::one(N);
      for (std::size_t i : sub) eta = wedge(eta, StandardForm::theta(N, n + i));
      for (std::size_t j = 0; j + size <= n; ++j) out[2 * j + size].push_back(wedge(gamma_pow[j], eta));
    }
  return out;
}

/// Dimensions h^{k,(p,p)} of a mixed Tate cohomology ring.
struct HodgeTable {
  std::size_t n = 0;
  std::size_t m = 0;
  std::map<std::pair<long, long>, Integer> entries;  // (k, p) -> h, zeros omitted

  Integer at(long k, long p) const {
    auto it = entries.find({k, p});
    return it == entries.end() ? Integer(0) : it->second;
  }

  void add(long k, long p, const Integer& h) {
    if (h == 0) return;
    auto& slot = entries[{k, p}];
    slot += h;
    if (slot == 0) entries.erase({k, p});
  }

  long dimension() const { return static_cast<long>(n + m); }

  /// Row k - p = 0.
  std::vector<Integer> top_row() const {
    std::vector<Integer> row(n + m + 1);
    for (long k = 0; k <= dimension(); ++k) row[k] = at(k, k);
    return row;
  }

  std::vector<Integer> betti() const {
    std::vector<Integer> b(n + m + 1);
    for (const auto& [kp, h] : entries)
      if (kp.first >= 0 && kp.first <= dimension()) b[kp.first] += h;
    return b;
  }

  bool operator==(const HodgeTable& o) const = default;

  /// Layout: columns H^0..H^{n+m}, rows indexed by k - p.
  std::string render() const {
    long e = dimension();
    long max_row = 0;
    for (const auto& [kp, h] : entries) max_row = std::max(max_row, kp.first - kp.second);
    std::ostringstream os;
    os << std::setw(6) << "k-p";
    for (long k = 0; k <= e; ++k) os << std::setw(6) << ("H" + std::to_string(k));
    os << "\n";
    for (long row = 0; row <= max_row; ++row) {
      os << std::setw(6) << row;
      for (long k = 0; k <= e; ++k) {
        long p = k - row;
        if (2 * p < k) {
          os << std::setw(6) << "";
          continue;
        }
        os << std::setw(6) << at(k, p).get_str();
      }
      os << "\n";
    }
    return os.str();
  }
};

inline HodgeTable standard_table(const ExchangeMatrix& b, const std::vector<std::size_t>& dims) {
  HodgeTable t{b.n(), b.m(), {}};
  for (std::size_t k = 0; k < dims.size(); ++k) t.add(static_cast<long>(k), static_cast<long>(k), dims[k]);
  return t;
}

/// h[(p+s, p)] == h[(e-p+s, e-p)] for all p, s with e = n+m.
inline bool curious_palindrome(const HodgeTable& t) {
  const long e = t.dimension();
  for (const auto& [kp, h] : t.entries) {
    long s = kp.first - kp.second;
    long p = kp.second;
    if (t.at(e - p + s, e - p) != h) return false;
  }
  return true;
}

}  // namespace clusterlab
