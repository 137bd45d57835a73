#pragma once

// Exact integer and rational linear algebra over GMP integers.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "clusterlab/errors.hpp"

namespace clusterlab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw InvalidInput("ragged matrix literal");
      for (long v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows,
                             std::size_t cols_if_empty = 0) {
    IntMatrix m(rows.size(), rows.empty() ? cols_if_empty : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw InvalidInput("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Integer& at(std::size_t i, std::size_t j) {
    check(i, j);
    return (*this)(i, j);
  }
  const Integer& at(std::size_t i, std::size_t j) const {
    check(i, j);
    return (*this)(i, j);
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  /// Lexicographic order on (shape, entries); used as a map key.
  bool operator<(const IntMatrix& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    return data_ < o.data_;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw InvalidInput("matrix product shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Integer& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  IntMatrix operator*(const Integer& s) const {
    IntMatrix r = *this;
    for (auto& v : r.data_) v *= s;
    return r;
  }

  IntMatrix operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInput("matrix sum shape mismatch");
    IntMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }

  IntMatrix operator-() const {
    IntMatrix r = *this;
    for (auto& v : r.data_) v = -v;
    return r;
  }

  /// Rows [r0, r1) and columns [c0, c1).
  IntMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    if (r0 > r1 || r1 > rows_ || c0 > c1 || c1 > cols_) throw OutOfRange("block out of range");
    IntMatrix b(r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) b(i - r0, j - c0) = (*this)(i, j);
    return b;
  }

  IntMatrix select_columns(const std::vector<std::size_t>& cols) const {
    IntMatrix b(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) b(i, j) = at(i, cols[j]);
    return b;
  }

  IntMatrix select_rows(const std::vector<std::size_t>& rows) const {
    IntMatrix b(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) b(i, j) = at(rows[i], j);
    return b;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += c * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& c) {
    if (c == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += c * (*this)(src, j);
  }
  /// col[dst] += c * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& c) {
    if (c == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += c * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
  }

  Integer max_abs() const {
    Integer best = 0;
    for (const auto& v : data_)
      if (abs(v) > best) best = abs(v);
    return best;
  }

  std::vector<long> row_as_long(std::size_t i) const {
    std::vector<long> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j).get_si();
    return r;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_)
      throw OutOfRange("matrix index (" + std::to_string(i) + "," + std::to_string(j) +
                       ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  return os << m.to_string();
}

/// input = u * d * v, with u, v unimodular and d diagonal with d_1 | d_2 | ...
/// The inverses of u and v are carried along since cover construction needs them.
struct SnfDecomposition {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  IntMatrix u_inv;
  IntMatrix v_inv;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
    return out;
  }
};

/// Finitely generated abelian group Z^free_rank + sum Z/torsion_i.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool operator==(const AbelianGroup& o) const = default;

  Integer torsion_order() const {
    Integer o = 1;
    for (const auto& t : torsion) o *= t;
    return o;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
      os << "Z^" << free_rank;
      first = false;
    }
    for (const auto& t : torsion) {
      os << (first ? "" : " + ") << "Z/" << t;
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }
};

namespace detail {

// Locate the nonzero entry of smallest absolute value in the trailing block.
inline std::optional<std::pair<std::size_t, std::size_t>> min_pivot(const IntMatrix& d,
                                                                   std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      const Integer& v = d(i, j);
      if (v == 0) continue;
      Integer a = abs(v);
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = a;
        if (best_abs == 1) return best;
      }
    }
  return best;
}

// Floor-style quotient so that remainders are reduced towards the pivot.
inline Integer fdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace detail

/// Smith normal form with transforms.  Pivoting uses the minimal nonzero
/// absolute value; the divisibility chain is enforced.
inline SnfDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  IntMatrix d = m;
  // Invariant: m == p_inv * d * q_inv, p * p_inv == I, q * q_inv == I.
  IntMatrix p = IntMatrix::identity(r);
  IntMatrix p_inv = IntMatrix::identity(r);
  IntMatrix q = IntMatrix::identity(c);
  IntMatrix q_inv = IntMatrix::identity(c);

  auto row_swap = [&](std::size_t a, std::size_t b) {
    d.swap_rows(a, b);
    p.swap_rows(a, b);
    p_inv.swap_cols(a, b);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    d.swap_cols(a, b);
    q.swap_cols(a, b);
    q_inv.swap_rows(a, b);
  };
  // row[dst] += k * row[src]
  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& k) {
    d.add_row(dst, src, k);
    p.add_row(dst, src, k);
    p_inv.add_col(src, dst, -k);
  };
  // col[dst] += k * col[src]
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& k) {
    d.add_col(dst, src, k);
    q.add_col(dst, src, k);
    q_inv.add_row(src, dst, -k);
  };
  auto row_neg = [&](std::size_t a) {
    d.negate_row(a);
    p.negate_row(a);
    p_inv.negate_col(a);
  };

  const std::size_t diag = std::min(r, c);
  for (std::size_t t = 0; t < diag; ++t) {
    auto piv = detail::min_pivot(d, t);
    if (!piv) break;
    row_swap(t, piv->first);
    col_swap(t, piv->second);
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (d(i, t) == 0) continue;
        row_add(i, t, -detail::fdiv(d(i, t), d(t, t)));
        if (d(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (d(t, j) == 0) continue;
        col_add(j, t, -detail::fdiv(d(t, j), d(t, t)));
        if (d(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // Bring the smallest leftover in row/column t to the pivot position.
        std::size_t bi = t, bj = t;
        Integer best = abs(d(t, t));
        for (std::size_t i = t + 1; i < r; ++i)
          if (d(i, t) != 0 && abs(d(i, t)) < best) best = abs(d(i, t)), bi = i, bj = t;
        for (std::size_t j = t + 1; j < c; ++j)
          if (d(t, j) != 0 && abs(d(t, j)) < best) best = abs(d(t, j)), bi = t, bj = j;
        row_swap(t, bi);
        col_swap(t, bj);
        continue;
      }
      // Row and column are clear; enforce divisibility on the trailing block.
      bool fixed = false;
      for (std::size_t i = t + 1; i < r && !fixed; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (d(i, j) % d(t, t) != 0) {
            row_add(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (d(t, t) < 0) row_neg(t);
  }
  return SnfDecomposition{p_inv, d, q_inv, p, q};
}

/// Nonzero diagonal entries of the Smith form, in divisibility order.
inline std::vector<Integer> invariant_factors(const IntMatrix& m) {
  std::vector<Integer> out;
  for (const auto& v : smith_normal_form(m).diagonal())
    if (v != 0) out.push_back(v);
  return out;
}

inline std::size_t rank(const IntMatrix& m) { return invariant_factors(m).size(); }

/// Z^rows / (column span of b).
inline AbelianGroup cokernel(const IntMatrix& b) {
  AbelianGroup g;
  auto inv = invariant_factors(b);
  g.free_rank = b.rows() - inv.size();
  for (const auto& v : inv)
    if (v > 1) g.torsion.push_back(v);
  return g;
}

/// (b Q^cols  intersect  Z^rows) / b Z^cols, the torsion of the cokernel.
inline AbelianGroup torsion_cokernel(const IntMatrix& b) {
  AbelianGroup g = cokernel(b);
  g.free_rank = 0;
  return g;
}

inline bool is_full_rank(const IntMatrix& b) { return rank(b) == b.cols(); }

/// Rows of b span Z^cols over Z.
inline bool is_really_full_rank(const IntMatrix& b) {
  auto inv = invariant_factors(b);
  if (inv.size() != b.cols()) return false;
  return std::all_of(inv.begin(), inv.end(), [](const Integer& v) { return v == 1; });
}

/// Bareiss fraction-free determinant.
inline Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && a(s, k) == 0) ++s;
      if (s == n) return 0;
      a.swap_rows(k, s);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  return abs(determinant(m)) == 1;
}

inline bool is_skew_symmetric(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (m(i, j) != -m(j, i)) return false;
  return true;
}

/// Sparse rational vector keyed by column index; zero entries are never stored.
using SparseRow = std::map<std::size_t, Rational>;

/// Incremental row-echelon reducer over Q.  Rows are reduced against the
/// pivots found so far, so rank and a reduced basis are available at any time.
class RationalEliminator {
 public:
  explicit RationalEliminator(std::size_t cols) : cols_(cols) {}

  /// Returns true when the row was independent of the rows added before it.
  bool add(SparseRow row) {
    reduce(row);
    if (row.empty()) return false;
    auto lead = row.begin()->first;
    Rational inv = 1 / row.begin()->second;
    for (auto& [_, v] : row) v *= inv;
    // Keep earlier pivots reduced with respect to the new one.
    for (auto& [col, prow] : pivots_) {
      auto it = prow.find(lead);
      if (it == prow.end()) continue;
      Rational f = it->second;
      axpy(prow, row, -f);
    }
    pivots_.emplace(lead, std::move(row));
    return true;
  }

  std::size_t rank() const { return pivots_.size(); }
  std::size_t cols() const { return cols_; }
  std::size_t nullity() const { return cols_ - pivots_.size(); }

  /// Basis of {x : row . x = 0 for every added row}, one vector per free column.
  std::vector<SparseRow> kernel_basis() const {
    std::vector<SparseRow> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (pivots_.count(free)) continue;
      SparseRow v;
      v[free] = 1;
      for (const auto& [col, prow] : pivots_) {
        auto it = prow.find(free);
        if (it != prow.end()) v[col] = -it->second;
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  static void axpy(SparseRow& target, const SparseRow& src, const Rational& f) {
    for (const auto& [c, v] : src) {
      auto [it, inserted] = target.try_emplace(c, 0);
      it->second += f * v;
      if (it->second == 0) target.erase(it);
    }
  }

  void reduce(SparseRow& row) const {
    for (auto it = row.begin(); it != row.end();) {
      auto p = pivots_.find(it->first);
      if (p == pivots_.end()) {
        ++it;
        continue;
      }
      Rational f = it->second;
      std::size_t col = it->first;
      axpy(row, p->second, -f);
      it = row.upper_bound(col);
    }
  }

  std::size_t cols_;
  std::map<std::size_t, SparseRow> pivots_;
};

/// Rank over Q of a dense integer matrix.
inline std::size_t rational_rank(const IntMatrix& m) {
  RationalEliminator e(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    SparseRow r;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) r[j] = Rational(m(i, j));
    e.add(std::move(r));
  }
  return e.rank();
}

}  // namespace clusterlab
