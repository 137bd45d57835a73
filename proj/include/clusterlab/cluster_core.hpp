#pragma once

// Extended exchange matrices, mutation of matrices and seeds, freezing, quivers.

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "clusterlab/errors.hpp"
#include "clusterlab/exactlinalg.hpp"
#include "clusterlab/laurent.hpp"

namespace clusterlab {

inline Integer pos_part(const Integer& x) { return x > 0 ? x : Integer(0); }
inline Integer neg_part(const Integer& x) { return x < 0 ? x : Integer(0); }

/// (n+m) x n integer matrix whose top n x n block is skew-symmetric.
/// Mutable rows come first, frozen rows below.  Indices are 0-based.
class ExchangeMatrix {
 public:
  ExchangeMatrix() = default;

  ExchangeMatrix(std::size_t n, std::size_t m, IntMatrix mat) : n_(n), m_(m), mat_(std::move(mat)) {
    if (mat_.rows() != n + m || mat_.cols() != n)
      throw InvalidInput("exchange matrix must be (n+m) x n, got " + std::to_string(mat_.rows()) +
                         "x" + std::to_string(mat_.cols()));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j)
        if (mat_(i, j) != -mat_(j, i)) throw InvalidInput("principal part is not skew-symmetric");
  }

  /// Build from a square skew-symmetric principal part and frozen rows.
  static ExchangeMatrix from_blocks(const IntMatrix& b, const IntMatrix& c) {
    if (b.rows() != b.cols() || (c.rows() > 0 && c.cols() != b.cols()))
      throw InvalidInput("block shapes do not match");
    IntMatrix full(b.rows() + c.rows(), b.cols());
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) full(i, j) = b(i, j);
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) full(b.rows() + i, j) = c(i, j);
    return ExchangeMatrix(b.rows(), c.rows(), std::move(full));
  }

  /// Principal coefficients: (B; Id_n).
  static ExchangeMatrix principal(const IntMatrix& b) {
    return from_blocks(b, IntMatrix::identity(b.rows()));
  }

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  std::size_t size() const { return n_ + m_; }
  const IntMatrix& mat() const { return mat_; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return mat_.at(i, j); }

  IntMatrix principal_part() const { return mat_.block(0, n_, 0, n_); }
  IntMatrix frozen_part() const { return mat_.block(n_, n_ + m_, 0, n_); }

  bool operator==(const ExchangeMatrix& o) const = default;
  bool operator<(const ExchangeMatrix& o) const {
    return std::tie(n_, m_, mat_) < std::tie(o.n_, o.m_, o.mat_);
  }

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  IntMatrix mat_;
};

/// Matrix mutation in direction k (0-based).
inline ExchangeMatrix mutate_matrix(const ExchangeMatrix& b, std::size_t k) {
  if (k >= b.n()) throw OutOfRange("mutation index " + std::to_string(k + 1) + " not mutable");
  const IntMatrix& a = b.mat();
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i == k || j == k) {
        out(i, j) = -a(i, j);
      } else {
        out(i, j) = a(i, j) + pos_part(a(i, k)) * pos_part(a(k, j)) -
                    neg_part(a(i, k)) * neg_part(a(k, j));
      }
    }
  return ExchangeMatrix(b.n(), b.m(), std::move(out));
}

inline ExchangeMatrix mutate_path(ExchangeMatrix b, const std::vector<std::size_t>& path) {
  for (std::size_t k : path) b = mutate_matrix(b, k);
  return b;
}

/// Result of freezing: the matrix plus, for each new row, its original row index.
struct Frozen {
  ExchangeMatrix matrix;
  std::vector<std::size_t> labels;
};

/// Keep the columns indexed by s as mutable.  Rows are reordered as
/// s (increasing), then the remaining former mutables, then the old frozen rows.
inline Frozen freeze(const ExchangeMatrix& b, const std::vector<std::size_t>& s) {
  std::vector<std::size_t> keep = s;
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (std::size_t k : keep)
    if (k >= b.n()) throw OutOfRange("freeze index " + std::to_string(k + 1) + " not mutable");
  std::vector<std::size_t> rows = keep;
  for (std::size_t i = 0; i < b.n(); ++i)
    if (!std::binary_search(keep.begin(), keep.end(), i)) rows.push_back(i);
  for (std::size_t i = b.n(); i < b.size(); ++i) rows.push_back(i);
  IntMatrix out(rows.size(), keep.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < keep.size(); ++c) out(r, c) = b.mat()(rows[r], keep[c]);
  return Frozen{ExchangeMatrix(keep.size(), b.size() - keep.size(), std::move(out)), rows};
}

/// Freeze the complement of the given mutable indices.
inline Frozen freeze_out(const ExchangeMatrix& b, const std::vector<std::size_t>& removed) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < b.n(); ++i)
    if (std::find(removed.begin(), removed.end(), i) == removed.end()) keep.push_back(i);
  return freeze(b, keep);
}

/// Directed graph on mutable indices, edge i -> j with weight B_ij when B_ij > 0.
struct Quiver {
  struct Edge {
    std::size_t from;
    std::size_t to;
    Integer weight;
    bool operator==(const Edge&) const = default;
  };

  std::size_t vertices = 0;
  std::vector<Edge> edges;

  std::vector<std::vector<std::size_t>> successors() const {
    std::vector<std::vector<std::size_t>> adj(vertices);
    for (const auto& e : edges) adj[e.from].push_back(e.to);
    return adj;
  }

  Quiver reversed() const {
    Quiver r{vertices, {}};
    for (const auto& e : edges) r.edges.push_back({e.to, e.from, e.weight});
    std::sort(r.edges.begin(), r.edges.end(), [](const Edge& a, const Edge& b) {
      return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
    return r;
  }

  bool has_edge(std::size_t i, std::size_t j) const {
    return std::any_of(edges.begin(), edges.end(),
                       [&](const Edge& e) { return e.from == i && e.to == j; });
  }
};

inline Quiver quiver(const ExchangeMatrix& b) {
  Quiver q{b.n(), {}};
  for (std::size_t i = 0; i < b.n(); ++i)
    for (std::size_t j = 0; j < b.n(); ++j)
      if (b.mat()(i, j) > 0) q.edges.push_back({i, j, b.mat()(i, j)});
  return q;
}

/// Seed: exchange matrix plus the current cluster, written in the initial
/// cluster's n+m variables, and the mutation path from the initial seed.
struct Seed {
  ExchangeMatrix matrix;
  std::vector<LaurentFraction> cluster;
  std::vector<std::size_t> path;
};

inline Seed initial_seed(const ExchangeMatrix& b) {
  Seed s{b, {}, {}};
  for (std::size_t i = 0; i < b.size(); ++i) s.cluster.push_back(LaurentPoly::variable(b.size(), i));
  return s;
}

/// Exchange polynomial numerator m+ + m- for direction k in the given seed's variables.
inline LaurentPoly exchange_binomial(const Seed& t, std::size_t k) {
  const std::size_t nv = t.cluster.at(0).nvars();
  LaurentPoly plus = LaurentPoly::constant(nv, 1);
  LaurentPoly minus = LaurentPoly::constant(nv, 1);
  for (std::size_t i = 0; i < t.matrix.size(); ++i) {
    const Integer& b = t.matrix.mat()(i, k);
    if (b > 0) plus = plus * t.cluster[i].pow(b.get_ui());
    if (b < 0) minus = minus * t.cluster[i].pow(Integer(-b).get_ui());
  }
  return plus + minus;
}

inline Seed mutate_seed(const Seed& t, std::size_t k) {
  if (k >= t.matrix.n()) throw OutOfRange("mutation index " + std::to_string(k + 1) + " not mutable");
  Seed out = t;
  out.cluster[k] = exact_divide(exchange_binomial(t, k), t.cluster[k]);
  out.matrix = mutate_matrix(t.matrix, k);
  out.path.push_back(k);
  return out;
}

inline Seed mutate_seed_path(Seed t, const std::vector<std::size_t>& path) {
  for (std::size_t k : path) t = mutate_seed(t, k);
  return t;
}

/// Express f (a Laurent polynomial in the initial cluster of t's mutation
/// history) as a Laurent polynomial in t's own cluster.
inline LaurentPoly reexpress_in_seed(const LaurentPoly& f, const Seed& t) {
  // Mutating a symbolic seed at t back along the reversed path writes the
  // initial variables in terms of t's cluster.
  Seed back = initial_seed(t.matrix);
  std::vector<std::size_t> rev(t.path.rbegin(), t.path.rend());
  try {
    back = mutate_seed_path(back, rev);
    return f.substitute(back.cluster);
  } catch (const ExactDivisionFailure& e) {
    throw NotLaurent(std::string("not Laurent in seed cluster: ") + e.what());
  }
}

/// True iff the constant coefficient of f agrees across every given seed.
inline bool constant_term_check(const LaurentPoly& f, const std::vector<Seed>& seeds) {
  std::set<Integer> seen;
  for (const auto& t : seeds) seen.insert(reexpress_in_seed(f, t).constant_term());
  return seen.size() <= 1;
}

}  // namespace clusterlab
