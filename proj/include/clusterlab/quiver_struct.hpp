#pragma once

// Separating edges, mutation-class search, acyclicity and Louise certificates.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include "clusterlab/cluster_core.hpp"
#include "clusterlab/errors.hpp"

namespace clusterlab {

using EdgePair = std::pair<std::size_t, std::size_t>;

/// Strongly connected component id per vertex (Tarjan, iterative).
inline std::vector<std::size_t> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& adj, std::size_t* count = nullptr) {
  const std::size_t n = adj.size();
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, none), low(n, 0), comp(n, none);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0, next_comp = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != none) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      if (pos < adj[v].size()) {
        std::size_t w = adj[v][pos++];
        if (index[w] == none) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = next_comp;
        } while (w != v);
        ++next_comp;
      }
      std::size_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  if (count) *count = next_comp;
  return comp;
}

namespace detail {

inline std::vector<bool> reach_from(const std::vector<std::vector<std::size_t>>& adj,
                                    const std::vector<bool>& seeds) {
  std::vector<bool> seen = seeds;
  std::deque<std::size_t> todo;
  for (std::size_t v = 0; v < seeds.size(); ++v)
    if (seeds[v]) todo.push_back(v);
  while (!todo.empty()) {
    std::size_t v = todo.front();
    todo.pop_front();
    for (std::size_t w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
  }
  return seen;
}

}  // namespace detail

/// Vertices lying on some directed cycle.
inline std::vector<bool> cyclic_vertices(const Quiver& q) {
  auto adj = q.successors();
  std::size_t ncomp = 0;
  auto comp = strongly_connected_components(adj, &ncomp);
  std::vector<std::size_t> comp_size(ncomp, 0);
  for (auto c : comp) ++comp_size[c];
  std::vector<bool> cyc(q.vertices, false);
  for (std::size_t v = 0; v < q.vertices; ++v) cyc[v] = comp_size[comp[v]] > 1;
  for (const auto& e : q.edges)
    if (e.from == e.to) cyc[e.from] = true;
  return cyc;
}

/// Edges i -> j through which no bi-infinite directed path passes, in
/// lexicographic order.
inline std::vector<EdgePair> separating_edges(const Quiver& q) {
  auto adj = q.successors();
  std::vector<std::vector<std::size_t>> radj(q.vertices);
  for (const auto& e : q.edges) radj[e.to].push_back(e.from);
  auto cyc = cyclic_vertices(q);
  auto downstream = detail::reach_from(adj, cyc);  // reachable from a cycle
  auto upstream = detail::reach_from(radj, cyc);   // reaches a cycle
  std::vector<EdgePair> out;
  for (const auto& e : q.edges)
    if (!(downstream[e.from] && upstream[e.to])) out.emplace_back(e.from, e.to);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_acyclic(const Quiver& q) {
  auto cyc = cyclic_vertices(q);
  return std::none_of(cyc.begin(), cyc.end(), [](bool b) { return b; });
}

/// Representative of b under simultaneous permutation of mutable indices
/// (frozen rows follow the column permutation).  Vertices are sorted by a
/// permutation-invariant signature; ties are resolved by trying all
/// within-tie orders up to a cap, so the key is always a relabeling of b.
inline IntMatrix canonical_form(const ExchangeMatrix& b, std::size_t perm_cap = 720) {
  const std::size_t n = b.n();
  const IntMatrix& a = b.mat();
  using Sig = std::pair<std::vector<Integer>, std::vector<Integer>>;
  std::vector<Sig> sig(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t j = 0; j < n; ++j) sig[v].first.push_back(a(v, j));
    std::sort(sig[v].first.begin(), sig[v].first.end());
    for (std::size_t r = n; r < b.size(); ++r) sig[v].second.push_back(a(r, v));
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sig[x] < sig[y]; });

  auto apply = [&](const std::vector<std::size_t>& p) {
    IntMatrix out(a.rows(), a.cols());
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) out(i, j) = a(p[i], p[j]);
      for (std::size_t r = n; r < b.size(); ++r) out(r, j) = a(r, p[j]);
    }
    return out;
  };

  // Tie groups [start, end).
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  std::size_t total = 1;
  for (std::size_t s = 0; s < n;) {
    std::size_t e = s + 1;
    while (e < n && sig[order[e]] == sig[order[s]]) ++e;
    if (e - s > 1) {
      groups.emplace_back(s, e);
      for (std::size_t f = 2; f <= e - s && total <= perm_cap; ++f) total *= f;
    }
    s = e;
  }
  IntMatrix best = apply(order);
  if (groups.empty() || total > perm_cap) return best;

  std::vector<std::size_t> p = order;
  std::function<void(std::size_t)> rec = [&](std::size_t g) {
    if (g == groups.size()) {
      IntMatrix cand = apply(p);
      if (cand < best) best = std::move(cand);
      return;
    }
    auto [s, e] = groups[g];
    std::sort(p.begin() + s, p.begin() + e);
    do {
      rec(g + 1);
    } while (std::next_permutation(p.begin() + s, p.begin() + e));
  };
  rec(0);
  return best;
}

using MutationPath = std::vector<std::size_t>;

struct SearchVerdict {
  enum class Kind { Yes, No, Unknown };
  Kind kind = Kind::Unknown;
  MutationPath witness;  // meaningful only for Yes

  static SearchVerdict yes(MutationPath p) { return {Kind::Yes, std::move(p)}; }
  static SearchVerdict no() { return {Kind::No, {}}; }
  static SearchVerdict unknown() { return {Kind::Unknown, {}}; }
};

inline constexpr std::size_t kDefaultBudget = 10000;

/// Breadth-first walk over the mutation class of b, deduplicated by
/// canonical_form.  visit(matrix, path) returns true to stop.  Each matrix
/// whose neighbours are generated counts as one expansion against *budget.
/// Returns Yes with the stopping path, No if the class was exhausted, or
/// Unknown when the budget ran out.
inline SearchVerdict mutation_class_bfs(
    const ExchangeMatrix& b, std::size_t& budget,
    const std::function<bool(const ExchangeMatrix&, const MutationPath&)>& visit) {
  std::set<IntMatrix> seen{canonical_form(b)};
  std::deque<std::pair<ExchangeMatrix, MutationPath>> queue;
  if (visit(b, {})) return SearchVerdict::yes({});
  queue.emplace_back(b, MutationPath{});
  while (!queue.empty()) {
    if (budget == 0) return SearchVerdict::unknown();
    --budget;
    auto [cur, path] = std::move(queue.front());
    queue.pop_front();
    for (std::size_t k = 0; k < cur.n(); ++k) {
      if (!path.empty() && path.back() == k) continue;
      ExchangeMatrix next = mutate_matrix(cur, k);
      if (!seen.insert(canonical_form(next)).second) continue;
      MutationPath np = path;
      np.push_back(k);
      if (visit(next, np)) return SearchVerdict::yes(np);
      queue.emplace_back(std::move(next), std::move(np));
    }
  }
  return SearchVerdict::no();
}

inline SearchVerdict is_mutation_acyclic(const ExchangeMatrix& b, std::size_t budget = kDefaultBudget) {
  if (budget == 0) throw PreconditionViolated("search budget must be positive");
  return mutation_class_bfs(b, budget, [](const ExchangeMatrix& m, const MutationPath&) {
    return is_acyclic(quiver(m));
  });
}

/// Recursion tree witnessing the Louise property.
struct LouiseCertificate {
  MutationPath path;
  std::optional<EdgePair> edge;  // empty for a leaf
  std::vector<LouiseCertificate> children;  // freeze out i, freeze out j, freeze out both
  std::optional<ExchangeMatrix> input;  // node input matrix, checked on replay when present

  bool is_leaf() const { return !edge.has_value(); }

  std::size_t node_count() const {
    std::size_t c = 1;
    for (const auto& ch : children) c += ch.node_count();
    return c;
  }
};

/// The three freezings attached to a split at edge (i, j).
inline std::vector<ExchangeMatrix> split_children(const ExchangeMatrix& b, EdgePair e) {
  return {freeze_out(b, {e.first}).matrix, freeze_out(b, {e.second}).matrix,
          freeze_out(b, {e.first, e.second}).matrix};
}

namespace detail {

struct BudgetExhausted {};

class LouiseSearch {
 public:
  explicit LouiseSearch(std::size_t budget) : budget_(budget) {}

  // nullopt means the (finite, exhausted) class has no certificate.
  std::optional<LouiseCertificate> solve(const ExchangeMatrix& b) {
    auto key = std::make_pair(b.m(), canonical_form(b));
    if (auto it = failed_.find(key); it != failed_.end()) return std::nullopt;
    if (auto it = solved_.find(b); it != solved_.end()) return it->second;

    std::optional<LouiseCertificate> found;
    auto verdict = mutation_class_bfs(b, budget_, [&](const ExchangeMatrix& cur, const MutationPath& p) {
      found = try_node(cur, p);
      return found.has_value();
    });
    if (verdict.kind == SearchVerdict::Kind::Unknown) throw BudgetExhausted{};
    if (!found) {
      failed_.insert(key);
      return std::nullopt;
    }
    found->input = b;
    solved_.emplace(b, *found);
    return found;
  }

 private:
  std::optional<LouiseCertificate> try_node(const ExchangeMatrix& cur, const MutationPath& p) {
    Quiver q = quiver(cur);
    if (q.edges.empty()) return LouiseCertificate{p, std::nullopt, {}, std::nullopt};
    // Every child has n-1 or n-2 mutables, so preferring the smallest
    // largest child leaves the lexicographic order of separating_edges.
    for (const auto& e : separating_edges(q)) {
      LouiseCertificate node{p, e, {}, std::nullopt};
      bool ok = true;
      for (const auto& child : split_children(cur, e)) {
        auto c = solve(child);
        if (!c) {
          ok = false;
          break;
        }
        node.children.push_back(std::move(*c));
      }
      if (ok) return node;
    }
    return std::nullopt;
  }

  std::size_t budget_;
  std::set<std::pair<std::size_t, IntMatrix>> failed_;
  std::map<ExchangeMatrix, LouiseCertificate> solved_;
};

}  // namespace detail

/// Outcome of a Louise search: a certificate, a proof that none exists
/// within the (exhausted) mutation class, or Unknown.
struct LouiseResult {
  SearchVerdict::Kind kind = SearchVerdict::Kind::Unknown;
  std::optional<LouiseCertificate> certificate;
};

inline LouiseResult louise_certificate(const ExchangeMatrix& b, std::size_t budget = kDefaultBudget) {
  if (budget == 0) throw PreconditionViolated("search budget must be positive");
  detail::LouiseSearch search(budget);
  try {
    auto cert = search.solve(b);
    if (cert) return {SearchVerdict::Kind::Yes, std::move(cert)};
    return {SearchVerdict::Kind::No, std::nullopt};
  } catch (const detail::BudgetExhausted&) {
    return {SearchVerdict::Kind::Unknown, std::nullopt};
  }
}

/// Replay a certificate against b.
inline bool verify_certificate(const ExchangeMatrix& b, const LouiseCertificate& cert) {
  if (cert.input && *cert.input != b) return false;
  for (std::size_t k : cert.path)
    if (k >= b.n()) return false;
  ExchangeMatrix cur = mutate_path(b, cert.path);
  Quiver q = quiver(cur);
  if (cert.is_leaf()) return q.edges.empty() && cert.children.empty();
  auto seps = separating_edges(q);
  if (std::find(seps.begin(), seps.end(), *cert.edge) == seps.end()) return false;
  if (cert.children.size() != 3) return false;
  auto kids = split_children(cur, *cert.edge);
  for (std::size_t c = 0; c < 3; ++c)
    if (!verify_certificate(kids[c], cert.children[c])) return false;
  return true;
}

}  // namespace clusterlab
