#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gentle/bitset.hpp"
#include "gentle/error.hpp"
#include "gentle/rational.hpp"

namespace gentle {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Finite simple undirected graph on [0, n) with packed adjacency rows.
class Graph {
 public:
  using Word = Bitset::Word;

  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), stride_(Bitset::word_count(n)), bits_(n * stride_, 0) {}

  Graph(std::size_t n, std::span<const Edge> edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }
  Graph(std::size_t n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  std::size_t order() const { return n_; }

  bool adjacent(Vertex u, Vertex v) const {
    return (bits_[u * stride_ + v / 64] >> (v % 64)) & 1U;
  }

  void add_edge(Vertex u, Vertex v) {
    check_pair(u, v);
    set_bit(u, v);
    set_bit(v, u);
  }
  void remove_edge(Vertex u, Vertex v) {
    check_pair(u, v);
    clear_bit(u, v);
    clear_bit(v, u);
  }
  void toggle_edge(Vertex u, Vertex v) {
    check_pair(u, v);
    flip_bit(u, v);
    flip_bit(v, u);
  }

  std::span<const Word> row(Vertex u) const {
    return {bits_.data() + u * stride_, stride_};
  }

  std::size_t degree(Vertex u) const {
    std::size_t c = 0;
    for (Word w : row(u)) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Calls f(v) for each neighbour v of u in increasing order.
  template <class F>
  void for_each_neighbor(Vertex u, F&& f) const {
    auto r = row(u);
    for (std::size_t wi = 0; wi < stride_; ++wi) {
      Word w = r[wi];
      while (w != 0) {
        f(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<Vertex> neighbors(Vertex u) const {
    std::vector<Vertex> out;
    for_each_neighbor(u, [&](Vertex v) { out.push_back(v); });
    return out;
  }

  std::size_t edge_count() const {
    std::size_t c = 0;
    for (Word w : bits_) c += static_cast<std::size_t>(std::popcount(w));
    return c / 2;
  }

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < n_; ++u)
      for_each_neighbor(u, [&](Vertex v) {
        if (u < v) out.emplace_back(u, v);
      });
    return out;
  }

  Graph complement() const {
    Graph g(n_);
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v = u + 1; v < n_; ++v)
        if (!adjacent(u, v)) g.add_edge(u, v);
    return g;
  }

  /// G[vertices], relabelled so vertices[i] becomes i.
  Graph induced_subgraph(std::span<const Vertex> vertices) const {
    Graph g(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (std::size_t j = i + 1; j < vertices.size(); ++j)
        if (adjacent(vertices[i], vertices[j])) g.add_edge(i, j);
    return g;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_pair(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) throw PreconditionError("vertex out of range");
    if (u == v) throw PreconditionError("self-loop on vertex " + std::to_string(u));
  }
  void set_bit(Vertex u, Vertex v) { bits_[u * stride_ + v / 64] |= Word{1} << (v % 64); }
  void clear_bit(Vertex u, Vertex v) { bits_[u * stride_ + v / 64] &= ~(Word{1} << (v % 64)); }
  void flip_bit(Vertex u, Vertex v) { bits_[u * stride_ + v / 64] ^= Word{1} << (v % 64); }

  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> bits_;
};

/// Sorted duplicate-free set of vertices.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> vs) : members_(vs) { normalize(); }
  explicit VertexSet(std::vector<Vertex> vs) : members_(std::move(vs)) { normalize(); }

  static VertexSet range(Vertex first, Vertex last) {
    std::vector<Vertex> v;
    for (Vertex x = first; x < last; ++x) v.push_back(x);
    return VertexSet(std::move(v));
  }

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }
  const std::vector<Vertex>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  Vertex operator[](std::size_t i) const { return members_[i]; }

  Bitset mask(std::size_t n) const {
    Bitset b(n);
    for (Vertex v : members_) b.set(v);
    return b;
  }

  bool disjoint_from(const VertexSet& o) const {
    auto a = members_.begin();
    auto b = o.members_.begin();
    while (a != members_.end() && b != o.members_.end()) {
      if (*a == *b) return false;
      if (*a < *b) ++a; else ++b;
    }
    return true;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  void normalize() {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }
  std::vector<Vertex> members_;
};

namespace detail {

inline void check_members(const Graph& g, const VertexSet& s, const char* name) {
  if (!s.empty() && s.members().back() >= g.order())
    throw PreconditionError(std::string("vertex set ") + name + " has a vertex outside the graph");
}

inline void check_disjoint_nonempty(const Graph& g, const VertexSet& a, const VertexSet& b) {
  check_members(g, a, "A");
  check_members(g, b, "B");
  if (a.empty() || b.empty()) throw PreconditionError("vertex sets must be non-empty");
  if (!a.disjoint_from(b)) throw PreconditionError("vertex sets must be disjoint");
}

/// Number of ordered pairs (a, b) in A x B with ab an edge; no disjointness check.
inline std::size_t ordered_edge_count(const Graph& g, const VertexSet& a, const Bitset& b_mask) {
  std::size_t c = 0;
  for (Vertex u : a) c += and_count(g.row(u), b_mask.words());
  return c;
}

}  // namespace detail

/// |E(A, B)| for disjoint non-empty A and B.
inline std::size_t edge_count_between(const Graph& g, const VertexSet& a, const VertexSet& b) {
  detail::check_disjoint_nonempty(g, a, b);
  return detail::ordered_edge_count(g, a, b.mask(g.order()));
}

/// dens(A, B) = |E(A, B)| / (|A||B|), exact.
inline Rational density(const Graph& g, const VertexSet& a, const VertexSet& b) {
  const auto e = edge_count_between(g, a, b);
  return Rational(static_cast<std::int64_t>(e), static_cast<std::int64_t>(a.size() * b.size()));
}

/// Complete or edgeless between A and B. With A == B, tests whether A is a clique or an
/// independent set (pairs of distinct vertices only, so singletons are homogeneous).
inline bool is_homogeneous_pair(const Graph& g, const VertexSet& a, const VertexSet& b) {
  detail::check_members(g, a, "A");
  detail::check_members(g, b, "B");
  if (a.empty() || b.empty()) throw PreconditionError("vertex sets must be non-empty");
  if (a == b) {
    const auto twice_inside = detail::ordered_edge_count(g, a, a.mask(g.order()));
    return twice_inside == 0 || twice_inside == a.size() * (a.size() - 1);
  }
  if (!a.disjoint_from(b)) throw PreconditionError("vertex sets must be equal or disjoint");
  const auto e = detail::ordered_edge_count(g, a, b.mask(g.order()));
  return e == 0 || e == a.size() * b.size();
}

struct DegeneracyOrder {
  std::size_t degeneracy = 0;
  /// Peeling order: ordering[i] is the i-th removed vertex.
  std::vector<Vertex> ordering;
};

/// Min-degree peeling, ties broken by smallest index. Every vertex has at most
/// `degeneracy` neighbours that are peeled after it.
inline DegeneracyOrder degeneracy_order(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> deg(n);
  std::set<std::pair<std::size_t, Vertex>> queue;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    queue.emplace(deg[v], v);
  }
  std::vector<bool> removed(n, false);
  DegeneracyOrder out;
  out.ordering.reserve(n);
  while (!queue.empty()) {
    auto [d, v] = *queue.begin();
    queue.erase(queue.begin());
    out.degeneracy = std::max(out.degeneracy, d);
    removed[v] = true;
    out.ordering.push_back(v);
    g.for_each_neighbor(v, [&](Vertex w) {
      if (removed[w]) return;
      queue.erase({deg[w], w});
      --deg[w];
      queue.emplace(deg[w], w);
    });
  }
  return out;
}

struct Biclique {
  VertexSet left;
  VertexSet right;
};

inline constexpr std::size_t kDefaultKssCap = 64;

/// Searches for K_{s,s} as a (not necessarily induced) subgraph. Left side is the
/// lexicographically first s-set with at least s common neighbours.
inline std::optional<Biclique> contains_kss(const Graph& g, std::size_t s,
                                            std::size_t cap = kDefaultKssCap) {
  if (s == 0) throw PreconditionError("s must be positive");
  const std::size_t n = g.order();
  if (n > cap) throw SizeCapError("contains_kss: n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  if (2 * s > n) return std::nullopt;

  std::vector<Vertex> chosen;
  std::optional<Biclique> found;
  auto recurse = [&](auto&& self, Vertex start, const Bitset& common) -> void {
    if (found) return;
    if (chosen.size() == s) {
      std::vector<Vertex> right;
      for (std::size_t v = common.first(); v < n && right.size() < s; v = common.next(v + 1))
        right.push_back(v);
      found = Biclique{VertexSet(chosen), VertexSet(std::move(right))};
      return;
    }
    for (Vertex v = start; v + (s - chosen.size()) <= n; ++v) {
      Bitset next = common;
      Bitset row(n);
      auto src = g.row(v);
      std::copy(src.begin(), src.end(), row.words().begin());
      next &= row;
      if (next.count() < s) continue;
      chosen.push_back(v);
      self(self, v + 1, next);
      chosen.pop_back();
      if (found) return;
    }
  };
  Bitset all(n);
  for (Vertex v = 0; v < n; ++v) all.set(v);
  recurse(recurse, 0, all);
  return found;
}

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// BFS distances from `source` in G - S; kUnreachable for vertices of S or other components.
inline std::vector<std::size_t> distances_from(const Graph& g, const VertexSet& removed, Vertex source) {
  detail::check_members(g, removed, "S");
  if (source >= g.order()) throw PreconditionError("source out of range");
  if (removed.contains(source)) throw PreconditionError("source lies in the deleted set");
  std::vector<std::size_t> dist(g.order(), kUnreachable);
  std::vector<bool> blocked(g.order(), false);
  for (Vertex v : removed) blocked[v] = true;
  std::queue<Vertex> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    g.for_each_neighbor(u, [&](Vertex w) {
      if (blocked[w] || dist[w] != kUnreachable) return;
      dist[w] = dist[u] + 1;
      q.push(w);
    });
  }
  return dist;
}

}  // namespace gentle
