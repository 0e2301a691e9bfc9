#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "gentle/cotree.hpp"
#include "gentle/cover_regularity.hpp"
#include "gentle/encodings.hpp"
#include "gentle/error.hpp"
#include "gentle/gf2_rank.hpp"
#include "gentle/graph.hpp"
#include "gentle/random.hpp"
#include "gentle/tree_partition.hpp"

namespace gentle {

/// Vertices a_1..a_n then b_1..b_n; a_i ~ b_j iff i <= j.
inline Graph half_graph(std::size_t n) {
  if (n == 0) throw PreconditionError("half graph needs n >= 1");
  Graph g(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) g.add_edge(i, n + j);
  return g;
}

/// Increasing k-tuples over [n] in lexicographic order.
inline std::vector<std::vector<std::size_t>> increasing_tuples(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t x = from; x + (k - cur.size()) <= n; ++x) {
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Vertices are the increasing k-tuples over [n]; x ~ y iff y is x shifted by one place
/// (x_{i+1} = y_i for all i < k) or the reverse.
inline Graph shift_graph(std::size_t n, std::size_t k) {
  if (k < 2 || n <= k) throw PreconditionError("shift graph needs n > k >= 2");
  const auto tuples = increasing_tuples(n, k);
  std::map<std::vector<std::size_t>, Vertex> index;
  for (Vertex v = 0; v < tuples.size(); ++v) index.emplace(tuples[v], v);
  Graph g(tuples.size());
  for (Vertex v = 0; v < tuples.size(); ++v) {
    std::vector<std::size_t> tail(tuples[v].begin() + 1, tuples[v].end());
    for (std::size_t last = tail.back() + 1; last < n; ++last) {
      auto next = tail;
      next.push_back(last);
      g.add_edge(v, index.at(next));
    }
  }
  return g;
}

inline constexpr std::size_t kMaxEsN = 20;

/// Vertices 0..n-1 are the points, then n + I for each subset bitmask I; i ~ n + I iff i in I.
inline Graph es_graph(std::size_t n) {
  if (n == 0 || n > kMaxEsN) throw PreconditionError("es_graph needs 1 <= n <= 20");
  const std::size_t sets = std::size_t{1} << n;
  Graph g(n + sets);
  for (std::size_t s = 0; s < sets; ++s)
    for (std::size_t i = 0; i < n; ++i)
      if ((s >> i) & 1U) g.add_edge(i, n + s);
  return g;
}

/// G(n, num/den).
inline Graph random_graph(std::size_t n, std::uint64_t num, std::uint64_t den, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.chance(num, den)) g.add_edge(u, v);
  return g;
}

/// Vertex i joins a uniform number in [0, min(i, d)] of distinct earlier vertices.
inline Graph random_degenerate(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n > 0 && d >= n) throw PreconditionError("degenerate generator needs d < n");
  SplitMix64 rng(seed);
  Graph g(n);
  std::vector<Vertex> earlier;
  for (Vertex i = 0; i < n; ++i) {
    const auto count = static_cast<std::size_t>(rng.between(0, std::min<std::size_t>(i, d)));
    earlier.resize(i);
    std::iota(earlier.begin(), earlier.end(), Vertex{0});
    for (std::size_t k = 0; k < count; ++k) {
      const auto j = k + static_cast<std::size_t>(rng.below(i - k));
      std::swap(earlier[k], earlier[j]);
      g.add_edge(i, earlier[k]);
    }
  }
  return g;
}

inline constexpr std::size_t kRegularAttempts = 10000;

/// Pairing model: shuffle n d half-edges, pair them up consecutively, reject loops and
/// repeated edges and try again.
inline Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (d >= n || (n * d) % 2 != 0) throw PreconditionError("random regular graph needs d < n and n d even");
  SplitMix64 rng(seed);
  std::vector<Vertex> points(n * d);
  for (std::size_t attempt = 0; attempt < kRegularAttempts; ++attempt) {
    for (std::size_t i = 0; i < points.size(); ++i) points[i] = i / d;
    rng.shuffle(points);
    Graph g(n);
    bool ok = true;
    for (std::size_t i = 0; ok && i < points.size(); i += 2) {
      const Vertex a = points[i], b = points[i + 1];
      if (a == b || g.adjacent(a, b)) ok = false;
      else g.add_edge(a, b);
    }
    if (ok) return g;
  }
  throw ConvergenceError("pairing model kept producing loops or repeated edges");
}

enum class TreeShape { Recursive, Deep, Broad };

inline TreeShape parse_tree_shape(const std::string& s) {
  if (s == "recursive") return TreeShape::Recursive;
  if (s == "deep") return TreeShape::Deep;
  if (s == "broad") return TreeShape::Broad;
  throw PreconditionError("unknown tree shape '" + s + "'");
}

/// Node i > 0 hangs below an earlier node: any of them (recursive), one of the last three
/// (deep) or one of the first four (broad).
inline PlaneTree random_plane_tree(std::size_t nodes, TreeShape shape, std::uint64_t seed) {
  if (nodes == 0) throw PreconditionError("tree needs at least one node");
  SplitMix64 rng(seed);
  std::vector<Node> parent(nodes, kNoNode);
  for (Node i = 1; i < nodes; ++i) {
    switch (shape) {
      case TreeShape::Recursive: parent[i] = rng.below(i); break;
      case TreeShape::Deep: parent[i] = i - 1 - rng.below(std::min<std::size_t>(i, 3)); break;
      case TreeShape::Broad: parent[i] = rng.below(std::min<std::size_t>(i, 4)); break;
    }
  }
  return PlaneTree::from_parents(parent);
}

/// Integer weights in [0, max_weight] on every node, normalised; at least one is positive.
inline TreeMeasure random_measure(const PlaneTree& t, std::uint64_t max_weight, std::uint64_t seed) {
  SplitMix64 rng(seed);
  TreeMeasure mu;
  mu.weight.resize(t.node_count());
  mu.total = 0;
  for (auto& w : mu.weight) {
    w = static_cast<std::int64_t>(rng.below(max_weight + 1));
    mu.total += w;
  }
  if (mu.total == 0) {
    mu.weight[t.root()] = 1;
    mu.total = 1;
  }
  return mu;
}

/// Plane tree with n leaves: each internal node gets 2..max_child children (one child with
/// probability 1/8), leaves are split among children at random cut points.
inline PlaneTree random_cotree_shape(std::size_t n, std::size_t max_child, SplitMix64& rng) {
  if (n == 0) throw PreconditionError("cotree needs at least one leaf");
  if (max_child < 2) throw PreconditionError("max_child must be at least 2");
  std::vector<std::vector<Node>> children{{}};
  std::vector<std::pair<Node, std::size_t>> work{{0, n}};
  while (!work.empty()) {
    const auto [x, leaves] = work.back();
    work.pop_back();
    if (leaves == 1) continue;
    std::size_t k = 1;
    if (!rng.chance(1, 8)) k = static_cast<std::size_t>(rng.between(2, std::min(max_child, leaves)));
    // k - 1 distinct cut points in [1, leaves - 1]
    std::vector<std::size_t> cuts;
    if (k > 1) {
      std::vector<std::size_t> pool(leaves - 1);
      std::iota(pool.begin(), pool.end(), std::size_t{1});
      for (std::size_t i = 0; i + 1 < k; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
        std::swap(pool[i], pool[j]);
        cuts.push_back(pool[i]);
      }
      std::sort(cuts.begin(), cuts.end());
    }
    cuts.insert(cuts.begin(), 0);
    cuts.push_back(leaves);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const Node c = children.size();
      children.emplace_back();
      children[x].push_back(c);
      work.emplace_back(c, cuts[i + 1] - cuts[i]);
    }
  }
  return PlaneTree(std::move(children), 0);
}

inline NodeFn random_fn(std::size_t m, SplitMix64& rng) {
  return rng.next() & fn_constant(m, true);
}

/// Random embedded m-partite cograph with n leaves: uniform colours and uniform node functions.
inline EmbeddedCotree random_cotree(std::size_t n, std::size_t m, std::size_t max_child, std::uint64_t seed) {
  if (m == 0 || m > kMaxColors) throw PreconditionError("m must lie in [1, 8]");
  SplitMix64 rng(seed);
  PlaneTree t = random_cotree_shape(n, max_child, rng);
  std::vector<std::size_t> colors(t.leaf_count());
  for (auto& c : colors) c = static_cast<std::size_t>(rng.below(m));
  std::vector<NodeFn> fns(t.node_count(), 0);
  for (Node x = 0; x < t.node_count(); ++x)
    if (!t.is_leaf(x)) fns[x] = random_fn(m, rng);
  return EmbeddedCotree(std::move(t), m, std::move(colors), std::move(fns));
}

/// n leaves at depth `depth`, grouped bottom-up into runs of 1..3 per parent (all under the root
/// at the top level); every A_i holds each vertex with probability 1/2.
inline SCDecomposition random_sc(std::size_t n, std::size_t depth, std::uint64_t seed) {
  if (n == 0 || depth == 0) throw PreconditionError("sc decomposition needs n >= 1 and depth >= 1");
  SplitMix64 rng(seed);
  // Build levels bottom-up with temporary ids, then renumber.
  std::vector<std::vector<std::vector<std::size_t>>> groups(depth);  // groups[L]: children lists of level-L nodes
  std::size_t count = n;
  for (std::size_t level = depth; level-- > 0;) {
    std::vector<std::vector<std::size_t>> parents;
    if (level == 0) {
      parents.emplace_back();
      for (std::size_t i = 0; i < count; ++i) parents.back().push_back(i);
    } else {
      for (std::size_t i = 0; i < count;) {
        const auto take = std::min<std::size_t>(count - i, 1 + rng.below(3));
        parents.emplace_back();
        for (std::size_t j = 0; j < take; ++j) parents.back().push_back(i + j);
        i += take;
      }
    }
    groups[level] = std::move(parents);
    count = groups[level].size();
  }
  // Node ids: level by level, level 0 first.
  std::vector<std::size_t> offset(depth + 1, 0);
  for (std::size_t level = 0; level < depth; ++level) offset[level + 1] = offset[level] + groups[level].size();
  std::vector<std::vector<Node>> children(offset[depth] + n);
  for (std::size_t level = 0; level < depth; ++level)
    for (std::size_t i = 0; i < groups[level].size(); ++i)
      for (std::size_t c : groups[level][i]) children[offset[level] + i].push_back(offset[level + 1] + c);
  SCDecomposition d{PlaneTree(std::move(children), 0), depth, {}};
  for (std::size_t i = 0; i < depth; ++i) {
    std::vector<Vertex> a;
    for (Vertex v = 0; v < n; ++v)
      if (rng.chance(1, 2)) a.push_back(v);
    d.flips.emplace_back(std::move(a));
  }
  return d;
}

struct TwoCoveredInstance {
  Graph graph;
  TwoCover cover;
  /// Cotree of each G[V_i ∪ V_j], leaves in pair_vertices order.
  std::map<PairKey, EmbeddedCotree> pair_cotrees;
};

/// Plants p classes on one random plane tree. Each vertex gets a class and a sub-colour in
/// [h], h = max(1, m / 2). Every node carries one h x h function per class and two per
/// class pair (for each left/right orientation), so each G[V_i ∪ V_j] is an embedded cograph
/// with 2h <= m colours. For m = 1 all classes share one bit per node.
inline TwoCoveredInstance random_two_covered(std::size_t n, std::size_t m, std::size_t p, std::uint64_t seed) {
  if (p < 2 || n < p) throw PreconditionError("two-covered instance needs p >= 2 and n >= p");
  if (m == 0 || m > kMaxColors) throw PreconditionError("m must lie in [1, 8]");
  SplitMix64 rng(seed);
  const PlaneTree t = random_cotree_shape(n, 4, rng);
  const std::size_t h = std::max<std::size_t>(1, m / 2);
  const bool shared = m == 1;

  std::vector<std::size_t> cls(n), sub(n);
  for (Vertex v = 0; v < n; ++v) cls[v] = static_cast<std::size_t>(rng.below(p));
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  rng.shuffle(perm);
  for (std::size_t k = 0; k < p; ++k) cls[perm[k]] = k;
  for (Vertex v = 0; v < n; ++v) sub[v] = shared ? 0 : static_cast<std::size_t>(rng.below(h));

  const auto pairs = cover_pairs(p);
  const std::size_t per_node = p + 2 * pairs.size();
  std::vector<NodeFn> fns(t.node_count() * per_node, 0);
  for (Node x = 0; x < t.node_count(); ++x) {
    if (t.is_leaf(x)) continue;
    if (shared) {
      const NodeFn bit = rng.next() & 1U;
      for (std::size_t k = 0; k < per_node; ++k) fns[x * per_node + k] = bit;
    } else {
      for (std::size_t k = 0; k < per_node; ++k) fns[x * per_node + k] = random_fn(h, rng);
    }
  }
  std::map<PairKey, std::size_t> pair_index;
  for (std::size_t k = 0; k < pairs.size(); ++k) pair_index[pairs[k]] = k;
  // Function slot for a left vertex of class a and a right vertex of class b; the bit is read
  // at (sub of the lower class, sub of the higher class).
  auto slot = [&](std::size_t a, std::size_t b) {
    if (a == b) return a;
    const std::size_t k = pair_index.at({std::min(a, b), std::max(a, b)});
    return p + 2 * k + (a < b ? 0 : 1);
  };
  auto adjacent = [&](Vertex u, Vertex v) {  // u < v, so u is the left leaf
    const Node w = t.lca(t.leaf_node(u), t.leaf_node(v));
    const NodeFn f = fns[w * per_node + slot(cls[u], cls[v])];
    if (cls[u] <= cls[v]) return fn_bit(f, h, sub[u], sub[v]);
    return fn_bit(f, h, sub[v], sub[u]);
  };

  TwoCoveredInstance out;
  out.graph = Graph(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (adjacent(u, v)) out.graph.add_edge(u, v);
  out.cover.parts.blocks.resize(p);
  for (Vertex v = 0; v < n; ++v) out.cover.parts.blocks[cls[v]].push_back(v);

  const std::size_t pm = shared ? 1 : 2 * h;
  for (const auto& [i, j] : pairs) {
    std::vector<std::size_t> colors(t.leaf_count());
    std::vector<NodeFn> pfn(t.node_count(), 0);
    auto colour_of = [&](Vertex v) { return shared ? 0 : (cls[v] == i ? sub[v] : h + sub[v]); };
    for (Vertex v = 0; v < n; ++v) colors[v] = colour_of(v);
    for (Node x = 0; x < t.node_count(); ++x) {
      if (t.is_leaf(x)) continue;
      if (shared) {
        pfn[x] = fns[x * per_node] & 1U;
        continue;
      }
      NodeFn f = 0;
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
          const std::size_t ca = a == 0 ? i : j, cb = b == 0 ? i : j;
          const NodeFn src = fns[x * per_node + slot(ca, cb)];
          for (std::size_t s = 0; s < h; ++s)
            for (std::size_t q = 0; q < h; ++q) {
              const bool bit = ca <= cb ? fn_bit(src, h, s, q) : fn_bit(src, h, q, s);
              f = fn_set(f, pm, a * h + s, b * h + q, bit);
            }
        }
      pfn[x] = f;
    }
    std::vector<bool> keep(n, false);
    for (Vertex v = 0; v < n; ++v) keep[v] = cls[v] == i || cls[v] == j;
    out.pair_cotrees.emplace(PairKey{i, j}, induced_cotree(EmbeddedCotree(t, pm, colors, pfn), keep));
  }
  return out;
}

/// Subcubic tree grown from one edge by subdividing a uniformly random edge and hanging the
/// next vertex's leaf from the new node.
inline RankDecomposition random_rank_decomposition(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw PreconditionError("decomposition needs at least two vertices");
  SplitMix64 rng(seed);
  RankDecomposition d;
  d.nodes = 2;
  d.edges.push_back({0, 1});
  d.leaf_of = {0, 1};
  for (Vertex v = 2; v < n; ++v) {
    const auto e = static_cast<std::size_t>(rng.below(d.edges.size()));
    const auto [a, b] = d.edges[e];
    const Node mid = d.nodes++, leaf = d.nodes++;
    d.edges[e] = {a, mid};
    d.edges.push_back({mid, b});
    d.edges.push_back({mid, leaf});
    d.leaf_of.push_back(leaf);
  }
  return d;
}

}  // namespace gentle
