#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gentle/bitset.hpp"
#include "gentle/cotree.hpp"
#include "gentle/error.hpp"
#include "gentle/graph.hpp"

namespace gentle {

/// Incremental GF(2) row space. Each stored row keeps its pivot (lowest set bit) and the
/// combination of inserted generators that produced it.
class Gf2Basis {
 public:
  explicit Gf2Basis(std::size_t width) : width_(width) {}

  std::size_t rank() const { return rows_.size(); }

  /// Reduces v. Returns the generator combination that spans it, or nullopt (after adding v as
  /// generator rank()-1) when v was independent.
  std::optional<Bitset> insert(Bitset v) {
    Bitset combo(kMaxGenerators);
    for (std::size_t j = 0; j < rows_.size(); ++j)
      if (v.test(pivot_[j])) {
        v ^= rows_[j];
        combo ^= combo_[j];
      }
    if (v.none()) return combo;
    if (rows_.size() == kMaxGenerators) throw InvariantError("GF(2) basis exceeds its generator capacity");
    combo.flip(rows_.size());
    pivot_.push_back(v.first());
    rows_.push_back(std::move(v));
    combo_.push_back(std::move(combo));
    return std::nullopt;
  }

  static constexpr std::size_t kMaxGenerators = 4096;

 private:
  std::size_t width_;
  std::vector<Bitset> rows_;
  std::vector<std::size_t> pivot_;
  std::vector<Bitset> combo_;
};

namespace detail {

inline Bitset row_bits(const Graph& g, Vertex u) {
  Bitset b(g.order());
  auto src = g.row(u);
  std::copy(src.begin(), src.end(), b.words().begin());
  return b;
}

}  // namespace detail

namespace detail {

/// GF(2) rank of a list of rows, by elimination on lowest set bits.
inline std::size_t row_rank(std::vector<Bitset> rows) {
  std::vector<Bitset> basis;
  std::vector<std::size_t> pivot;
  for (auto& v : rows) {
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (v.test(pivot[j])) v ^= basis[j];
    if (v.none()) continue;
    pivot.push_back(v.first());
    basis.push_back(std::move(v));
  }
  return basis.size();
}

/// Cut-rank of the side given by its members and membership mask.
inline std::size_t cutrank_masked(const Graph& g, const VertexSet& x, const Bitset& inside) {
  std::vector<Bitset> rows;
  rows.reserve(x.size());
  for (Vertex u : x) {
    Bitset r = row_bits(g, u);
    auto w = r.words();
    auto m = inside.words();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] &= ~m[i];
    rows.push_back(std::move(r));
  }
  return row_rank(std::move(rows));
}

}  // namespace detail

/// GF(2) rank of the X by V - X adjacency matrix.
inline std::size_t cutrank(const Graph& g, const VertexSet& x) {
  detail::check_members(g, x, "X");
  return detail::cutrank_masked(g, x, x.mask(g.order()));
}

/// Unrooted tree whose internal nodes have degree 3 and whose leaves are the vertices.
struct RankDecomposition {
  std::size_t nodes = 0;
  std::vector<Edge> edges;
  /// leaf_of[v] is the tree node of vertex v.
  std::vector<Node> leaf_of;
};

namespace detail {

inline std::vector<std::vector<Node>> tree_adjacency(const RankDecomposition& d) {
  std::vector<std::vector<Node>> adj(d.nodes);
  for (auto [a, b] : d.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

/// For every node, the vertex whose leaf it is, or kNoNode.
inline std::vector<Vertex> vertex_at(const RankDecomposition& d) {
  std::vector<Vertex> at(d.nodes, kNoNode);
  for (Vertex v = 0; v < d.leaf_of.size(); ++v) at[d.leaf_of[v]] = v;
  return at;
}

}  // namespace detail

inline void validate_decomposition(const Graph& g, const RankDecomposition& d) {
  if (d.nodes < 2) throw PreconditionError("decomposition tree needs at least two nodes");
  if (d.edges.size() + 1 != d.nodes) throw PreconditionError("decomposition tree must have nodes - 1 edges");
  if (d.leaf_of.size() != g.order()) throw PreconditionError("every vertex needs a leaf");
  std::vector<std::size_t> deg(d.nodes, 0);
  for (auto [a, b] : d.edges) {
    if (a >= d.nodes || b >= d.nodes || a == b) throw PreconditionError("bad decomposition edge");
    ++deg[a];
    ++deg[b];
  }
  const auto adj = detail::tree_adjacency(d);
  std::vector<bool> seen(d.nodes, false);
  std::vector<Node> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Node x = stack.back();
    stack.pop_back();
    for (Node y : adj[x])
      if (!seen[y]) {
        seen[y] = true;
        ++reached;
        stack.push_back(y);
      }
  }
  if (reached != d.nodes) throw PreconditionError("decomposition tree is not connected");
  std::vector<bool> used(d.nodes, false);
  std::size_t leaves = 0;
  for (Node x = 0; x < d.nodes; ++x) {
    if (deg[x] == 1) ++leaves;
    else if (deg[x] != 3) throw PreconditionError("internal decomposition node without degree 3");
  }
  for (Node x : d.leaf_of) {
    if (x >= d.nodes || deg[x] != 1 || used[x]) throw PreconditionError("leaf map is not a bijection onto the leaves");
    used[x] = true;
  }
  if (leaves != g.order()) throw PreconditionError("leaf map is not a bijection onto the leaves");
}

/// Vertex sets below each tree edge, with the tree rooted at node 0 (one per edge, in edge order).
inline std::vector<VertexSet> decomposition_cuts(const RankDecomposition& d) {
  const auto adj = detail::tree_adjacency(d);
  const auto at = detail::vertex_at(d);
  std::vector<Node> parent(d.nodes, kNoNode), order;
  std::vector<bool> seen(d.nodes, false);
  std::vector<Node> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const Node x = stack.back();
    stack.pop_back();
    order.push_back(x);
    for (Node y : adj[x])
      if (!seen[y]) {
        seen[y] = true;
        parent[y] = x;
        stack.push_back(y);
      }
  }
  std::vector<std::vector<Vertex>> below(d.nodes);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Node x = *it;
    if (at[x] != kNoNode) below[x].push_back(at[x]);
    if (parent[x] != kNoNode)
      below[parent[x]].insert(below[parent[x]].end(), below[x].begin(), below[x].end());
  }
  std::vector<VertexSet> out;
  for (auto [a, b] : d.edges) out.emplace_back(below[parent[b] == a ? b : a]);
  return out;
}

/// Largest cut-rank over the tree edges.
inline std::size_t decomposition_width(const Graph& g, const RankDecomposition& d) {
  validate_decomposition(g, d);
  std::size_t w = 0;
  for (const auto& side : decomposition_cuts(d)) w = std::max(w, cutrank(g, side));
  return w;
}

/// Decomposition following a plane tree: children are folded left to right into binary
/// nodes, unary nodes are suppressed, and the root's degree-2 node is spliced out. Vertex v
/// sits at leaf number v.
inline RankDecomposition rank_decomposition_from_tree(const PlaneTree& t) {
  if (t.leaf_count() < 2) throw PreconditionError("decomposition needs at least two leaves");
  RankDecomposition d;
  d.leaf_of.assign(t.leaf_count(), kNoNode);
  auto fresh = [&] { return d.nodes++; };
  auto fold = [&](const std::vector<Node>& reps) {
    Node cur = reps.front();
    for (std::size_t i = 1; i < reps.size(); ++i) {
      const Node y = fresh();
      d.edges.push_back({y, cur});
      d.edges.push_back({y, reps[i]});
      cur = y;
    }
    return cur;
  };
  std::vector<Node> rep(t.node_count(), kNoNode);
  const auto pre = t.preorder();
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
    const Node x = *it;
    if (t.is_leaf(x)) {
      rep[x] = fresh();
      d.leaf_of[t.leaf_index(x)] = rep[x];
      continue;
    }
    std::vector<Node> reps;
    for (Node c : t.children(x)) reps.push_back(rep[c]);
    rep[x] = fold(reps);
  }
  // The top binary node has degree 2: join its two neighbours directly.
  const Node top = rep[t.root()];
  std::vector<Node> nbr;
  std::erase_if(d.edges, [&](const Edge& e) {
    if (e.first != top && e.second != top) return false;
    nbr.push_back(e.first == top ? e.second : e.first);
    return true;
  });
  d.edges.push_back({nbr[0], nbr[1]});
  // Renumber to close the gap left by the removed node.
  auto shift = [top](Node x) { return x > top ? x - 1 : x; };
  for (auto& [a, b] : d.edges) {
    a = shift(a);
    b = shift(b);
  }
  for (auto& x : d.leaf_of) x = shift(x);
  --d.nodes;
  return d;
}

namespace detail {

/// Ways to spread a k-dimensional row space over r layers: entry l is the generator
/// combination (bitmask) used as layer l's basis vector, 0 for an unused layer. The nonzero
/// entries form a basis. Index order first (generator l in layer l), then lexicographic.
inline std::vector<unsigned> index_assignment(std::size_t k, std::size_t r) {
  std::vector<unsigned> identity(r, 0);
  for (std::size_t l = 0; l < k; ++l) identity[l] = 1U << l;
  return identity;
}

inline std::vector<std::vector<unsigned>> layer_assignments(std::size_t k, std::size_t r) {
  const auto identity = index_assignment(k, r);
  std::vector<std::vector<unsigned>> out{identity};
  std::vector<unsigned> c(r, 0);
  const unsigned span = 1U << k;
  auto independent = [&] {
    std::vector<unsigned> spanned{0};
    std::size_t nonzero = 0;
    for (unsigned v : c) {
      if (v == 0) continue;
      ++nonzero;
      const std::size_t m = spanned.size();
      for (std::size_t i = 0; i < m; ++i) spanned.push_back(spanned[i] ^ v);
    }
    std::sort(spanned.begin(), spanned.end());
    return nonzero == k && std::unique(spanned.begin(), spanned.end()) == spanned.end();
  };
  while (true) {
    if (c != identity && independent()) out.push_back(c);
    std::size_t l = r;
    while (l > 0 && ++c[l - 1] == span) c[--l] = 0;
    if (l == 0) break;
  }
  return out;
}

/// Largest k and r for which the layer assignment is searched rather than fixed by index.
inline constexpr std::size_t kSearchRank = 3;
inline constexpr std::size_t kSearchLayers = 4;

}  // namespace detail

/// Splits E(G) into r edge sets whose symmetric difference is E(G), where r is the width of D.
/// Recursively cuts the current subtree at its most balanced edge (V_1 the smaller side,
/// ties by the lexicographically smallest V_1) and takes the first independent rows of the
/// V_1 x V_2 matrix in vertex order as generators. Every row of V_1 expands in a basis of
/// their span with one basis vector per layer; uv joins layer l when u's expansion uses
/// layer l's vector and v lies in it. The basis-to-layer assignment is the index order
/// unless that leaves some layer with cut-rank above 1 on a tree edge of the current subtree;
/// then (for small rank) the assignment with the least total excess is taken.
inline std::vector<Graph> xor_rw1_decompose(const Graph& g, const RankDecomposition& d,
                                            std::optional<std::size_t> expected_width = std::nullopt) {
  const std::size_t r = decomposition_width(g, d);
  if (expected_width && *expected_width != r)
    throw PreconditionError("decomposition width is " + std::to_string(r) + ", not " + std::to_string(*expected_width));
  if (r == 0) throw PreconditionError("decomposition width must be at least 1");
  const std::size_t n = g.order();
  std::vector<Graph> layers(r, Graph(n));
  const auto adj = detail::tree_adjacency(d);
  const auto at = detail::vertex_at(d);
  const auto cuts = decomposition_cuts(d);
  std::vector<Bitset> cut_mask;
  for (const auto& c : cuts) cut_mask.push_back(c.mask(n));
  std::map<std::pair<Node, Node>, std::size_t> cut_of;
  for (std::size_t e = 0; e < d.edges.size(); ++e)
    cut_of[{std::min(d.edges[e].first, d.edges[e].second), std::max(d.edges[e].first, d.edges[e].second)}] = e;
  std::vector<std::vector<bool>> cut(d.nodes);
  for (Node x = 0; x < d.nodes; ++x) cut[x].assign(adj[x].size(), false);
  auto sever = [&](Node a, Node b) {
    for (std::size_t i = 0; i < adj[a].size(); ++i)
      if (adj[a][i] == b) cut[a][i] = true;
    for (std::size_t i = 0; i < adj[b].size(); ++i)
      if (adj[b][i] == a) cut[b][i] = true;
  };

  auto solve = [&](auto&& self, Node root) -> void {
    std::vector<Node> order;
    std::vector<Node> parent(d.nodes, kNoNode);
    std::vector<bool> seen(d.nodes, false);
    std::vector<Node> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
      const Node x = stack.back();
      stack.pop_back();
      order.push_back(x);
      for (std::size_t i = 0; i < adj[x].size(); ++i) {
        const Node y = adj[x][i];
        if (cut[x][i] || seen[y]) continue;
        seen[y] = true;
        parent[y] = x;
        stack.push_back(y);
      }
    }
    std::vector<std::vector<Vertex>> below(d.nodes);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const Node x = *it;
      if (at[x] != kNoNode) below[x].push_back(at[x]);
      std::sort(below[x].begin(), below[x].end());
      if (parent[x] != kNoNode)
        below[parent[x]].insert(below[parent[x]].end(), below[x].begin(), below[x].end());
    }
    const auto& all = below[root];
    if (all.size() < 2) return;

    std::optional<std::pair<std::size_t, std::vector<Vertex>>> best;
    Node best_child = kNoNode;
    for (Node c : order) {
      if (c == root) continue;
      const auto& side = below[c];
      if (side.empty() || side.size() == all.size()) continue;
      std::vector<Vertex> other;
      std::set_difference(all.begin(), all.end(), side.begin(), side.end(), std::back_inserter(other));
      std::vector<Vertex> small = side;
      if (other.size() < side.size() || (other.size() == side.size() && other.front() < side.front()))
        small = other;
      std::pair<std::size_t, std::vector<Vertex>> key{std::max(side.size(), other.size()), std::move(small)};
      if (!best || key < *best) {
        best = std::move(key);
        best_child = c;
      }
    }
    if (!best) throw InvariantError("no splitting edge in a subtree with two leaves");
    const VertexSet v1(best->second);
    std::vector<Vertex> v2v;
    std::set_difference(all.begin(), all.end(), v1.begin(), v1.end(), std::back_inserter(v2v));
    const VertexSet v2(std::move(v2v));
    const auto v2_mask = v2.mask(n);

    // Generators and each V_1 row's expansion in them.
    Gf2Basis basis(n);
    std::vector<Bitset> generators;
    std::vector<Bitset> expansion;
    for (Vertex u : v1) {
      Bitset row = detail::row_bits(g, u);
      row &= v2_mask;
      auto combo = basis.insert(row);
      if (!combo) {
        generators.push_back(row);
        if (generators.size() > r) throw InvariantError("cut rank above the decomposition width");
        combo = Bitset(Gf2Basis::kMaxGenerators);
        combo->set(generators.size() - 1);
      }
      expansion.push_back(*combo);
    }
    const std::size_t k = generators.size();

    // Places the cross edges under one assignment (applying twice undoes it); k is small here.
    auto apply = [&](const std::vector<unsigned>& assign) {
      std::vector<unsigned> used;
      std::vector<Bitset> vec;
      for (std::size_t l = 0; l < r; ++l) {
        if (assign[l] == 0) continue;
        used.push_back(static_cast<unsigned>(l));
        Bitset b(n);
        for (std::size_t j = 0; j < k; ++j)
          if ((assign[l] >> j) & 1U) b ^= generators[j];
        vec.push_back(std::move(b));
      }
      // Coordinates of every generator combination in the chosen basis.
      std::vector<unsigned> coords(std::size_t{1} << used.size(), 0);
      for (unsigned s = 0; s < coords.size(); ++s) {
        unsigned combo = 0;
        for (std::size_t i = 0; i < used.size(); ++i)
          if ((s >> i) & 1U) combo ^= assign[used[i]];
        coords[combo] = s;
      }
      for (std::size_t a = 0; a < v1.size(); ++a) {
        unsigned combo = 0;
        for (std::size_t j = 0; j < k; ++j)
          if (expansion[a].test(j)) combo |= 1U << j;
        const unsigned s = coords[combo];
        for (std::size_t i = 0; i < used.size(); ++i)
          if ((s >> i) & 1U) vec[i].for_each([&](Vertex v) { layers[used[i]].toggle_edge(v1[a], v); });
      }
    };
    std::vector<std::size_t> local_cuts;
    for (Node c : order)
      if (c != root) local_cuts.push_back(cut_of.at({std::min(c, parent[c]), std::max(c, parent[c])}));
    auto excess = [&] {
      std::size_t total = 0;
      for (const auto& layer : layers)
        for (std::size_t e : local_cuts) {
          const auto rank = detail::cutrank_masked(layer, cuts[e], cut_mask[e]);
          if (rank > 1) total += rank - 1;
        }
      return total;
    };

    if (k > detail::kSearchRank || r > detail::kSearchLayers) {
      for (std::size_t a = 0; a < v1.size(); ++a)
        expansion[a].for_each([&](std::size_t l) {
          generators[l].for_each([&](Vertex v) { layers[l].toggle_edge(v1[a], v); });
        });
    } else if (k > 0) {
      const auto options = detail::layer_assignments(k, r);
      std::size_t chosen = 0, best_cost = kUnreachable;
      for (std::size_t o = 0; o < options.size() && best_cost > 0; ++o) {
        apply(options[o]);
        const auto cost = excess();
        apply(options[o]);
        if (cost < best_cost) {
          best_cost = cost;
          chosen = o;
        }
      }
      apply(options[chosen]);
    }
    const Node p = parent[best_child];
    sever(p, best_child);
    self(self, best_child);
    self(self, p);
  };
  solve(solve, 0);
  return layers;
}

struct LayerReport {
  bool xor_matches = false;
  /// Largest cut-rank over the tree edges, per layer.
  std::vector<std::size_t> layer_width;
};

inline LayerReport check_layers(const Graph& g, const RankDecomposition& d, const std::vector<Graph>& layers) {
  LayerReport rep;
  Graph sum(g.order());
  for (const auto& l : layers)
    for (auto [u, v] : l.edges()) sum.toggle_edge(u, v);
  rep.xor_matches = sum == g;
  const auto cuts = decomposition_cuts(d);
  for (const auto& l : layers) {
    std::size_t w = 0;
    for (const auto& side : cuts) w = std::max(w, cutrank(l, side));
    rep.layer_width.push_back(w);
  }
  return rep;
}

}  // namespace gentle
