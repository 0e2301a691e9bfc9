#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gentle/cotree.hpp"
#include "gentle/cover_regularity.hpp"
#include "gentle/error.hpp"
#include "gentle/graph.hpp"

namespace gentle {

using Label = std::uint64_t;
using Tuple = std::vector<Label>;
using TupleView = std::span<const Label>;

/// Graph on k-tuples of naturals given by a predicate phi. Edges are x != y and
/// (phi(x, y) or phi(y, x)).
class DefinableGraph {
 public:
  using Predicate = std::function<bool(TupleView, TupleView)>;

  DefinableGraph(std::string name, std::size_t arity, Predicate phi)
      : name_(std::move(name)), arity_(arity), phi_(std::move(phi)) {
    if (arity_ == 0) throw PreconditionError("arity must be positive");
  }

  const std::string& name() const { return name_; }
  std::size_t arity() const { return arity_; }

  bool edge(TupleView x, TupleView y) const {
    if (x.size() != arity_ || y.size() != arity_) throw PreconditionError("tuple arity does not match " + name_);
    if (std::equal(x.begin(), x.end(), y.begin(), y.end())) return false;
    return phi_(x, y) || phi_(y, x);
  }

 private:
  std::string name_;
  std::size_t arity_;
  Predicate phi_;
};

/// Vertex v goes to map[v].
struct Embedding {
  std::size_t arity = 0;
  std::vector<Tuple> map;
};

struct EmbeddingCheck {
  bool ok = true;
  std::string reason;
  std::optional<std::pair<Vertex, Vertex>> witness;
};

/// Injectivity plus adjacency preserved and reflected on every pair.
inline EmbeddingCheck check_embedding(const Graph& g, const Embedding& e, const DefinableGraph& u) {
  if (e.map.size() != g.order()) throw PreconditionError("embedding must map every vertex");
  if (e.arity != u.arity()) throw PreconditionError("embedding arity differs from the target graph");
  for (const auto& t : e.map)
    if (t.size() != e.arity) throw PreconditionError("tuple of wrong length in embedding");
  std::map<Tuple, Vertex> seen;
  for (Vertex v = 0; v < g.order(); ++v) {
    auto [it, fresh] = seen.emplace(e.map[v], v);
    if (!fresh) return {false, "two vertices share a tuple", std::pair{it->second, v}};
  }
  for (Vertex a = 0; a < g.order(); ++a)
    for (Vertex b = a + 1; b < g.order(); ++b)
      if (g.adjacent(a, b) != u.edge(e.map[a], e.map[b]))
        return {false, g.adjacent(a, b) ? "edge not preserved" : "non-edge not preserved", std::pair{a, b}};
  return {};
}

inline bool verify_embedding(const Graph& g, const Embedding& e, const DefinableGraph& u) {
  return check_embedding(g, e, u).ok;
}

/// Arity d+1: some x_i equals y_{d+1}, or some y_i equals x_{d+1}.
inline DefinableGraph degenerate_universe(std::size_t d) {
  return DefinableGraph("deg" + std::to_string(d), d + 1, [d](TupleView x, TupleView y) {
    for (std::size_t i = 0; i <= d; ++i)
      if (x[d] == y[i] || y[d] == x[i]) return true;
    return false;
  });
}

/// Arity d+1: x_{d+1} != y_{d+1} and an odd number of i <= d with x_i = y_i.
inline DefinableGraph sc_universe(std::size_t d) {
  return DefinableGraph("sc" + std::to_string(d), d + 1, [d](TupleView x, TupleView y) {
    if (x[d] == y[d]) return false;
    bool parity = false;
    for (std::size_t i = 0; i < d; ++i) parity ^= x[i] == y[i];
    return parity;
  });
}

struct DegenerateEmbedding {
  std::size_t degeneracy = 0;
  Embedding embedding;
};

/// Labels vertices by reversed peeling position (the first vertex peeled gets n). A vertex maps
/// to the sorted labels of its neighbours with smaller labels, then its own label repeated up
/// to length d+1. `arity_degree` may raise d above the degeneracy.
inline DegenerateEmbedding embed_degenerate(const Graph& g, std::optional<std::size_t> arity_degree = std::nullopt) {
  const auto order = degeneracy_order(g);
  const std::size_t d = arity_degree.value_or(order.degeneracy);
  if (d < order.degeneracy) throw PreconditionError("arity below the degeneracy");
  const std::size_t n = g.order();
  std::vector<Label> label(n);
  for (std::size_t i = 0; i < n; ++i) label[order.ordering[i]] = n - i;
  DegenerateEmbedding out{order.degeneracy, {d + 1, std::vector<Tuple>(n)}};
  for (Vertex v = 0; v < n; ++v) {
    Tuple t;
    g.for_each_neighbor(v, [&](Vertex w) {
      if (label[w] < label[v]) t.push_back(label[w]);
    });
    std::sort(t.begin(), t.end());
    t.resize(d + 1, label[v]);
    out.embedding.map[v] = std::move(t);
  }
  return out;
}

/// Rooted tree of depth d whose leaves, all at depth d, are the vertices (in leaf order),
/// with flip sets A_1..A_d. Level i complements the pairs inside A_i that lie below a
/// common node at depth i-1.
struct SCDecomposition {
  PlaneTree tree;
  std::size_t depth = 0;
  std::vector<VertexSet> flips;
};

inline void validate_sc(const SCDecomposition& D) {
  const auto& t = D.tree;
  if (D.flips.size() != D.depth) throw PreconditionError("need one flip set per level");
  for (Vertex l = 0; l < t.leaf_count(); ++l)
    if (t.depth(t.leaf_node(l)) != D.depth) throw PreconditionError("every leaf must sit at depth d");
  for (const auto& a : D.flips)
    if (!a.empty() && a.members().back() >= t.leaf_count()) throw PreconditionError("flip set names a non-leaf");
}

/// u ~ v iff an odd number of levels i have u, v in A_i and depth(u ∧ v) >= i - 1.
inline bool sc_adjacent(const SCDecomposition& D, Vertex u, Vertex v) {
  if (u == v) return false;
  const auto& t = D.tree;
  const std::size_t meet_depth = t.depth(t.lca(t.leaf_node(u), t.leaf_node(v)));
  bool parity = false;
  for (std::size_t i = 0; i < D.depth && i <= meet_depth; ++i)
    parity ^= D.flips[i].contains(u) && D.flips[i].contains(v);
  return parity;
}

inline Graph sc_graph(const SCDecomposition& D) {
  validate_sc(D);
  const std::size_t n = D.tree.leaf_count();
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (sc_adjacent(D, u, v)) g.add_edge(u, v);
  return g;
}

/// Node ids serve as labels. x_i is the id of the ancestor at depth i-1 when v is in A_i and
/// v's own id otherwise; x_{d+1} is v's own id.
inline Embedding embed_sc(const SCDecomposition& D) {
  validate_sc(D);
  const auto& t = D.tree;
  Embedding e{D.depth + 1, std::vector<Tuple>(t.leaf_count())};
  for (Vertex v = 0; v < t.leaf_count(); ++v) {
    const Node leaf = t.leaf_node(v);
    std::vector<Node> path;  // path[j] = ancestor at depth j
    for (Node x = leaf; x != kNoNode; x = t.parent(x)) path.push_back(x);
    std::reverse(path.begin(), path.end());
    Tuple tup(D.depth + 1, leaf);
    for (std::size_t i = 0; i < D.depth; ++i)
      if (D.flips[i].contains(v)) tup[i] = path[i];
    e.map[v] = std::move(tup);
  }
  return e;
}

/// Pairs {i < j} of [p] in lexicographic order; slot 0 of U_H is followed by these.
inline std::vector<PairKey> cover_pairs(std::size_t p) {
  std::vector<PairKey> out;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) out.emplace_back(i, j);
  return out;
}

/// Arity k q, q = C(p,2) + 1, read as q slots of k labels. For every pair slot s:
/// x_s = x_0, or y_s = y_0, or x_s ~ y_s in U.
inline DefinableGraph cover_universe(const DefinableGraph& u, std::size_t p) {
  const std::size_t k = u.arity(), q = p * (p - 1) / 2 + 1;
  return DefinableGraph("cover" + std::to_string(p) + "(" + u.name() + ")", k * q, [u, k, q](TupleView x, TupleView y) {
    auto slot = [k](TupleView t, std::size_t s) { return t.subspan(s * k, k); };
    auto same = [](TupleView a, TupleView b) { return std::equal(a.begin(), a.end(), b.begin(), b.end()); };
    for (std::size_t s = 1; s < q; ++s) {
      if (same(slot(x, s), slot(x, 0)) || same(slot(y, s), slot(y, 0))) continue;
      if (!u.edge(slot(x, s), slot(y, s))) return false;
    }
    return true;
  });
}

/// Pair embeddings are over the pair graphs numbered as in pair_vertices.
using PairEmbeddings = std::map<PairKey, Embedding>;

/// Combines embeddings of every G[V_i ∪ V_j] into U into one embedding of G into U_H.
/// Vertex u of V_i gets the fresh value z(u) = (1 + max label + u) in slot 0 and in every
/// slot not involving i, and its pair embedding elsewhere.
inline Embedding embed_two_cover(const Graph& g, const TwoCover& cover, const PairEmbeddings& pairs,
                                 const DefinableGraph& u) {
  validate_cover(g, cover);
  const std::size_t p = cover.magnitude(), k = u.arity(), n = g.order();
  const auto keys = cover_pairs(p);
  std::vector<std::size_t> side(n);
  for (std::size_t i = 0; i < p; ++i)
    for (Vertex v : cover.parts.blocks[i]) side[v] = i;

  Label top = 0;
  // local[(i,j)][v] = position of v in pair_vertices(i, j)
  std::map<PairKey, std::vector<std::size_t>> local;
  for (const auto& key : keys) {
    const auto it = pairs.find(key);
    const std::string name = "pair (" + std::to_string(key.first) + "," + std::to_string(key.second) + ")";
    if (it == pairs.end()) throw ContractError(name + ": missing embedding");
    const auto vs = pair_vertices(cover, key.first, key.second);
    const Graph h = g.induced_subgraph(vs);
    try {
      const auto check = check_embedding(h, it->second, u);
      if (!check.ok) throw ContractError(name + ": " + check.reason);
    } catch (const PreconditionError& e) {
      throw ContractError(name + ": " + e.what());
    }
    for (const auto& t : it->second.map)
      for (Label l : t) top = std::max(top, l);
    auto& pos = local[key];
    pos.assign(n, kUnreachable);
    for (std::size_t i = 0; i < vs.size(); ++i) pos[vs[i]] = i;
  }

  Embedding out{k * keys.size() + k, std::vector<Tuple>(n)};
  for (Vertex v = 0; v < n; ++v) {
    const Tuple z(k, top + 1 + v);
    Tuple t = z;
    for (const auto& key : keys) {
      if (key.first == side[v] || key.second == side[v]) {
        const auto& f = pairs.at(key).map[local[key][v]];
        t.insert(t.end(), f.begin(), f.end());
      } else {
        t.insert(t.end(), z.begin(), z.end());
      }
    }
    out.map[v] = std::move(t);
  }
  return out;
}

struct OrderRule {
  /// Leaves in left-to-right order.
  std::vector<Vertex> order;
  Graph g1;
  Graph g2;
  bool verdict = false;
};

/// For 2-coloured cotrees: G1 joins at x iff f_x(0, 1), G2 iff f_x(1, 0). A colour-0 vertex u
/// and colour-1 vertex v are adjacent iff (u before v and uv in G1) or (v before u and uv in G2).
inline OrderRule two_partite_order_rule(const EmbeddedCotree& c) {
  if (c.colors() != 2) throw PreconditionError("order rule needs exactly two colours");
  const auto& t = c.tree();
  std::vector<NodeFn> f1(t.node_count()), f2(t.node_count());
  for (Node x = 0; x < t.node_count(); ++x) {
    if (t.is_leaf(x)) continue;
    f1[x] = fn_constant(1, fn_bit(c.fn(x), 2, 0, 1));
    f2[x] = fn_constant(1, fn_bit(c.fn(x), 2, 1, 0));
  }
  const std::vector<std::size_t> mono(t.leaf_count(), 0);
  OrderRule out;
  for (Vertex v = 0; v < t.leaf_count(); ++v) out.order.push_back(v);
  out.g1 = materialize(EmbeddedCotree(t, 1, mono, f1));
  out.g2 = materialize(EmbeddedCotree(t, 1, mono, f2));
  const Graph g = materialize(c);
  out.verdict = true;
  for (Vertex u = 0; u < t.leaf_count() && out.verdict; ++u) {
    if (c.color(u) != 0) continue;
    for (Vertex v = 0; v < t.leaf_count(); ++v) {
      if (c.color(v) != 1) continue;
      const bool rule = u < v ? out.g1.adjacent(u, v) : out.g2.adjacent(u, v);
      if (rule != g.adjacent(u, v)) {
        out.verdict = false;
        break;
      }
    }
  }
  return out;
}

}  // namespace gentle
