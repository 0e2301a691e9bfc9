#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gentle/error.hpp"
#include "gentle/graph.hpp"

namespace gentle {

using Node = std::size_t;
inline constexpr Node kNoNode = std::numeric_limits<Node>::max();

/// Rooted tree with ordered children. Leaves, taken in left-to-right DFS order,
/// are numbered 0..leaf_count()-1; these numbers are the vertices of any graph
/// generated from the tree.
class PlaneTree {
 public:
  PlaneTree() = default;

  PlaneTree(std::vector<std::vector<Node>> children, Node root)
      : children_(std::move(children)), root_(root) {
    build();
  }

  /// Builds from a parent array; children keep increasing node order.
  static PlaneTree from_parents(std::span<const Node> parent) {
    std::vector<std::vector<Node>> children(parent.size());
    Node root = kNoNode;
    for (Node v = 0; v < parent.size(); ++v) {
      if (parent[v] == kNoNode) {
        if (root != kNoNode) throw PreconditionError("plane tree has two roots");
        root = v;
      } else {
        if (parent[v] >= parent.size()) throw PreconditionError("parent index out of range");
        children[parent[v]].push_back(v);
      }
    }
    if (root == kNoNode) throw PreconditionError("plane tree has no root");
    return PlaneTree(std::move(children), root);
  }

  std::size_t node_count() const { return children_.size(); }
  Node root() const { return root_; }
  Node parent(Node v) const { return parent_[v]; }
  std::span<const Node> children(Node v) const { return children_[v]; }
  bool is_leaf(Node v) const { return children_[v].empty(); }
  std::size_t depth(Node v) const { return depth_[v]; }
  /// Position of v among its parent's children.
  std::size_t child_index(Node v) const { return child_index_[v]; }

  std::size_t leaf_count() const { return leaves_.size(); }
  Node leaf_node(Vertex leaf) const { return leaves_[leaf]; }
  /// Leaf number of a leaf node; kNoNode for internal nodes.
  Vertex leaf_index(Node v) const { return leaf_index_[v]; }
  /// Leaves of T_v are exactly [first, last).
  std::pair<Vertex, Vertex> leaf_range(Node v) const { return {leaf_lo_[v], leaf_hi_[v]}; }

  /// Nodes in preorder; T_v occupies preorder positions [pre(v), pre(v) + subtree_size(v)).
  std::span<const Node> preorder() const { return preorder_; }
  std::size_t pre(Node v) const { return pre_[v]; }
  std::size_t subtree_size(Node v) const { return size_[v]; }
  bool is_ancestor(Node a, Node b) const {
    return pre_[a] <= pre_[b] && pre_[b] < pre_[a] + size_[a];
  }

  /// Least common ancestor via Euler tour + sparse table.
  Node lca(Node u, Node v) const {
    std::size_t a = first_[u], b = first_[v];
    if (a > b) std::swap(a, b);
    const std::size_t k = log2_floor(b - a + 1);
    const Node x = sparse_[k][a];
    const Node y = sparse_[k][b + 1 - (std::size_t{1} << k)];
    return depth_[x] <= depth_[y] ? x : y;
  }

 private:
  static std::size_t log2_floor(std::size_t x) {
    return static_cast<std::size_t>(std::bit_width(x)) - 1;
  }

  void build() {
    const std::size_t n = children_.size();
    if (n == 0 || root_ >= n) throw PreconditionError("plane tree needs a root inside the node range");
    parent_.assign(n, kNoNode);
    child_index_.assign(n, 0);
    for (Node v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < children_[v].size(); ++i) {
        const Node c = children_[v][i];
        if (c >= n) throw PreconditionError("child index out of range");
        if (c == root_ || parent_[c] != kNoNode)
          throw PreconditionError("node " + std::to_string(c) + " has more than one parent");
        parent_[c] = v;
        child_index_[c] = i;
      }
    }
    depth_.assign(n, 0);
    pre_.assign(n, 0);
    size_.assign(n, 1);
    leaf_index_.assign(n, kNoNode);
    leaf_lo_.assign(n, 0);
    leaf_hi_.assign(n, 0);
    first_.assign(n, 0);
    preorder_.clear();
    leaves_.clear();
    euler_.clear();

    // Iterative DFS: (node, next child position).
    std::vector<std::pair<Node, std::size_t>> stack{{root_, 0}};
    pre_[root_] = 0;
    preorder_.push_back(root_);
    first_[root_] = 0;
    euler_.push_back(root_);
    leaf_lo_[root_] = 0;
    if (children_[root_].empty()) {
      leaf_index_[root_] = 0;
      leaves_.push_back(root_);
    }
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < children_[v].size()) {
        const Node c = children_[v][next++];
        depth_[c] = depth_[v] + 1;
        pre_[c] = preorder_.size();
        preorder_.push_back(c);
        first_[c] = euler_.size();
        euler_.push_back(c);
        leaf_lo_[c] = leaves_.size();
        if (children_[c].empty()) {
          leaf_index_[c] = leaves_.size();
          leaves_.push_back(c);
        }
        stack.emplace_back(c, 0);
      } else {
        const Node done = v;
        leaf_hi_[done] = leaves_.size();
        size_[done] = preorder_.size() - pre_[done];
        stack.pop_back();
        if (!stack.empty()) euler_.push_back(stack.back().first);
      }
    }
    if (preorder_.size() != n) throw PreconditionError("plane tree is not connected");

    const std::size_t m = euler_.size();
    sparse_.assign(1, euler_);
    for (std::size_t k = 1; (std::size_t{1} << k) <= m; ++k) {
      const auto& prev = sparse_[k - 1];
      std::vector<Node> cur(m - (std::size_t{1} << k) + 1);
      for (std::size_t i = 0; i < cur.size(); ++i) {
        const Node x = prev[i];
        const Node y = prev[i + (std::size_t{1} << (k - 1))];
        cur[i] = depth_[x] <= depth_[y] ? x : y;
      }
      sparse_.push_back(std::move(cur));
    }
  }

  std::vector<std::vector<Node>> children_;
  Node root_ = 0;
  std::vector<Node> parent_;
  std::vector<std::size_t> child_index_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> pre_;
  std::vector<std::size_t> size_;
  std::vector<Node> preorder_;
  std::vector<Node> leaves_;
  std::vector<Vertex> leaf_index_;
  std::vector<Vertex> leaf_lo_, leaf_hi_;
  std::vector<std::size_t> first_;
  std::vector<Node> euler_;
  std::vector<std::vector<Node>> sparse_;
};

struct Meet {
  Node meet;
  bool u_is_left;
};

/// u ∧ v for two distinct leaves, and whether u's branch is left of v's.
inline Meet lca_with_side(const PlaneTree& t, Vertex u, Vertex v) {
  if (u >= t.leaf_count() || v >= t.leaf_count()) throw PreconditionError("leaf out of range");
  if (u == v) throw PreconditionError("lca_with_side needs two distinct leaves");
  return {t.lca(t.leaf_node(u), t.leaf_node(v)), u < v};
}

/// An m x m boolean matrix packed row-major into 64 bits (m <= 8).
using NodeFn = std::uint64_t;
inline constexpr std::size_t kMaxColors = 8;

inline bool fn_bit(NodeFn f, std::size_t m, std::size_t s, std::size_t t) {
  return (f >> (s * m + t)) & 1U;
}
inline NodeFn fn_set(NodeFn f, std::size_t m, std::size_t s, std::size_t t, bool on) {
  const NodeFn bit = NodeFn{1} << (s * m + t);
  return on ? (f | bit) : (f & ~bit);
}
inline NodeFn fn_transpose(NodeFn f, std::size_t m) {
  NodeFn out = 0;
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = 0; t < m; ++t) out = fn_set(out, m, t, s, fn_bit(f, m, s, t));
  return out;
}
inline NodeFn fn_constant(std::size_t m, bool on) {
  return on ? (m * m == 64 ? ~NodeFn{0} : (NodeFn{1} << (m * m)) - 1) : 0;
}

/// Plane tree with leaf colours in [0, m) and a function [m] x [m] -> {0,1} on each
/// internal node. Leaves u, v (u left of v) are adjacent iff fn[u ∧ v](colour u, colour v).
class EmbeddedCotree {
 public:
  EmbeddedCotree() = default;

  /// `leaf_color` is indexed by leaf number; `node_fn` by node (entries of leaves ignored).
  EmbeddedCotree(PlaneTree tree, std::size_t m, std::vector<std::size_t> leaf_color,
                 std::vector<NodeFn> node_fn)
      : tree_(std::move(tree)), m_(m), color_(std::move(leaf_color)), fn_(std::move(node_fn)) {
    if (m_ == 0 || m_ > kMaxColors) throw PreconditionError("m must lie in [1, 8]");
    if (color_.size() != tree_.leaf_count()) throw PreconditionError("one colour per leaf required");
    if (fn_.size() != tree_.node_count()) throw PreconditionError("one function per node required");
    for (auto c : color_)
      if (c >= m_) throw PreconditionError("leaf colour out of range");
    const NodeFn mask = fn_constant(m_, true);
    for (Node v = 0; v < fn_.size(); ++v) {
      if (tree_.is_leaf(v)) fn_[v] = 0;
      else if ((fn_[v] & ~mask) != 0) throw PreconditionError("node function has bits beyond m x m");
    }
  }

  const PlaneTree& tree() const { return tree_; }
  std::size_t colors() const { return m_; }
  std::size_t vertex_count() const { return tree_.leaf_count(); }
  std::size_t color(Vertex leaf) const { return color_[leaf]; }
  NodeFn fn(Node v) const { return fn_[v]; }
  const std::vector<std::size_t>& leaf_colors() const { return color_; }
  const std::vector<NodeFn>& node_fns() const { return fn_; }

 private:
  PlaneTree tree_;
  std::size_t m_ = 1;
  std::vector<std::size_t> color_;
  std::vector<NodeFn> fn_;
};

inline bool cotree_adjacent(const EmbeddedCotree& c, Vertex u, Vertex v) {
  const auto [w, u_left] = lca_with_side(c.tree(), u, v);
  const auto m = c.colors();
  return u_left ? fn_bit(c.fn(w), m, c.color(u), c.color(v))
                : fn_bit(c.fn(w), m, c.color(v), c.color(u));
}

/// The generated graph on the leaves, built child-pair by child-pair at each node.
inline Graph materialize(const EmbeddedCotree& c) {
  const auto& t = c.tree();
  const auto m = c.colors();
  Graph g(t.leaf_count());
  for (Node x = 0; x < t.node_count(); ++x) {
    const auto kids = t.children(x);
    if (kids.size() < 2) continue;
    const NodeFn f = c.fn(x);
    if (f == 0) continue;
    for (std::size_t a = 0; a < kids.size(); ++a) {
      const auto [alo, ahi] = t.leaf_range(kids[a]);
      for (std::size_t b = a + 1; b < kids.size(); ++b) {
        const auto [blo, bhi] = t.leaf_range(kids[b]);
        for (Vertex u = alo; u < ahi; ++u)
          for (Vertex v = blo; v < bhi; ++v)
            if (fn_bit(f, m, c.color(u), c.color(v))) g.add_edge(u, v);
      }
    }
  }
  return g;
}

/// Cotree restricted to the kept leaves (indexed by leaf number). Nodes whose subtree
/// keeps no leaf are dropped; functions and relative order survive.
inline EmbeddedCotree induced_cotree(const EmbeddedCotree& c, const std::vector<bool>& keep) {
  const auto& t = c.tree();
  if (keep.size() != t.leaf_count()) throw PreconditionError("keep mask must cover every leaf");
  std::vector<bool> alive(t.node_count(), false);
  const auto pre = t.preorder();
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
    const Node v = *it;
    if (t.is_leaf(v)) alive[v] = keep[t.leaf_index(v)];
    for (Node ch : t.children(v)) alive[v] = alive[v] || alive[ch];
  }
  if (!alive[t.root()]) throw PreconditionError("induced cotree would be empty");
  std::vector<Node> renum(t.node_count(), kNoNode);
  std::size_t next = 0;
  for (Node v : pre)
    if (alive[v]) renum[v] = next++;
  std::vector<std::vector<Node>> children(next);
  std::vector<NodeFn> fns(next, 0);
  std::vector<std::size_t> colors;
  for (Node v : pre) {
    if (!alive[v]) continue;
    fns[renum[v]] = c.fn(v);
    for (Node ch : t.children(v))
      if (alive[ch]) children[renum[v]].push_back(renum[ch]);
    if (t.is_leaf(v)) colors.push_back(c.color(t.leaf_index(v)));
  }
  // A kept internal node can end up childless only if it had no leaves, which `alive` excludes.
  return EmbeddedCotree(PlaneTree(std::move(children), renum[t.root()]), c.colors(),
                        std::move(colors), std::move(fns));
}

}  // namespace gentle
