#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "gentle/cotree.hpp"
#include "gentle/error.hpp"
#include "gentle/rational.hpp"

namespace gentle {

/// Probability measure on the nodes of a tree, stored as integer weights over a common total.
struct TreeMeasure {
  std::vector<std::int64_t> weight;
  std::int64_t total = 1;

  Rational of(Node v) const { return Rational(weight[v], total); }

  /// 1/L on each of the L leaves, 0 elsewhere.
  static TreeMeasure uniform_leaves(const PlaneTree& t) {
    TreeMeasure mu;
    mu.weight.assign(t.node_count(), 0);
    for (Vertex l = 0; l < t.leaf_count(); ++l) mu.weight[t.leaf_node(l)] = 1;
    mu.total = static_cast<std::int64_t>(t.leaf_count());
    return mu;
  }

  /// From per-node rationals summing to exactly 1.
  static TreeMeasure from_rationals(const std::vector<Rational>& values) {
    std::int64_t den = 1;
    for (const auto& r : values) {
      if (r < 0) throw PreconditionError("measure values must be non-negative");
      const auto g = std::gcd(den, r.denominator());
      const __int128 next = static_cast<__int128>(den / g) * r.denominator();
      if (next > (std::int64_t{1} << 62)) throw PreconditionError("measure denominators too large");
      den = static_cast<std::int64_t>(next);
    }
    TreeMeasure mu;
    mu.total = den;
    __int128 sum = 0;
    for (const auto& r : values) {
      mu.weight.push_back(r.numerator() * (den / r.denominator()));
      sum += mu.weight.back();
    }
    if (sum != den) throw PreconditionError("measure must sum to 1");
    return mu;
  }

  std::vector<Rational> to_rationals() const {
    std::vector<Rational> out;
    out.reserve(weight.size());
    for (auto w : weight) out.emplace_back(w, total);
    return out;
  }
};

enum class VertexClass { Light, Terminal, Singular, Chaining, Branching, Other };

inline const char* to_string(VertexClass c) {
  switch (c) {
    case VertexClass::Light: return "light";
    case VertexClass::Terminal: return "terminal";
    case VertexClass::Singular: return "singular";
    case VertexClass::Chaining: return "chaining";
    case VertexClass::Branching: return "branching";
    case VertexClass::Other: return "other";
  }
  return "?";
}

namespace detail {

inline bool weight_at_most(std::int64_t w, std::int64_t total, const Rational& eps) {
  return static_cast<__int128>(w) * eps.denominator() <= static_cast<__int128>(eps.numerator()) * total;
}

/// Subtree weights and vertex classes for one (T, mu, eps).
struct TreeClasses {
  std::vector<std::int64_t> sub;
  std::vector<VertexClass> cls;
  /// The unique non-light child of a singular or chaining vertex.
  std::vector<Node> heavy;

  TreeClasses(const PlaneTree& t, const TreeMeasure& mu, const Rational& eps) {
    if (mu.weight.size() != t.node_count()) throw PreconditionError("measure must assign every node");
    if (mu.total <= 0) throw PreconditionError("measure total must be positive");
    if (eps <= 0) throw PreconditionError("epsilon must be positive");
    for (Node v = 0; v < t.node_count(); ++v) {
      if (mu.weight[v] < 0) throw PreconditionError("measure values must be non-negative");
      if (!weight_at_most(mu.weight[v], mu.total, eps))
        throw PreconditionError("node " + std::to_string(v) + " carries more than epsilon");
    }
    const std::size_t n = t.node_count();
    sub.assign(n, 0);
    cls.assign(n, VertexClass::Other);
    heavy.assign(n, kNoNode);
    const auto pre = t.preorder();
    for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
      const Node v = *it;
      sub[v] = mu.weight[v];
      for (Node c : t.children(v)) sub[v] += sub[c];
    }
    for (Node v = 0; v < n; ++v) {
      if (weight_at_most(sub[v], mu.total, eps)) {
        cls[v] = VertexClass::Light;
        continue;
      }
      std::size_t heavy_count = 0;
      std::int64_t light_mass = mu.weight[v];
      for (Node c : t.children(v)) {
        if (weight_at_most(sub[c], mu.total, eps)) light_mass += sub[c];
        else {
          ++heavy_count;
          heavy[v] = c;
        }
      }
      if (t.is_leaf(v)) cls[v] = VertexClass::Other;
      else if (heavy_count == 0) cls[v] = VertexClass::Terminal;
      else if (heavy_count >= 2) {
        cls[v] = VertexClass::Branching;
        heavy[v] = kNoNode;
      } else
        cls[v] = weight_at_most(light_mass, mu.total, eps) ? VertexClass::Chaining : VertexClass::Singular;
    }
  }
};

/// Splits a sequence of atom weights into maximal consecutive runs of weight <= eps,
/// greedily from the left. Returns run start indices.
inline std::vector<std::size_t> greedy_runs(const std::vector<std::int64_t>& atoms, std::int64_t total,
                                            const Rational& eps) {
  std::vector<std::size_t> starts;
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!weight_at_most(atoms[i], total, eps)) throw InvariantError("atom heavier than epsilon");
    if (starts.empty() || !weight_at_most(acc + atoms[i], total, eps)) {
      starts.push_back(i);
      acc = 0;
    }
    acc += atoms[i];
  }
  return starts;
}

}  // namespace detail

inline VertexClass classify(const PlaneTree& t, const TreeMeasure& mu, const Rational& eps, Node v) {
  if (v >= t.node_count()) throw PreconditionError("node out of range");
  return detail::TreeClasses(t, mu, eps).cls[v];
}

inline std::vector<VertexClass> classify_all(const PlaneTree& t, const TreeMeasure& mu, const Rational& eps) {
  return detail::TreeClasses(t, mu, eps).cls;
}

enum class PartKind { Type1 = 1, Type2 = 2, Type3 = 3 };

/// Type1: {attachment} ∪ T_x for children x in [first, last) of the attachment.
/// Type2: the same without the attachment; the interval is non-empty.
/// Type3: T_attachment ∖ T_cut for a proper descendant cut.
struct TreePart {
  PartKind kind = PartKind::Type1;
  Node attachment = kNoNode;
  std::size_t first = 0;
  std::size_t last = 0;
  Node cut = kNoNode;
  std::vector<Node> members;

  friend bool operator==(const TreePart&, const TreePart&) = default;
};

struct MeasuredTreePartition {
  std::vector<TreePart> parts;
};

/// Nodes the part's shape describes, sorted; empty if the shape is malformed.
inline std::vector<Node> part_shape_members(const PlaneTree& t, const TreePart& p) {
  std::vector<Node> out;
  const std::size_t n = t.node_count();
  if (p.attachment >= n) return out;
  const auto pre = t.preorder();
  auto add_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) out.push_back(pre[i]);
  };
  const Node a = p.attachment;
  if (p.kind == PartKind::Type3) {
    if (p.cut >= n || p.cut == a || !t.is_ancestor(a, p.cut)) return out;
    add_range(t.pre(a), t.pre(p.cut));
    add_range(t.pre(p.cut) + t.subtree_size(p.cut), t.pre(a) + t.subtree_size(a));
  } else {
    const auto kids = t.children(a);
    if (p.first > p.last || p.last > kids.size()) return out;
    if (p.kind == PartKind::Type1) out.push_back(a);
    if (p.first < p.last) {
      const Node lo = kids[p.first], hi = kids[p.last - 1];
      add_range(t.pre(lo), t.pre(hi) + t.subtree_size(hi));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Nodes between a Type3 part's attachment and its cut, top first (cut excluded).
inline std::vector<Node> part_spine(const PlaneTree& t, const TreePart& p) {
  std::vector<Node> path;
  if (p.kind != PartKind::Type3) return path;
  for (Node x = t.parent(p.cut); x != kNoNode; x = t.parent(x)) {
    path.push_back(x);
    if (x == p.attachment) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

struct TreePartitionStats {
  std::size_t atoms = 0;
  std::size_t groups = 0;
  std::size_t thick_groups = 0;
};

/// ε-partition of a measured plane tree. Every node must carry at most ε.
/// Atoms: T_v ∖ T_w for chaining v and its non-light child w; T_u for light u whose parent
/// is not light; {v} for every other non-light v. Groups: chaining regions; {u} with the
/// leftmost run of light children; further runs of light children. Groups heavier than ε
/// are cut into maximal runs of atoms, greedily from the left.
inline MeasuredTreePartition build_eps_partition(const PlaneTree& t, const TreeMeasure& mu, const Rational& eps,
                                                 TreePartitionStats* stats = nullptr) {
  if (t.node_count() < 2) throw PreconditionError("tree needs at least two nodes");
  const detail::TreeClasses tc(t, mu, eps);
  const auto W = mu.total;
  MeasuredTreePartition out;
  TreePartitionStats st;
  auto light = [&](Node v) { return tc.cls[v] == VertexClass::Light; };

  auto finish = [&](TreePart p) {
    p.members = part_shape_members(t, p);
    out.parts.push_back(std::move(p));
  };

  const Node root = t.root();
  if (light(root)) {
    st.atoms = st.groups = 1;
    finish(TreePart{PartKind::Type1, root, 0, t.children(root).size(), kNoNode, {}});
    if (stats) *stats = st;
    return out;
  }

  for (Node v : t.preorder()) {
    const auto cls = tc.cls[v];
    if (cls == VertexClass::Light) continue;
    if (cls == VertexClass::Chaining) {
      const Node par = t.parent(v);
      if (par != kNoNode && tc.cls[par] == VertexClass::Chaining) continue;
      std::vector<Node> chain{v};
      Node w = tc.heavy[v];
      while (tc.cls[w] == VertexClass::Chaining) {
        chain.push_back(w);
        w = tc.heavy[w];
      }
      std::vector<std::int64_t> atoms;
      for (std::size_t i = 0; i < chain.size(); ++i)
        atoms.push_back(tc.sub[chain[i]] - tc.sub[i + 1 < chain.size() ? chain[i + 1] : w]);
      st.atoms += atoms.size();
      ++st.groups;
      if (!detail::weight_at_most(tc.sub[v] - tc.sub[w], W, eps)) ++st.thick_groups;
      const auto starts = detail::greedy_runs(atoms, W, eps);
      for (std::size_t r = 0; r < starts.size(); ++r) {
        const std::size_t end = r + 1 < starts.size() ? starts[r + 1] : chain.size();
        finish(TreePart{PartKind::Type3, chain[starts[r]], 0, 0, end < chain.size() ? chain[end] : w, {}});
      }
      continue;
    }
    // Non-light, not chaining: {v} plus runs of light children.
    const auto kids = t.children(v);
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    for (std::size_t i = 0; i < kids.size();) {
      if (!light(kids[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < kids.size() && light(kids[j])) ++j;
      runs.emplace_back(i, j);
      i = j;
    }
    ++st.atoms;  // {v}
    for (auto [lo, hi] : runs) st.atoms += hi - lo;

    // Group (2): {v} ∪ leftmost run. Atom 0 is {v}; atom k is child lo + k - 1.
    {
      const auto [lo, hi] = runs.empty() ? std::pair<std::size_t, std::size_t>{0, 0} : runs.front();
      std::vector<std::int64_t> atoms{mu.weight[v]};
      std::int64_t sum = mu.weight[v];
      for (std::size_t i = lo; i < hi; ++i) {
        atoms.push_back(tc.sub[kids[i]]);
        sum += tc.sub[kids[i]];
      }
      ++st.groups;
      if (!detail::weight_at_most(sum, W, eps)) ++st.thick_groups;
      const auto starts = detail::greedy_runs(atoms, W, eps);
      for (std::size_t r = 0; r < starts.size(); ++r) {
        const std::size_t end = r + 1 < starts.size() ? starts[r + 1] : atoms.size();
        if (r == 0)
          finish(TreePart{PartKind::Type1, v, lo, lo + end - 1, kNoNode, {}});
        else
          finish(TreePart{PartKind::Type2, v, lo + starts[r] - 1, lo + end - 1, kNoNode, {}});
      }
    }
    // Groups (3): every later run.
    for (std::size_t g = 1; g < runs.size(); ++g) {
      const auto [lo, hi] = runs[g];
      std::vector<std::int64_t> atoms;
      std::int64_t sum = 0;
      for (std::size_t i = lo; i < hi; ++i) {
        atoms.push_back(tc.sub[kids[i]]);
        sum += tc.sub[kids[i]];
      }
      ++st.groups;
      if (!detail::weight_at_most(sum, W, eps)) ++st.thick_groups;
      const auto starts = detail::greedy_runs(atoms, W, eps);
      for (std::size_t r = 0; r < starts.size(); ++r) {
        const std::size_t end = r + 1 < starts.size() ? starts[r + 1] : atoms.size();
        finish(TreePart{PartKind::Type2, v, lo + starts[r], lo + end, kNoNode, {}});
      }
    }
  }
  if (stats) *stats = st;
  return out;
}

struct PartitionViolation {
  /// Index of the offending part, or kNoNode for whole-partition clauses.
  std::size_t part = kNoNode;
  std::string clause;
  std::string detail;
};

struct PartitionVerdict {
  bool ok = true;
  std::vector<PartitionViolation> violations;
};

/// Checks every clause of an ε-partition: node weights at most ε, part shapes, members
/// matching the shape, part measures at most ε, disjoint cover, and that each Type2
/// attachment is also the attachment of some Type1 part.
/// A Type1 part may have an empty child interval (it is then {attachment}).
inline PartitionVerdict verify_eps_partition(const PlaneTree& t, const TreeMeasure& mu, const Rational& eps,
                                             const MeasuredTreePartition& p) {
  PartitionVerdict v;
  auto fail = [&](std::size_t part, std::string clause, std::string detail) {
    v.ok = false;
    v.violations.push_back({part, std::move(clause), std::move(detail)});
  };
  const std::size_t n = t.node_count();
  if (mu.weight.size() != n || mu.total <= 0) {
    fail(kNoNode, "measure", "measure does not match the tree");
    return v;
  }
  if (eps <= 0) fail(kNoNode, "epsilon", "epsilon must be positive");
  for (Node x = 0; x < n; ++x)
    if (!detail::weight_at_most(mu.weight[x], mu.total, eps))
      fail(kNoNode, "node-weight", "node " + std::to_string(x) + " carries more than epsilon");

  std::vector<std::size_t> owner(n, kNoNode);
  std::vector<bool> type1_attach(n, false);
  for (const auto& part : p.parts)
    if (part.kind == PartKind::Type1 && part.attachment < n) type1_attach[part.attachment] = true;

  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    const auto& part = p.parts[i];
    const auto expect = part_shape_members(t, part);
    if (expect.empty()) {
      fail(i, "shape", "malformed attachment, interval or cut");
      continue;
    }
    if (part.kind == PartKind::Type2 && part.first >= part.last) fail(i, "shape", "type 2 part with empty interval");
    auto given = part.members;
    std::sort(given.begin(), given.end());
    if (given != expect) fail(i, "members", "member list differs from the part's shape");
    std::int64_t w = 0;
    for (Node x : expect) {
      w += mu.weight[x];
      if (owner[x] != kNoNode)
        fail(i, "disjoint", "node " + std::to_string(x) + " also in part " + std::to_string(owner[x]));
      else
        owner[x] = i;
    }
    if (!detail::weight_at_most(w, mu.total, eps)) fail(i, "measure", "part measure exceeds epsilon");
    if (part.kind == PartKind::Type2 && !type1_attach[part.attachment])
      fail(i, "attachment", "type 2 attachment " + std::to_string(part.attachment) + " has no type 1 part");
  }
  for (Node x = 0; x < n; ++x)
    if (owner[x] == kNoNode) fail(kNoNode, "cover", "node " + std::to_string(x) + " is in no part");
  return v;
}

/// μ(part) as an exact rational.
inline Rational part_measure(const TreeMeasure& mu, const TreePart& p) {
  std::int64_t w = 0;
  for (Node x : p.members) w += mu.weight[x];
  return Rational(w, mu.total);
}

}  // namespace gentle
