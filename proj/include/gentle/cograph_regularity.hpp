#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <tuple>
#include <vector>

#include "gentle/cotree.hpp"
#include "gentle/error.hpp"
#include "gentle/rational.hpp"
#include "gentle/regularity.hpp"
#include "gentle/tree_partition.hpp"

namespace gentle {

inline TreeMeasure leaf_uniform_measure(const EmbeddedCotree& c) {
  if (c.vertex_count() < 2) throw PreconditionError("cotree needs at least two leaves");
  return TreeMeasure::uniform_leaves(c.tree());
}

struct RefinedPartition {
  VertexPartition partition;
  /// Tree part each block came from.
  std::vector<std::size_t> block_part;
};

/// Splits the leaves of every tree part into pieces. Leaves of a Type1/Type2 part are
/// grouped by colour. Leaves of a Type3 part are grouped by (side of the cut branch,
/// function of the spine node they hang from, colour). Any two pieces from different
/// tree parts then form a homogeneous pair.
inline RefinedPartition refine_tree_partition(const EmbeddedCotree& c, const MeasuredTreePartition& p) {
  const auto& t = c.tree();
  const auto check = verify_eps_partition(t, TreeMeasure::uniform_leaves(t), Rational(1), p);
  if (!check.ok) {
    const auto& v = check.violations.front();
    throw PreconditionError("invalid tree partition (" + v.clause + "): " + v.detail);
  }
  RefinedPartition out;
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    const auto& part = p.parts[i];
    std::map<std::tuple<int, NodeFn, std::size_t>, std::vector<Vertex>> pieces;
    const Vertex cut_lo = part.kind == PartKind::Type3 ? t.leaf_range(part.cut).first : 0;
    for (Node x : part.members) {
      if (!t.is_leaf(x)) continue;
      const Vertex leaf = t.leaf_index(x);
      std::tuple<int, NodeFn, std::size_t> key{0, 0, c.color(leaf)};
      if (part.kind == PartKind::Type3) {
        const Node spine = t.lca(x, part.cut);
        key = {leaf < cut_lo ? 0 : 1, c.fn(spine), c.color(leaf)};
      }
      pieces[key].push_back(leaf);
    }
    for (auto& [key, leaves] : pieces) {
      std::sort(leaves.begin(), leaves.end());
      out.partition.blocks.push_back(std::move(leaves));
      out.block_part.push_back(i);
    }
  }
  return out;
}

/// 128 m 2^{m^2} / eps.
inline double cograph_block_bound(std::size_t m, const Rational& eps) {
  return 128.0 / to_double(eps) * static_cast<double>(m) * std::ldexp(1.0, static_cast<int>(m * m));
}

struct CographRegularity {
  VertexPartition partition;
  MeasuredTreePartition tree_partition;
  std::vector<std::size_t> block_part;
  Rational defect;
  /// Σ μ(P)^2 over tree parts: the defect can only come from pairs inside one part.
  Rational accounted;
};

/// ε-nice partition of the graph of an embedded cograph with at most 128 m 2^{m^2} / ε blocks:
/// uniform leaf measure, an (ε/8)-partition of the tree, then refinement by colour and spine data.
inline CographRegularity cograph_regular_partition_detailed(const EmbeddedCotree& c, const Rational& eps) {
  detail::require_open_unit(eps);
  const std::size_t n = c.vertex_count();
  if (static_cast<__int128>(n) * eps.numerator() < static_cast<__int128>(8) * eps.denominator())
    throw PreconditionError("need at least 8/eps leaves");
  const auto mu = leaf_uniform_measure(c);
  CographRegularity out;
  out.tree_partition = build_eps_partition(c.tree(), mu, eps / 8);
  auto refined = refine_tree_partition(c, out.tree_partition);
  out.partition = std::move(refined.partition);
  out.block_part = std::move(refined.block_part);
  out.defect = nice_defect(materialize(c), out.partition).defect;
  std::int64_t sq = 0;
  for (const auto& part : out.tree_partition.parts) {
    std::int64_t w = 0;
    for (Node x : part.members) w += mu.weight[x];
    sq += w * w;
  }
  out.accounted = Rational(sq, mu.total * mu.total);
  if (out.defect > out.accounted || !(out.defect < eps))
    throw InvariantError("cograph partition defect " + to_string(out.defect) + " exceeds its accounting");
  if (static_cast<double>(out.partition.size()) > cograph_block_bound(c.colors(), eps))
    throw InvariantError("cograph partition has more blocks than the bound");
  return out;
}

inline VertexPartition cograph_regular_partition(const EmbeddedCotree& c, const Rational& eps) {
  return cograph_regular_partition_detailed(c, eps).partition;
}

}  // namespace gentle
