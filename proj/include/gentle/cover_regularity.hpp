#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gentle/error.hpp"
#include "gentle/graph.hpp"
#include "gentle/rational.hpp"
#include "gentle/regularity.hpp"

namespace gentle {

/// A partition V_1..V_p of V(G) such that every G[V_i ∪ V_j] lies in a fixed class.
struct TwoCover {
  VertexPartition parts;
  std::size_t magnitude() const { return parts.size(); }
};

using PairKey = std::pair<std::size_t, std::size_t>;
/// Partition of V_i ∪ V_j (global vertex numbers) for each i < j.
using PairwisePartitions = std::map<PairKey, VertexPartition>;

/// Sorted V_i ∪ V_j; position in this list is the vertex number in the pair graph.
inline std::vector<Vertex> pair_vertices(const TwoCover& cover, std::size_t i, std::size_t j) {
  std::vector<Vertex> vs(cover.parts.blocks[i]);
  vs.insert(vs.end(), cover.parts.blocks[j].begin(), cover.parts.blocks[j].end());
  std::sort(vs.begin(), vs.end());
  return vs;
}

struct CombinedPartition {
  VertexPartition partition;
  /// Cover part holding each block.
  std::vector<std::size_t> block_side;
  /// For block b in V_i: the block index in the (i, j) pairwise partition for every j != i
  /// (in increasing j).
  std::vector<std::vector<std::size_t>> block_key;
};

inline void validate_cover(const Graph& g, const TwoCover& cover) {
  if (cover.magnitude() < 2) throw PreconditionError("a cover needs at least two parts");
  validate_partition(g.order(), cover.parts);
}

/// Inside each V_i, intersects the traces of the p - 1 pairwise partitions on V_i.
/// Blocks appear part by part, in order of their smallest vertex.
inline CombinedPartition combine_cover_partitions(const Graph& g, const TwoCover& cover,
                                                  const PairwisePartitions& pairwise) {
  validate_cover(g, cover);
  const std::size_t p = cover.magnitude(), n = g.order();
  std::vector<std::size_t> side(n);
  for (std::size_t i = 0; i < p; ++i)
    for (Vertex v : cover.parts.blocks[i]) side[v] = i;

  // block_of[(i,j)][v] for v in V_i ∪ V_j
  std::map<PairKey, std::vector<std::size_t>> block_of;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) {
      const auto it = pairwise.find({i, j});
      if (it == pairwise.end())
        throw PreconditionError("missing pairwise partition for parts " + std::to_string(i) + "," + std::to_string(j));
      auto& of = block_of[{i, j}];
      of.assign(n, kUnreachable);
      std::size_t covered = 0;
      for (std::size_t b = 0; b < it->second.blocks.size(); ++b)
        for (Vertex v : it->second.blocks[b]) {
          if (v >= n || (side[v] != i && side[v] != j) || of[v] != kUnreachable)
            throw PreconditionError("pairwise partition " + std::to_string(i) + "," + std::to_string(j) +
                                    " does not partition V_i ∪ V_j");
          of[v] = b;
          ++covered;
        }
      if (covered != cover.parts.blocks[i].size() + cover.parts.blocks[j].size())
        throw PreconditionError("pairwise partition " + std::to_string(i) + "," + std::to_string(j) +
                                " does not cover V_i ∪ V_j");
    }

  CombinedPartition out;
  for (std::size_t i = 0; i < p; ++i) {
    std::map<std::vector<std::size_t>, std::size_t> index;
    auto members = cover.parts.blocks[i];
    std::sort(members.begin(), members.end());
    for (Vertex v : members) {
      std::vector<std::size_t> key;
      for (std::size_t j = 0; j < p; ++j)
        if (j != i) key.push_back(block_of[{std::min(i, j), std::max(i, j)}][v]);
      auto [it, fresh] = index.try_emplace(key, out.partition.blocks.size());
      if (fresh) {
        out.partition.blocks.emplace_back();
        out.block_side.push_back(i);
        out.block_key.push_back(key);
      }
      out.partition.blocks[it->second].push_back(v);
    }
  }
  return out;
}

/// Maps the pair graph G[V_i ∪ V_j] (vertices renumbered by pair_vertices) to a partition of it.
using PairPartitioner = std::function<VertexPartition(const Graph& pair_graph, std::size_t i, std::size_t j)>;

/// ε-nice partition of a graph with a p-part cover, from (ε/(p-1))-nice partitions of the
/// pair graphs. Each callback result is checked; a failing one raises ContractError.
inline CombinedPartition cover_regular_partition(const Graph& g, const TwoCover& cover, const Rational& eps,
                                                 const PairPartitioner& partitioner) {
  detail::require_open_unit(eps);
  validate_cover(g, cover);
  const std::size_t p = cover.magnitude();
  const Rational pair_eps = eps / static_cast<std::int64_t>(p - 1);
  PairwisePartitions pairwise;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) {
      const auto vs = pair_vertices(cover, i, j);
      const Graph h = g.induced_subgraph(vs);
      const auto local = partitioner(h, i, j);
      const std::string name = "pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
      try {
        validate_partition(h.order(), local);
      } catch (const PreconditionError& e) {
        throw ContractError(name + ": partitioner returned a malformed partition: " + e.what());
      }
      const auto defect = nice_defect(h, local).defect;
      if (!(defect < pair_eps))
        throw ContractError(name + ": partition defect " + to_string(defect) + " is not below " + to_string(pair_eps));
      VertexPartition global;
      for (const auto& blk : local.blocks) {
        std::vector<Vertex> mapped;
        for (Vertex v : blk) mapped.push_back(vs[v]);
        global.blocks.push_back(std::move(mapped));
      }
      pairwise.emplace(PairKey{i, j}, std::move(global));
    }
  auto out = combine_cover_partitions(g, cover, pairwise);
  const auto defect = nice_defect(g, out.partition).defect;
  if (!(defect < eps)) throw InvariantError("combined partition defect " + to_string(defect) + " is not below epsilon");
  return out;
}

/// Splits each block into chunks of the target sizes, pools the remainders in block order and
/// chunks the pool. K = ceil(k / ε) blocks; the first n mod K have size ceil(n/K), the rest
/// floor(n/K). When K > n the trailing blocks are empty.
inline VertexPartition equipartition_refine(const Graph& g, const VertexPartition& p, const Rational& eps) {
  detail::require_open_unit(eps);
  const auto start = nice_defect(g, p);
  if (!(start.defect < eps)) throw PreconditionError("partition is not eps-nice");
  const std::size_t n = g.order(), k = p.size();
  // ceil(k q / p)
  const auto num = static_cast<std::int64_t>(k) * eps.denominator();
  const auto K = static_cast<std::size_t>((num + eps.numerator() - 1) / eps.numerator());
  std::vector<std::size_t> target(K, n / K);
  for (std::size_t i = 0; i < n % K; ++i) ++target[i];

  VertexPartition out;
  out.blocks.resize(K);
  std::size_t next = 0;
  std::vector<Vertex> pool;
  for (const auto& blk : p.blocks) {
    std::size_t pos = 0;
    while (next < K && target[next] > 0 && blk.size() - pos >= target[next]) {
      out.blocks[next].assign(blk.begin() + static_cast<std::ptrdiff_t>(pos),
                              blk.begin() + static_cast<std::ptrdiff_t>(pos + target[next]));
      pos += target[next];
      ++next;
    }
    pool.insert(pool.end(), blk.begin() + static_cast<std::ptrdiff_t>(pos), blk.end());
  }
  std::size_t pos = 0;
  for (; next < K; ++next) {
    out.blocks[next].assign(pool.begin() + static_cast<std::ptrdiff_t>(pos),
                            pool.begin() + static_cast<std::ptrdiff_t>(pos + target[next]));
    pos += target[next];
  }
  if (pos != pool.size()) throw InvariantError("equipartition left vertices unassigned");

  const auto report = nice_defect(g, out, true);
  // ordered bad pairs / K^2 <= 3 eps
  const auto bad = static_cast<__int128>(report.bad_pairs.size());
  if (bad * eps.denominator() > static_cast<__int128>(3) * eps.numerator() * static_cast<__int128>(K * K))
    throw InvariantError("equipartition has more than a 3 eps fraction of bad pairs");
  return out;
}

/// Fraction of ordered block pairs (i, j), diagonal included, that are not homogeneous.
inline Rational bad_pair_fraction(const Graph& g, const VertexPartition& p) {
  const auto report = nice_defect(g, p, true);
  const auto k = static_cast<std::int64_t>(p.size());
  return Rational(static_cast<std::int64_t>(report.bad_pairs.size()), k * k);
}

struct CoverBlockBounds {
  double nice_bound;
  double equi_bound;
};

/// Block-count bounds for covers of magnitude p whose pair graphs are embedded m-partite
/// cographs: p (128 m 2^{m^2} (p-1)/ε)^{p-1} and 2p (m 2^{m^2+8} (p-1))^{p-1} ε^{-p}.
inline CoverBlockBounds cover_block_bounds(std::size_t m, std::size_t p, const Rational& eps) {
  if (m == 0 || p == 0) throw PreconditionError("m and p must be positive");
  detail::require_open_unit(eps);
  const double e = to_double(eps), md = static_cast<double>(m), pd = static_cast<double>(p);
  const double pow2 = std::ldexp(1.0, static_cast<int>(m * m));
  const double nice = pd * std::pow(128.0 * md * pow2 * (pd - 1) / e, pd - 1);
  const double equi = 2 * pd * std::pow(md * pow2 * 256.0 * (pd - 1), pd - 1) * std::pow(e, -pd);
  return {nice, equi};
}

}  // namespace gentle
