#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gentle/bitset.hpp"
#include "gentle/error.hpp"
#include "gentle/graph.hpp"
#include "gentle/random.hpp"
#include "gentle/rational.hpp"

namespace gentle {

/// Ordered list of disjoint vertex blocks covering V(G).
struct VertexPartition {
  std::vector<std::vector<Vertex>> blocks;

  std::size_t size() const { return blocks.size(); }
  friend bool operator==(const VertexPartition&, const VertexPartition&) = default;
};

namespace detail {

inline std::int64_t i64(std::size_t x) { return static_cast<std::int64_t>(x); }

/// x <= eps * total, exactly.
inline bool at_most_eps(std::size_t x, const Rational& eps, std::size_t total) {
  return static_cast<__int128>(x) * eps.denominator() <=
         static_cast<__int128>(eps.numerator()) * static_cast<__int128>(total);
}
/// x < eps * total, exactly.
inline bool below_eps(std::size_t x, const Rational& eps, std::size_t total) {
  return static_cast<__int128>(x) * eps.denominator() <
         static_cast<__int128>(eps.numerator()) * static_cast<__int128>(total);
}

inline void require_open_unit(const Rational& eps) {
  if (!is_open_unit(eps)) throw PreconditionError("epsilon must lie in (0, 1)");
}

/// Block index of every vertex. Empty blocks are accepted only when allow_empty is set.
inline std::vector<std::size_t> block_index(std::size_t n, const VertexPartition& p,
                                            bool allow_empty = false) {
  std::vector<std::size_t> of(n, kUnreachable);
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    if (p.blocks[i].empty() && !allow_empty)
      throw PreconditionError("partition block " + std::to_string(i) + " is empty");
    for (Vertex v : p.blocks[i]) {
      if (v >= n) throw PreconditionError("partition names vertex " + std::to_string(v) + " outside the graph");
      if (of[v] != kUnreachable) throw PreconditionError("vertex " + std::to_string(v) + " lies in two blocks");
      of[v] = i;
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (of[v] == kUnreachable) throw PreconditionError("vertex " + std::to_string(v) + " is in no block");
  return of;
}

}  // namespace detail

/// Checks that P is a partition of [0, n) into non-empty blocks.
inline void validate_partition(std::size_t n, const VertexPartition& p) { detail::block_index(n, p); }

/// Ordered edge counts between blocks: at(i, j) = #{(u, v) : u in V_i, v in V_j, uv in E}.
/// The diagonal therefore counts each internal edge twice.
class BlockEdgeCounts {
 public:
  BlockEdgeCounts(const Graph& g, const VertexPartition& p, bool allow_empty = false)
      : k_(p.blocks.size()), sizes_(k_), counts_(k_ * k_, 0) {
    const auto of = detail::block_index(g.order(), p, allow_empty);
    for (std::size_t i = 0; i < k_; ++i) sizes_[i] = p.blocks[i].size();
    for (Vertex u = 0; u < g.order(); ++u) {
      std::uint64_t* row = counts_.data() + of[u] * k_;
      g.for_each_neighbor(u, [&](Vertex v) { ++row[of[v]]; });
    }
  }

  std::size_t blocks() const { return k_; }
  std::size_t block_size(std::size_t i) const { return sizes_[i]; }
  std::uint64_t at(std::size_t i, std::size_t j) const { return counts_[i * k_ + j]; }

  /// Complete or edgeless; on the diagonal, clique or independent set. Empty blocks count
  /// as homogeneous with everything.
  bool homogeneous(std::size_t i, std::size_t j) const {
    const std::uint64_t e = at(i, j);
    const std::uint64_t full = i == j ? sizes_[i] * (sizes_[i] == 0 ? 0 : sizes_[i] - 1)
                                      : sizes_[i] * sizes_[j];
    return e == 0 || e == full;
  }

 private:
  std::size_t k_;
  std::vector<std::size_t> sizes_;
  std::vector<std::uint64_t> counts_;
};

struct NiceDefectReport {
  /// Sum of |V_i||V_j| / n^2 over non-homogeneous ordered pairs (i, j), diagonal included.
  Rational defect;
  std::vector<std::pair<std::size_t, std::size_t>> bad_pairs;
};

inline NiceDefectReport nice_defect(const Graph& g, const VertexPartition& p, bool allow_empty = false) {
  const BlockEdgeCounts counts(g, p, allow_empty);
  NiceDefectReport r;
  std::uint64_t bad_weight = 0;
  for (std::size_t i = 0; i < counts.blocks(); ++i)
    for (std::size_t j = 0; j < counts.blocks(); ++j)
      if (!counts.homogeneous(i, j)) {
        r.bad_pairs.emplace_back(i, j);
        bad_weight += counts.block_size(i) * counts.block_size(j);
      }
  const auto n = detail::i64(g.order());
  r.defect = n == 0 ? Rational(0) : Rational(static_cast<std::int64_t>(bad_weight), n * n);
  return r;
}

inline bool is_eps_nice(const Graph& g, const VertexPartition& p, const Rational& eps) {
  return nice_defect(g, p).defect < eps;
}

/// dens(A, B) < eps or dens(A, B) > 1 - eps.
inline bool eps_homogeneous(const Graph& g, const VertexSet& a, const VertexSet& b, const Rational& eps) {
  detail::require_open_unit(eps);
  const auto d = density(g, a, b);
  return d < eps || d > 1 - eps;
}

inline constexpr std::size_t kDefaultRegularCap = 12;

/// Exhaustive epsilon-regularity: every A' ⊆ A, B' ⊆ B with |A'| >= eps|A|, |B'| >= eps|B|
/// has |dens(A', B') - dens(A, B)| <= eps.
inline bool eps_regular_exact(const Graph& g, const VertexSet& a, const VertexSet& b, const Rational& eps,
                              std::size_t cap = kDefaultRegularCap) {
  detail::require_open_unit(eps);
  detail::check_disjoint_nonempty(g, a, b);
  if (a.size() > cap || b.size() > cap)
    throw SizeCapError("eps_regular_exact: side larger than cap " + std::to_string(cap));
  const std::size_t na = a.size(), nb = b.size();
  // adj[i] = bitmask over B of neighbours of a_i.
  std::vector<std::uint32_t> adj(na, 0);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      if (g.adjacent(a[i], b[j])) adj[i] |= 1U << j;
  std::int64_t total = 0;
  for (auto m : adj) total += std::popcount(m);
  const std::int64_t full = detail::i64(na * nb);
  const auto p = eps.numerator(), q = eps.denominator();

  std::vector<std::int64_t> deg_into(nb);
  std::vector<std::int64_t> sum(std::size_t{1} << nb);
  for (std::uint32_t am = 1; am < (1U << na); ++am) {
    const auto sa = std::popcount(am);
    if (static_cast<__int128>(sa) * q < static_cast<__int128>(p) * detail::i64(na)) continue;
    // deg_into[j] = |N(b_j) ∩ A'|
    for (std::size_t j = 0; j < nb; ++j) {
      std::int64_t c = 0;
      for (std::size_t i = 0; i < na; ++i)
        if ((am >> i) & 1U) c += (adj[i] >> j) & 1U;
      deg_into[j] = c;
    }
    sum[0] = 0;
    for (std::uint32_t bm = 1; bm < (1U << nb); ++bm) {
      const auto low = static_cast<std::size_t>(std::countr_zero(bm));
      sum[bm] = sum[bm & (bm - 1)] + deg_into[low];
      const auto sb = std::popcount(bm);
      if (static_cast<__int128>(sb) * q < static_cast<__int128>(p) * detail::i64(nb)) continue;
      // |e'/(sa sb) - total/full| <= eps  <=>  |e' full - total sa sb| q <= p sa sb full
      const __int128 lhs = static_cast<__int128>(sum[bm]) * full - static_cast<__int128>(total) * sa * sb;
      const __int128 abs_lhs = lhs < 0 ? -lhs : lhs;
      if (abs_lhs * q > static_cast<__int128>(p) * sa * sb * full) return false;
    }
  }
  return true;
}

struct SubsetPair {
  VertexSet a;
  VertexSet b;
};

/// Random search for an irregularity witness. Never certifies regularity.
inline std::optional<SubsetPair> eps_regular_sampled(const Graph& g, const VertexSet& a, const VertexSet& b,
                                                     const Rational& eps, std::size_t samples,
                                                     std::uint64_t seed) {
  detail::require_open_unit(eps);
  detail::check_disjoint_nonempty(g, a, b);
  SplitMix64 rng(seed);
  const auto whole = density(g, a, b);
  auto min_size = [&](std::size_t total) {
    // smallest s with s >= eps * total
    std::size_t s = 1;
    while (static_cast<__int128>(s) * eps.denominator() < static_cast<__int128>(eps.numerator()) * detail::i64(total)) ++s;
    return s;
  };
  auto draw = [&](const VertexSet& from) {
    std::vector<Vertex> pool(from.begin(), from.end());
    rng.shuffle(pool);
    const std::size_t lo = min_size(from.size());
    pool.resize(static_cast<std::size_t>(rng.between(lo, from.size())));
    return VertexSet(std::move(pool));
  };
  for (std::size_t s = 0; s < samples; ++s) {
    auto sa = draw(a);
    auto sb = draw(b);
    const auto d = density(g, sa, sb) - whole;
    if ((d < 0 ? -d : d) > eps) return SubsetPair{std::move(sa), std::move(sb)};
  }
  return std::nullopt;
}

/// Every b in V(G) has at most eps|A| neighbours in A or at most eps|A| non-neighbours in A
/// (b itself counts as a non-neighbour when b lies in A).
inline bool eps_good(const Graph& g, const VertexSet& a, const Rational& eps) {
  detail::check_members(g, a, "A");
  if (a.empty()) throw PreconditionError("A must be non-empty");
  const auto mask = a.mask(g.order());
  for (Vertex b = 0; b < g.order(); ++b) {
    const std::size_t k = and_count(g.row(b), mask.words());
    if (!detail::at_most_eps(std::min(k, a.size() - k), eps, a.size())) return false;
  }
  return true;
}

/// All but at most eps|A| vertices of A have fewer than eps|B| neighbours in B, or all but
/// at most eps|A| have more than (1 - eps)|B|.
inline bool eps_uniform(const Graph& g, const VertexSet& a, const VertexSet& b, const Rational& eps) {
  detail::check_disjoint_nonempty(g, a, b);
  const auto mask = b.mask(g.order());
  const Rational one_minus = 1 - eps;
  std::size_t small = 0, large = 0;
  for (Vertex u : a) {
    const std::size_t k = and_count(g.row(u), mask.words());
    if (detail::below_eps(k, eps, b.size())) ++small;
    if (static_cast<__int128>(k) * one_minus.denominator() >
        static_cast<__int128>(one_minus.numerator()) * detail::i64(b.size()))
      ++large;
  }
  return detail::at_most_eps(a.size() - small, eps, a.size()) ||
         detail::at_most_eps(a.size() - large, eps, a.size());
}

/// A is eps-good, and for every eps-good B among `candidates` some truth value t(A/B)
/// disagrees with the majority value t(a/B) on at most eps|A| vertices a of A. A vertex
/// whose neighbourhood in B is balanced enough to admit both values agrees with either.
inline bool eps_excellent_against(const Graph& g, const VertexSet& a, const Rational& eps,
                                  const std::vector<VertexSet>& candidates) {
  if (!eps_good(g, a, eps)) return false;
  for (const auto& b : candidates) {
    if (b.empty()) continue;
    detail::check_members(g, b, "B");
    if (!eps_good(g, b, eps)) continue;
    const auto mask = b.mask(g.order());
    std::size_t miss_true = 0, miss_false = 0;
    for (Vertex u : a) {
      const std::size_t k = and_count(g.row(u), mask.words());
      const bool may_true = detail::at_most_eps(b.size() - k, eps, b.size());
      const bool may_false = detail::at_most_eps(k, eps, b.size());
      if (!may_true) ++miss_true;
      if (!may_false) ++miss_false;
    }
    if (!detail::at_most_eps(miss_true, eps, a.size()) && !detail::at_most_eps(miss_false, eps, a.size()))
      return false;
  }
  return true;
}

inline constexpr std::size_t kDefaultExhaustiveCap = 20;

/// Every non-empty subset of [0, n) as candidate family; n <= cap.
inline std::vector<VertexSet> all_nonempty_subsets(std::size_t n, std::size_t cap = 12) {
  if (n > cap) throw SizeCapError("all_nonempty_subsets: n exceeds cap " + std::to_string(cap));
  std::vector<VertexSet> out;
  for (std::uint32_t m = 1; m < (1U << n); ++m) {
    std::vector<Vertex> vs;
    for (std::size_t i = 0; i < n; ++i)
      if ((m >> i) & 1U) vs.push_back(i);
    out.emplace_back(std::move(vs));
  }
  return out;
}

/// Whether witness vertices must be pairwise distinct (default: repeats allowed).
enum class Witness { Repeats, Distinct };

/// Largest d with a_1..a_d and b_J (J ⊆ [d]) such that a_i b_J is an edge iff i in J.
inline std::size_t vc_dimension(const Graph& g, std::size_t cap = kDefaultExhaustiveCap,
                                Witness mode = Witness::Repeats) {
  const std::size_t n = g.order();
  if (n > cap) throw SizeCapError("vc_dimension: n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  if (n == 0) return 0;
  std::size_t best = 0;
  std::vector<Vertex> pick;
  for (std::size_t d = 1; d <= n && d < 31; ++d) {
    const std::size_t need = std::size_t{1} << d;
    if (need > n) break;
    bool any = false;
    pick.assign(d, 0);
    auto recurse = [&](auto&& self, std::size_t pos, Vertex start) -> void {
      if (any) return;
      if (pos == d) {
        std::vector<bool> seen(need, false);
        std::size_t distinct = 0;
        for (Vertex b = 0; b < n; ++b) {
          if (mode == Witness::Distinct && std::find(pick.begin(), pick.end(), b) != pick.end()) continue;
          std::size_t trace = 0;
          for (std::size_t i = 0; i < d; ++i)
            if (g.adjacent(pick[i], b)) trace |= std::size_t{1} << i;
          if (!seen[trace]) {
            seen[trace] = true;
            ++distinct;
          }
        }
        if (distinct == need) any = true;
        return;
      }
      for (Vertex v = start; v < n; ++v) {
        pick[pos] = v;
        self(self, pos + 1, v + 1);
        if (any) return;
      }
    };
    recurse(recurse, 0, 0);
    if (!any) break;
    best = d;
  }
  return best;
}

/// Largest l with a_1..a_l, b_1..b_l such that a_i b_j is an edge iff i <= j.
inline std::size_t order_dimension(const Graph& g, std::size_t cap = kDefaultExhaustiveCap,
                                   Witness mode = Witness::Repeats) {
  const std::size_t n = g.order();
  if (n > cap) throw SizeCapError("order_dimension: n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  std::vector<Vertex> as, bs;
  std::vector<bool> used(n, false);
  std::size_t best = 0;
  auto recurse = [&](auto&& self) -> void {
    best = std::max(best, as.size());
    if (best == n) return;
    for (Vertex a = 0; a < n; ++a) {
      if (mode == Witness::Distinct && used[a]) continue;
      bool ok_a = true;
      for (Vertex prev_b : bs)
        if (g.adjacent(a, prev_b)) { ok_a = false; break; }
      if (!ok_a) continue;
      if (mode == Witness::Distinct) used[a] = true;
      g.for_each_neighbor(a, [&](Vertex b) {
        if (mode == Witness::Distinct && used[b]) return;
        for (Vertex prev_a : as)
          if (!g.adjacent(prev_a, b)) return;
        as.push_back(a);
        bs.push_back(b);
        if (mode == Witness::Distinct) used[b] = true;
        self(self);
        if (mode == Witness::Distinct) used[b] = false;
        as.pop_back();
        bs.pop_back();
      });
      if (mode == Witness::Distinct) used[a] = false;
    }
  };
  recurse(recurse);
  return best;
}

/// Disjoint homogeneous pair maximising min(|A|, |B|), by exhaustive search over A.
inline SubsetPair max_homogeneous_pair(const Graph& g, std::size_t cap = kDefaultExhaustiveCap) {
  const std::size_t n = g.order();
  if (n > cap) throw SizeCapError("max_homogeneous_pair: n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  if (n < 2) throw PreconditionError("a homogeneous pair needs at least two vertices");
  if (n > 30) throw SizeCapError("max_homogeneous_pair supports n <= 30");
  std::vector<std::uint32_t> nbr(n, 0);
  for (Vertex u = 0; u < n; ++u)
    g.for_each_neighbor(u, [&](Vertex v) { nbr[u] |= 1U << v; });
  const std::uint32_t all = (1U << n) - 1;
  const std::size_t total = std::size_t{1} << n;
  std::vector<std::uint32_t> complete(total), anti(total);
  complete[0] = all;
  anti[0] = all;
  std::size_t best = 0;
  std::uint32_t best_a = 0, best_b = 0;
  for (std::size_t am = 1; am < total; ++am) {
    const auto low = static_cast<std::size_t>(std::countr_zero(am));
    const std::size_t rest = am & (am - 1);
    complete[am] = complete[rest] & nbr[low];
    anti[am] = anti[rest] & ~nbr[low];
    const auto a_mask = static_cast<std::uint32_t>(am);
    const std::uint32_t c = complete[am] & ~a_mask;
    const std::uint32_t d = anti[am] & ~a_mask;
    const std::uint32_t b = std::popcount(c) >= std::popcount(d) ? c : d;
    const std::size_t score = std::min<std::size_t>(std::popcount(a_mask), std::popcount(b));
    if (score > best) {
      best = score;
      best_a = a_mask;
      best_b = b;
    }
  }
  auto to_set = [&](std::uint32_t m) {
    std::vector<Vertex> vs;
    for (Vertex v = 0; v < n; ++v)
      if ((m >> v) & 1U) vs.push_back(v);
    return VertexSet(std::move(vs));
  };
  return {to_set(best_a), to_set(best_b)};
}

/// Largest integer f with f <= sqrt(1 - eps) * n / (2k).
inline std::size_t homogeneous_pair_floor(std::size_t n, std::size_t k, const Rational& eps) {
  if (k == 0) return 0;
  const auto p = static_cast<__int128>(eps.numerator()), q = static_cast<__int128>(eps.denominator());
  const __int128 rhs = (q - p) * static_cast<__int128>(n) * static_cast<__int128>(n);
  auto fits = [&](std::size_t x) {
    const __int128 t = static_cast<__int128>(2 * k) * static_cast<__int128>(x);
    return t * t * q <= rhs;
  };
  std::size_t lo = 0, hi = n;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (fits(mid)) lo = mid; else hi = mid - 1;
  }
  return lo;
}

/// From an eps-nice partition, a homogeneous pair with min side at least
/// floor(sqrt(1 - eps) n / (2k)). Candidates are the homogeneous ordered block pairs;
/// a diagonal pair is split into halves. The candidate with the largest smaller side
/// wins, ties going to the larger |V_i||V_j| and then to the first pair.
inline SubsetPair extract_homogeneous_pair_from_nice(const Graph& g, const VertexPartition& p, const Rational& eps) {
  detail::require_open_unit(eps);
  const BlockEdgeCounts counts(g, p);
  const auto report = nice_defect(g, p);
  if (!(report.defect < eps)) throw PreconditionError("partition is not eps-nice");
  const std::size_t k = counts.blocks();
  std::size_t best_min = 0, best_weight = 0;
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (!counts.homogeneous(i, j)) continue;
      const std::size_t si = counts.block_size(i), sj = counts.block_size(j);
      const std::size_t side = i == j ? si / 2 : std::min(si, sj);
      if (side == 0) continue;
      const std::size_t weight = si * sj;
      if (!best || side > best_min || (side == best_min && weight > best_weight)) {
        best = {i, j};
        best_min = side;
        best_weight = weight;
      }
    }
  const std::size_t floor_size = homogeneous_pair_floor(g.order(), k, eps);
  if (!best || best_min < floor_size)
    throw InvariantError("no homogeneous block pair reaches the guaranteed size " + std::to_string(floor_size));
  const auto [i, j] = *best;
  if (i != j) return {VertexSet(p.blocks[i]), VertexSet(p.blocks[j])};
  const auto& blk = p.blocks[i];
  const std::size_t half = blk.size() / 2;
  return {VertexSet(std::vector<Vertex>(blk.begin(), blk.begin() + static_cast<std::ptrdiff_t>(half))),
          VertexSet(std::vector<Vertex>(blk.begin() + static_cast<std::ptrdiff_t>(half), blk.end()))};
}

enum class NdMode { Strong, Weak };

/// Distance condition of a sparse-style regular partition of G - S:
///  strong: every u outside S is at distance > d from at least (1 - eps)|V_i| vertices of every V_i;
///  weak: for all i, j, at least (1 - eps)|V_i| vertices u of V_i are at distance > d from
///        at least (1 - eps)|V_j| vertices of V_j.
/// Distances are measured in G - S; u counts as within distance 0 of itself.
inline bool verify_nd_partition(const Graph& g, const VertexSet& s, const VertexPartition& p, std::size_t d,
                                const Rational& eps, NdMode mode) {
  detail::require_open_unit(eps);
  detail::check_members(g, s, "S");
  const std::size_t n = g.order();
  std::vector<std::size_t> of(n, kUnreachable);
  std::size_t covered = 0;
  std::size_t lo = kUnreachable, hi = 0;
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    lo = std::min(lo, p.blocks[i].size());
    hi = std::max(hi, p.blocks[i].size());
    for (Vertex v : p.blocks[i]) {
      if (v >= n || s.contains(v) || of[v] != kUnreachable)
        throw PreconditionError("partition must split V(G) - S into disjoint blocks");
      of[v] = i;
      ++covered;
    }
  }
  if (covered + s.size() != n) throw PreconditionError("partition must cover V(G) - S");
  if (p.blocks.empty() || hi - lo > 1) throw PreconditionError("partition is not an equipartition");

  const std::size_t k = p.blocks.size();
  const Rational keep = 1 - eps;
  auto enough = [&](std::size_t far, std::size_t size) {
    return static_cast<__int128>(far) * keep.denominator() >=
           static_cast<__int128>(keep.numerator()) * detail::i64(size);
  };
  // good[i][j] = #u in V_i far from enough of V_j
  std::vector<std::size_t> good(k * k, 0);
  std::vector<std::size_t> near(k);
  for (Vertex u = 0; u < n; ++u) {
    if (of[u] == kUnreachable) continue;
    const auto dist = distances_from(g, s, u);
    std::fill(near.begin(), near.end(), 0);
    for (Vertex v = 0; v < n; ++v)
      if (of[v] != kUnreachable && dist[v] <= d) ++near[of[v]];
    for (std::size_t j = 0; j < k; ++j) {
      const bool ok = enough(p.blocks[j].size() - near[j], p.blocks[j].size());
      if (mode == NdMode::Strong && !ok) return false;
      if (ok) ++good[of[u] * k + j];
    }
  }
  if (mode == NdMode::Strong) return true;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (!enough(good[i * k + j], p.blocks[i].size())) return false;
  return true;
}

}  // namespace gentle
