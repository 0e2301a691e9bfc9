#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace gentle;
using namespace fixture;

namespace {

const VertexSet kA3 = range(0, 3), kB3 = range(3, 6);

bool excellent_literal(const Graph& g, const std::vector<Vertex>& a, const Rational& eps) {
  if (!oracle::eps_good(g, a, eps)) return false;
  const std::size_t n = g.order();
  for (std::uint32_t bm = 1; bm < (1U << n); ++bm) {
    std::vector<Vertex> b;
    for (Vertex v = 0; v < n; ++v)
      if ((bm >> v) & 1U) b.push_back(v);
    if (!oracle::eps_good(g, b, eps)) continue;
    bool some_t = false;
    for (int t = 0; t < 2 && !some_t; ++t) {
      std::int64_t off = 0;
      for (Vertex x : a) {
        std::int64_t disagree = 0;
        for (Vertex y : b) disagree += (x != y && g.adjacent(x, y)) != (t == 1);
        if (Rational(disagree) > eps * static_cast<std::int64_t>(b.size())) ++off;
      }
      some_t = Rational(off) <= eps * static_cast<std::int64_t>(a.size());
    }
    if (!some_t) return false;
  }
  return true;
}

}  // namespace

TEST(EpsHomogeneous, Examples) {
  EXPECT_TRUE(eps_homogeneous(Graph(6), kA3, kB3, Rational(1, 100)));
  EXPECT_TRUE(eps_homogeneous(half_graph(3), kA3, kB3, Rational(1, 2)));
  EXPECT_FALSE(eps_homogeneous(half_graph(3), kA3, kB3, Rational(1, 5)));
}

TEST(EpsHomogeneous, ComparisonIsStrict) {
  // density 1/2 is neither < 1/2 nor > 1/2
  Graph g(4, {{0, 2}, {1, 3}});
  EXPECT_FALSE(eps_homogeneous(g, range(0, 2), range(2, 4), Rational(1, 2)));
  EXPECT_THROW(eps_homogeneous(g, range(0, 2), range(2, 4), Rational(1)), PreconditionError);
}

TEST(EpsRegular, Examples) {
  EXPECT_TRUE(eps_regular_exact(complete_bipartite(4, 5), range(0, 4), range(4, 9), Rational(1, 10)));
  EXPECT_FALSE(eps_regular_exact(half_graph(4), range(0, 4), range(4, 8), Rational(1, 4)));
  EXPECT_TRUE(eps_regular_exact(Graph(8), range(0, 4), range(4, 8), Rational(1, 2)));
}

TEST(EpsRegular, CapIsEnforced) {
  EXPECT_THROW(eps_regular_exact(Graph(26), range(0, 13), range(13, 26), Rational(1, 2)), SizeCapError);
}

TEST(EpsRegular, AgreesWithSubsetEnumeration) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Graph g = random_graph(9, 1, 2, seed);
    const VertexSet a = range(0, 4), b = range(4, 9);
    for (auto eps : {Rational(1, 5), Rational(1, 3), Rational(1, 2)})
      EXPECT_EQ(eps_regular_exact(g, a, b, eps), oracle::eps_regular(g, a.members(), b.members(), eps));
  }
}

TEST(EpsRegular, CubeHomogeneousImpliesRegular) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SplitMix64 rng(seed);
    const std::size_t na = 1 + rng.below(10), nb = 1 + rng.below(10);
    const std::uint64_t den = 1 + rng.below(40);
    const Graph g = random_graph(na + nb, rng.chance(1, 2) ? 0 : 1, den, seed + 1000);
    const VertexSet a = range(0, na), b = range(na, na + nb);
    for (auto eps : {Rational(3, 10), Rational(1, 2)})
      if (eps_homogeneous(g, a, b, eps * eps * eps)) {
        EXPECT_TRUE(eps_regular_exact(g, a, b, eps));
      }
  }
}

TEST(EpsRegular, SamplingFindsWitnessOnHalfGraph) {
  const auto w = eps_regular_sampled(half_graph(8), range(0, 8), range(8, 16), Rational(1, 4), 2000, 7);
  ASSERT_TRUE(w);
  const auto d = density(half_graph(8), w->a, w->b) - density(half_graph(8), range(0, 8), range(8, 16));
  EXPECT_GT(d < 0 ? -d : d, Rational(1, 4));
  EXPECT_FALSE(eps_regular_sampled(complete_bipartite(5, 5), range(0, 5), range(5, 10), Rational(1, 4), 500, 7));
}

TEST(NiceDefect, Examples) {
  EXPECT_EQ(nice_defect(two_cliques(3, 4), blocks({{0, 1, 2}, {3, 4, 5, 6}})).defect, Rational(0));
  EXPECT_EQ(nice_defect(half_graph(2), blocks({{0, 1, 2, 3}})).defect, Rational(1));
  const auto r = nice_defect(half_graph(4), blocks({{0, 1, 2, 3}, {4, 5, 6, 7}}));
  EXPECT_EQ(r.defect, Rational(1, 2));
  EXPECT_EQ(r.bad_pairs.size(), 2u);
  EXPECT_TRUE(is_eps_nice(half_graph(4), blocks({{0, 1, 2, 3}, {4, 5, 6, 7}}), Rational(3, 4)));
  EXPECT_FALSE(is_eps_nice(half_graph(4), blocks({{0, 1, 2, 3}, {4, 5, 6, 7}}), Rational(1, 2)));
}

TEST(NiceDefect, RejectsMalformedPartitions) {
  EXPECT_THROW(nice_defect(Graph(3), blocks({{0, 1}})), PreconditionError);
  EXPECT_THROW(nice_defect(Graph(3), blocks({{0, 1}, {1, 2}})), PreconditionError);
  EXPECT_THROW(nice_defect(Graph(3), blocks({{0, 1, 2}, {}})), PreconditionError);
}

TEST(NiceDefect, SingletonsAndPermutationInvariance) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = random_graph(12, 1, 2, seed);
    VertexPartition singles;
    for (Vertex v = 0; v < 12; ++v) singles.blocks.push_back({v});
    EXPECT_EQ(nice_defect(g, singles).defect, Rational(0));
    SplitMix64 rng(seed);
    VertexPartition p;
    p.blocks.resize(4);
    for (Vertex v = 0; v < 12; ++v) p.blocks[v % 4].push_back(v);
    const auto d = nice_defect(g, p).defect;
    EXPECT_EQ(d, oracle::nice_defect(g, p));
    rng.shuffle(p.blocks);
    EXPECT_EQ(nice_defect(g, p).defect, d);
  }
}

TEST(EpsGood, Examples) {
  EXPECT_TRUE(eps_good(Graph(5), range(0, 3), Rational(1, 10)));
  EXPECT_FALSE(eps_good(half_graph(8), range(0, 8), Rational(2, 5)));
  EXPECT_TRUE(eps_good(complete(5), range(0, 5), Rational(1, 5)));
  EXPECT_FALSE(eps_good(complete(5), range(0, 5), Rational(1, 6)));
}

TEST(EpsGood, AgreesWithDefinitionOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SplitMix64 rng(seed);
    const std::size_t n = 2 + rng.below(15);
    const Graph g = random_graph(n, 1 + rng.below(3), 4, seed + 77);
    std::vector<Vertex> a, b;
    for (Vertex v = 0; v < n; ++v) (rng.chance(1, 2) ? a : b).push_back(v);
    if (a.empty() || b.empty()) continue;
    for (auto eps : {Rational(1, 10), Rational(1, 4), Rational(1, 2)}) {
      EXPECT_EQ(eps_good(g, VertexSet(a), eps), oracle::eps_good(g, a, eps));
      EXPECT_EQ(eps_uniform(g, VertexSet(a), VertexSet(b), eps), oracle::eps_uniform(g, a, b, eps));
    }
  }
}

TEST(EpsUniform, Examples) {
  EXPECT_TRUE(eps_uniform(Graph(6), kA3, kB3, Rational(1, 10)));
  EXPECT_TRUE(eps_uniform(complete_bipartite(3, 3), kA3, kB3, Rational(1, 10)));
  EXPECT_FALSE(eps_uniform(half_graph(8), range(0, 8), range(8, 16), Rational(1, 4)));
}

TEST(EpsExcellent, Examples) {
  const Graph e(6);
  EXPECT_TRUE(eps_excellent_against(e, range(0, 3), Rational(1, 4), {range(0, 2), range(2, 6)}));
  EXPECT_FALSE(eps_excellent_against(half_graph(8), range(0, 8), Rational(1, 4), {}));
}

TEST(EpsExcellent, AllSubsetFamilyMatchesDefinition) {
  const Graph h4 = half_graph(4);
  const auto all = all_nonempty_subsets(8);
  EXPECT_EQ(eps_excellent_against(h4, VertexSet{0, 1}, Rational(1, 4), all),
            excellent_literal(h4, {0, 1}, Rational(1, 4)));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_graph(8, 1, 2, seed);
    const auto fam = all_nonempty_subsets(8);
    for (std::uint32_t am = 1; am < 256; am += 17) {
      std::vector<Vertex> a;
      for (Vertex v = 0; v < 8; ++v)
        if ((am >> v) & 1U) a.push_back(v);
      for (auto eps : {Rational(1, 4), Rational(1, 3)})
        EXPECT_EQ(eps_excellent_against(g, VertexSet(a), eps, fam), excellent_literal(g, a, eps));
    }
  }
}

TEST(Dimensions, VcExamples) {
  EXPECT_EQ(vc_dimension(Graph(4)), 0u);
  EXPECT_EQ(vc_dimension(es_graph(2)), 2u);
  EXPECT_EQ(vc_dimension(complete(3)), 1u);
  EXPECT_GE(vc_dimension(es_graph(3)), 3u);
  EXPECT_THROW(vc_dimension(Graph(21)), SizeCapError);
}

TEST(Dimensions, OrderExamples) {
  EXPECT_EQ(order_dimension(Graph(3)), 0u);
  EXPECT_EQ(order_dimension(Graph(2, {{0, 1}})), 1u);
  EXPECT_EQ(order_dimension(half_graph(2)), 2u);
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_GE(order_dimension(half_graph(n)), n);
}

TEST(Dimensions, DistinctWitnessesNeverExceedRepeats) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = random_graph(9, 1, 2, seed);
    EXPECT_LE(vc_dimension(g, 20, Witness::Distinct), vc_dimension(g));
    EXPECT_LE(order_dimension(g, 20, Witness::Distinct), order_dimension(g));
  }
  // K_3: the empty trace needs b = a_1 itself.
  EXPECT_EQ(vc_dimension(complete(3), 20, Witness::Distinct), 0u);
}

TEST(Dimensions, AgreeWithDefinitionOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = random_graph(8, 1 + seed % 3, 4, seed);
    EXPECT_EQ(vc_dimension(g), oracle::vc_dimension(g));
    EXPECT_EQ(order_dimension(g), oracle::order_dimension(g));
  }
}

TEST(MaxHomogeneousPair, Examples) {
  const auto e = max_homogeneous_pair(Graph(7));
  EXPECT_EQ(std::min(e.a.size(), e.b.size()), 3u);
  const auto k = max_homogeneous_pair(complete_bipartite(3, 3));
  EXPECT_EQ(std::min(k.a.size(), k.b.size()), 3u);
  const auto c = max_homogeneous_pair(cycle(5));
  EXPECT_EQ(std::min(c.a.size(), c.b.size()), 1u);
  EXPECT_EQ(oracle::max_homogeneous_size(cycle(5)), 1u);
}

TEST(MaxHomogeneousPair, WitnessIsHomogeneousAndOptimal) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = random_graph(9, 1, 2, seed);
    const auto w = max_homogeneous_pair(g);
    EXPECT_TRUE(w.a.disjoint_from(w.b));
    EXPECT_TRUE(is_homogeneous_pair(g, w.a, w.b));
    EXPECT_EQ(std::min(w.a.size(), w.b.size()), oracle::max_homogeneous_size(g));
  }
}

TEST(ExtractPair, Examples) {
  const auto e = extract_homogeneous_pair_from_nice(Graph(8), blocks({{0, 1, 2, 3, 4, 5, 6, 7}}), Rational(1, 2));
  EXPECT_EQ(e.a, (VertexSet{0, 1, 2, 3}));
  EXPECT_EQ(e.b, (VertexSet{4, 5, 6, 7}));
  const auto c = extract_homogeneous_pair_from_nice(two_cliques(4, 4), blocks({{0, 1, 2, 3}, {4, 5, 6, 7}}),
                                                    Rational(1, 4));
  EXPECT_EQ(c.a, range(0, 4));
  EXPECT_EQ(c.b, range(4, 8));
  EXPECT_EQ(edge_count_between(two_cliques(4, 4), c.a, c.b), 0u);
  const auto h = extract_homogeneous_pair_from_nice(half_graph(4), blocks({{0, 1, 2, 3}, {4, 5, 6, 7}}), Rational(3, 4));
  EXPECT_EQ(h.a, (VertexSet{0, 1}));
  EXPECT_EQ(h.b, (VertexSet{2, 3}));
  EXPECT_THROW(extract_homogeneous_pair_from_nice(half_graph(4), blocks({{0, 1, 2, 3}, {4, 5, 6, 7}}), Rational(1, 4)),
               PreconditionError);
}

TEST(ExtractPair, FloorIsExact) {
  // sqrt(3/4) * 100 / 4 = 21.65...
  EXPECT_EQ(homogeneous_pair_floor(100, 2, Rational(1, 4)), 21u);
  EXPECT_EQ(homogeneous_pair_floor(8, 1, Rational(3, 4)), 2u);
  EXPECT_EQ(homogeneous_pair_floor(8, 2, Rational(3, 4)), 1u);
}

TEST(NdPartition, Examples) {
  const Rational eps(1, 10);
  EXPECT_TRUE(verify_nd_partition(path(100), {}, blocks({[] {
                                                   std::vector<Vertex> v(50);
                                                   std::iota(v.begin(), v.end(), 0);
                                                   return v;
                                                 }(),
                                                 [] {
                                                   std::vector<Vertex> v(50);
                                                   std::iota(v.begin(), v.end(), 50);
                                                   return v;
                                                 }()}),
                                  1, eps, NdMode::Strong));
  VertexPartition halves;
  halves.blocks.resize(2);
  for (Vertex v = 0; v < 100; ++v) halves.blocks[v % 2].push_back(v);
  EXPECT_FALSE(verify_nd_partition(star(99), {}, halves, 2, eps, NdMode::Strong));
  EXPECT_FALSE(verify_nd_partition(star(99), {}, halves, 2, eps, NdMode::Weak));
  VertexPartition rest;
  rest.blocks.resize(2);
  for (Vertex v = 1; v < 100; ++v) rest.blocks[v % 2].push_back(v);
  EXPECT_TRUE(verify_nd_partition(star(99), VertexSet{0}, rest, 2, eps, NdMode::Strong));
}

TEST(NdPartition, RejectsUnevenBlocks) {
  EXPECT_THROW(verify_nd_partition(path(10), {}, blocks({{0, 1, 2}, {3, 4, 5, 6, 7, 8, 9}}), 1, Rational(1, 10),
                                   NdMode::Strong),
               PreconditionError);
}

TEST(NdPartition, WeakIsImpliedByStrong) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = random_degenerate(60, 2, seed);
    VertexPartition p;
    p.blocks.resize(3);
    for (Vertex v = 0; v < 60; ++v) p.blocks[v % 3].push_back(v);
    for (std::size_t d : {1, 2, 3})
      if (verify_nd_partition(g, {}, p, d, Rational(1, 5), NdMode::Strong)) {
        EXPECT_TRUE(verify_nd_partition(g, {}, p, d, Rational(1, 5), NdMode::Weak));
      }
  }
}
