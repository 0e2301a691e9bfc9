#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "fixtures.hpp"

using namespace gentle;

namespace {

std::vector<double> eigen_spectrum(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.order());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (auto [u, v] : g.edges()) {
    a(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = 1;
    a(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) = 1;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

void expect_spectrum(const Graph& g, const std::vector<double>& want, double tol) {
  const auto got = symmetric_eigenvalues(g).eigenvalues;
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol);
}

VertexSet random_subset(std::size_t n, SplitMix64& rng) {
  std::vector<Vertex> s;
  const auto num = 1 + rng.below(7);
  for (Vertex v = 0; v < n; ++v)
    if (rng.chance(num, 8)) s.push_back(v);
  return VertexSet(std::move(s));
}

}  // namespace

TEST(Eigenvalues, Examples) {
  expect_spectrum(fixture::complete(2), {1, -1}, 1e-10);
  expect_spectrum(fixture::complete(3), {2, -1, -1}, 1e-10);
  expect_spectrum(fixture::cycle(4), {2, 0, 0, -2}, 1e-10);
}

TEST(Eigenvalues, AgreeWithEigen) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = random_graph(2 + seed * 2, 1 + seed % 3, 4, seed);
    const auto s = symmetric_eigenvalues(g);
    const auto want = eigen_spectrum(g);
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(s.eigenvalues[i], want[i], 1e-8);
    EXPECT_LE(s.off_diagonal, 1e-10);
    EXPECT_LE(s.residual, 1e-8);
  }
}

TEST(Eigenvalues, TraceAndSquares) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_graph(10 + seed * 5, 1, 3, seed);
    const auto s = symmetric_eigenvalues(g);
    double sum = 0, sq = 0;
    for (double l : s.eigenvalues) {
      sum += l;
      sq += l * l;
    }
    const double n = static_cast<double>(g.order());
    EXPECT_NEAR(sum, 0.0, n * 1e-9);
    EXPECT_NEAR(sq, 2.0 * static_cast<double>(g.edge_count()), n * 1e-9);
  }
}

TEST(Eigenvalues, CycleSpectrum) {
  for (std::size_t n = 3; n <= 64; ++n) {
    std::vector<double> want;
    for (std::size_t k = 0; k < n; ++k) want.push_back(2 * std::cos(2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n)));
    std::sort(want.begin(), want.end(), std::greater<>());
    expect_spectrum(fixture::cycle(n), want, 1e-9);
  }
}

TEST(Eigenvalues, LambdaOfRegularGraphs) {
  EXPECT_NEAR(symmetric_eigenvalues(fixture::complete(4)).lambda, 1.0, 1e-9);
  EXPECT_NEAR(symmetric_eigenvalues(fixture::petersen()).lambda, 2.0, 1e-9);
  EXPECT_EQ(symmetric_eigenvalues(fixture::path(4)).lambda, 0.0);
}

TEST(Eigenvalues, Errors) {
  EXPECT_THROW(symmetric_eigenvalues(fixture::complete(4), 1e-10, 100, 3), SizeCapError);
  EXPECT_THROW(symmetric_eigenvalues(fixture::complete(4), 0.0), PreconditionError);
  EXPECT_THROW(symmetric_eigenvalues(fixture::petersen(), 1e-10, 0), ConvergenceError);
}

TEST(Mixing, Examples) {
  const Graph k4 = fixture::complete(4);
  const auto m = mixing_check(k4, VertexSet{0}, VertexSet{1}, 1.0);
  EXPECT_DOUBLE_EQ(m.lhs, 0.25);
  EXPECT_DOUBLE_EQ(m.rhs, 0.75);
  EXPECT_TRUE(m.holds);
  const auto all = mixing_check(k4, fixture::range(0, 4), fixture::range(0, 4), 1.0);
  EXPECT_DOUBLE_EQ(all.lhs, 0.0);
  EXPECT_DOUBLE_EQ(all.rhs, 0.0);
  EXPECT_TRUE(all.holds);
  EXPECT_THROW(mixing_check(fixture::path(3), VertexSet{0}, VertexSet{1}, 1.0), PreconditionError);
}

TEST(Mixing, HoldsOnRandomRegularGraphs) {
  SplitMix64 rng(5);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph g = random_regular(64, 3 + seed % 2, seed);
    const double lambda = symmetric_eigenvalues(g).lambda;
    for (int i = 0; i < 1000; ++i) {
      const auto s = random_subset(64, rng), t = random_subset(64, rng);
      const auto m = mixing_check(g, s, t, lambda);
      ASSERT_TRUE(m.holds) << m.lhs << " > " << m.rhs;
    }
  }
}

TEST(Mixing, EdgelessHomogeneousPairsMatchTheCount) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = random_regular(12, 3, seed);
    const double lambda = symmetric_eigenvalues(g).lambda;
    const auto pair = max_homogeneous_pair(g);
    const auto& a = pair.a;
    const auto& b = pair.b;
    if (edge_count_between(g, a, b) != 0) continue;
    const auto m = mixing_check(g, a, b, lambda);
    EXPECT_GE(m.lhs + 1e-12, 3.0 * static_cast<double>(a.size() * b.size()) / 12.0);
    EXPECT_TRUE(m.holds);
  }
}

TEST(SpectralBound, Examples) {
  EXPECT_TRUE(homogeneous_pair_spectral_bound(fixture::complete(4), 0.25));
  EXPECT_FALSE(homogeneous_pair_spectral_bound(fixture::petersen(), 0.45));
  const auto best = max_homogeneous_pair(fixture::petersen());
  EXPECT_LT(std::min(best.a.size(), best.b.size()), 5u);
  EXPECT_TRUE(homogeneous_pair_spectral_bound(fixture::petersen(), 0.1));
  EXPECT_THROW(homogeneous_pair_spectral_bound(fixture::path(4), 0.5), PreconditionError);
}

TEST(SpectralBound, RandomCubicGraphs) {
  const Graph g = random_regular(200, 3, 1);
  const auto s = symmetric_eigenvalues(g);
  ASSERT_LT(s.lambda, 2.95);
  EXPECT_FALSE(homogeneous_pair_spectral_bound(g, 0.5, s.lambda));
  EXPECT_TRUE(homogeneous_pair_spectral_bound(g, 0.2, s.lambda));
}
