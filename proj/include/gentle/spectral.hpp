#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gentle/error.hpp"
#include "gentle/graph.hpp"

namespace gentle {

struct SpectralSummary {
  /// Descending.
  std::vector<double> eigenvalues;
  /// Largest |λ_i| over eigenvalues with |λ_i| < d (d-regular input); 0 otherwise.
  double lambda = 0;
  /// Largest ‖A x − λ x‖ over the computed eigenpairs.
  double residual = 0;
  /// Off-diagonal Frobenius norm when the rotations stopped.
  double off_diagonal = 0;
};

inline constexpr std::size_t kDenseCap = 2048;
inline constexpr double kDefaultSpectralTol = 1e-10;

/// Common degree, or nullopt-like kUnreachable when G is not regular.
inline std::size_t regular_degree(const Graph& g) {
  if (g.order() == 0) return 0;
  const std::size_t d = g.degree(0);
  for (Vertex v = 1; v < g.order(); ++v)
    if (g.degree(v) != d) return kUnreachable;
  return d;
}

/// Full spectrum of the adjacency matrix by cyclic Jacobi rotations.
inline SpectralSummary symmetric_eigenvalues(const Graph& g, double tol = kDefaultSpectralTol,
                                             std::size_t max_sweeps = 100, std::size_t cap = kDenseCap) {
  const std::size_t n = g.order();
  if (n > cap) throw SizeCapError("symmetric_eigenvalues: n exceeds dense cap " + std::to_string(cap));
  if (!(tol > 0)) throw PreconditionError("tolerance must be positive");
  std::vector<double> a(n * n, 0.0), v(n * n, 0.0);
  for (Vertex i = 0; i < n; ++i) {
    v[i * n + i] = 1.0;
    g.for_each_neighbor(i, [&](Vertex j) { a[i * n + j] = 1.0; });
  }
  auto off_norm = [&] {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2 * a[i * n + j] * a[i * n + j];
    return std::sqrt(s);
  };
  SpectralSummary out;
  double off = off_norm();
  std::size_t sweep = 0;
  for (; off > tol && sweep < max_sweeps; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    off = off_norm();
  }
  if (off > tol) throw ConvergenceError("Jacobi rotations did not converge in " + std::to_string(max_sweeps) + " sweeps");
  out.off_diagonal = off;

  for (std::size_t k = 0; k < n; ++k) {
    const double lam = a[k * n + k];
    double r = 0;
    for (Vertex i = 0; i < n; ++i) {
      double ax = 0;
      g.for_each_neighbor(i, [&](Vertex j) { ax += v[j * n + k]; });
      const double diff = ax - lam * v[i * n + k];
      r += diff * diff;
    }
    out.residual = std::max(out.residual, std::sqrt(r));
    out.eigenvalues.push_back(lam);
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
  const std::size_t d = regular_degree(g);
  if (d != kUnreachable) {
    const double dd = static_cast<double>(d);
    for (double lam : out.eigenvalues)
      if (std::abs(lam) < dd - 1e-8) out.lambda = std::max(out.lambda, std::abs(lam));
  }
  return out;
}

struct MixingCheck {
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};

inline constexpr double kMixingSlack = 1e-9;

/// |e(S,T) − d|S||T|/n| against λ sqrt(|S||T|(1 − |S|/n)(1 − |T|/n)), with e(S,T) the number of
/// ordered pairs (x, y) in S x T with xy an edge. Holds when lhs <= rhs + 1e-9.
inline MixingCheck mixing_check(const Graph& g, const VertexSet& s, const VertexSet& t, double lambda) {
  const std::size_t d = regular_degree(g);
  if (d == kUnreachable) throw PreconditionError("mixing check needs a regular graph");
  detail::check_members(g, s, "S");
  detail::check_members(g, t, "T");
  const double n = static_cast<double>(g.order());
  const auto e = static_cast<double>(detail::ordered_edge_count(g, s, t.mask(g.order())));
  const double ss = static_cast<double>(s.size()), tt = static_cast<double>(t.size());
  MixingCheck out;
  out.lhs = std::abs(e - static_cast<double>(d) * ss * tt / n);
  out.rhs = lambda * std::sqrt(std::max(0.0, ss * tt * (1 - ss / n) * (1 - tt / n)));
  out.holds = out.lhs <= out.rhs + kMixingSlack;
  return out;
}

/// Whether a homogeneous pair with both sides of size ceil(δ n) may exist in a d-regular graph.
/// False (ruled out) when d δ > λ (1 − δ), which excludes edgeless pairs by mixing, and d < δ n,
/// which excludes complete pairs by degree. True means the test is inconclusive.
inline bool homogeneous_pair_spectral_bound(const Graph& g, double delta, double lambda) {
  const std::size_t d = regular_degree(g);
  if (d == kUnreachable) throw PreconditionError("spectral bound needs a regular graph");
  if (!(delta > 0 && delta <= 1)) throw PreconditionError("delta must lie in (0, 1]");
  const double dd = static_cast<double>(d), n = static_cast<double>(g.order());
  const bool no_edgeless = dd * delta > lambda * (1 - delta) + kMixingSlack;
  const bool no_complete = dd < delta * n;
  return !(no_edgeless && no_complete);
}

inline bool homogeneous_pair_spectral_bound(const Graph& g, double delta) {
  return homogeneous_pair_spectral_bound(g, delta, symmetric_eigenvalues(g).lambda);
}

}  // namespace gentle
