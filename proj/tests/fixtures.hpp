#pragma once

#include <cstddef>
#include <vector>

#include "gentle/gentle.hpp"

namespace fixture {

using gentle::Graph;
using gentle::Vertex;
using gentle::VertexSet;

inline Graph complete(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph cycle(std::size_t n) {
  Graph g(n);
  for (Vertex v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

inline Graph path(std::size_t n) {
  Graph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline Graph star(std::size_t leaves) {
  Graph g(leaves + 1);
  for (Vertex v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

/// Sides 0..a-1 and a..a+b-1.
inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  Graph g(a + b);
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = a; v < a + b; ++v) g.add_edge(u, v);
  return g;
}

/// K_a on 0..a-1 and K_b on a..a+b-1.
inline Graph two_cliques(std::size_t a, std::size_t b) {
  Graph g(a + b);
  for (Vertex u = 0; u < a + b; ++u)
    for (Vertex v = u + 1; v < a + b; ++v)
      if ((u < a) == (v < a)) g.add_edge(u, v);
  return g;
}

inline Graph petersen() {
  Graph g(10);
  for (Vertex i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

inline VertexSet range(Vertex a, Vertex b) { return VertexSet::range(a, b); }

inline gentle::VertexPartition blocks(std::vector<std::vector<Vertex>> b) { return {std::move(b)}; }

}  // namespace fixture
