#pragma once

#include <vector>

#include "cyclepack/graph.hpp"

namespace fx {

using cyclepack::Rat;
using cyclepack::WeightedGraph;

inline WeightedGraph unit_triangle() {
  WeightedGraph g(3);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(2, 0, 1);
  return g;
}

inline WeightedGraph path_graph(int n) {
  WeightedGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1, 1);
  return g;
}

// Two degree-3 vertices (0, 1) joined by three internally disjoint
// two-edge unit paths through 2, 3, 4.
inline WeightedGraph theta() {
  WeightedGraph g(5);
  g.add_edge(0, 2, 1);
  g.add_edge(2, 1, 1);
  g.add_edge(0, 3, 1);
  g.add_edge(3, 1, 1);
  g.add_edge(0, 4, 1);
  g.add_edge(4, 1, 1);
  return g;
}

inline WeightedGraph k4() {
  WeightedGraph g(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) g.add_edge(i, j, 1);
  return g;
}

inline WeightedGraph k5() {
  WeightedGraph g(5);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) g.add_edge(i, j, 1);
  return g;
}

inline WeightedGraph two_triangles() {
  WeightedGraph g(6);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(2, 0, 1);
  g.add_edge(3, 4, 1);
  g.add_edge(4, 5, 1);
  g.add_edge(5, 3, 1);
  return g;
}

inline WeightedGraph unit_cycle(int n) {
  WeightedGraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, 1);
  return g;
}

// r x c grid, unit weights; vertex (i,j) -> i*c + j.
inline WeightedGraph grid(int r, int c) {
  WeightedGraph g(r * c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      if (j + 1 < c) g.add_edge(i * c + j, i * c + j + 1, 1);
      if (i + 1 < r) g.add_edge(i * c + j, (i + 1) * c + j, 1);
    }
  return g;
}

inline WeightedGraph cube_q3() {
  WeightedGraph g(8);
  for (int v = 0; v < 8; ++v)
    for (int b = 0; b < 3; ++b) {
      int w = v ^ (1 << b);
      if (v < w) g.add_edge(v, w, 1);
    }
  return g;
}

// p internally disjoint two-edge unit paths between poles 0 and 1
// (p = 3 gives the theta graph up to labels).
inline WeightedGraph parallel_paths(int p) {
  WeightedGraph g(2 + p);
  for (int i = 0; i < p; ++i) {
    g.add_edge(0, 2 + i, 1);
    g.add_edge(2 + i, 1, 1);
  }
  return g;
}

}  // namespace fx
