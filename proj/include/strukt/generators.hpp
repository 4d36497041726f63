#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "strukt/embedding.hpp"
#include "strukt/graph.hpp"

namespace strukt {

/// Cycle 0..n-1 plus hubs n and n+1, each adjacent to the whole cycle. n >= 3.
Graph double_wheel(int n);

/// w = 0, w_i = i (1 <= i <= t), z_ij = t + (i-1)t + j, edges w z_ij and w_i z_ij. t >= 1.
Graph m_graph(int t);

/// Brick wall from the (rows+1) x (2 cols + 2) grid: the vertical between rows i
/// and i+1 in column j is kept when i + j is even, then degree-1 vertices are
/// peeled off and the rest renumbered row-major.
/// |V| = (rows+1)(2 cols+2) - 2, |E| = (rows+1)(2 cols+1) + rows(cols+1) - 2.
Graph wall(int rows, int cols);
/// The wall drawn on its grid coordinates.
Embedding embedded_wall(int rows, int cols);

struct AdmissibilityWall {
  Embedding embedding;
  /// The t added vertices, in attachment order.
  std::vector<Vertex> hubs;
};

/// wall(t^2, t^2) with each perimeter edge subdivided once; added vertex i is
/// joined to the i-th block of t consecutive subdivision vertices around the
/// outer face, starting from the smallest one. t >= 2.
AdmissibilityWall embedded_admissibility_wall(int t);
Graph admissibility_wall(int t);

Graph clique(int n);
/// n >= 3.
Graph cycle(int n);
/// n vertices, n - 1 edges.
Graph path(int n);
/// Row-major r x c grid.
Graph grid(int r, int c);
Embedding embedded_grid(int r, int c);
Graph complete_bipartite(int a, int b);
Graph star(int leaves);

/// G(n, p) on 0..n-1 from a seeded 64-bit Mersenne twister; each pair is
/// tested in lexicographic order. Same seed, same graph, on every platform.
Graph random_graph(int n, double p, std::uint64_t seed);

/// Straight-line drawing: rotations sort neighbors counterclockwise by angle.
/// `coords[i]` belongs to g.vertices()[i].
Embedding embed_by_coordinates(const Graph& g, const std::vector<std::pair<double, double>>& coords);

}  // namespace strukt
