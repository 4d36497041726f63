#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace strukt {

using Vertex = int;

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple undirected graph over arbitrary nonnegative vertex identifiers.
///
/// Vertices are kept sorted; neighbor lists are sorted as well, so iteration
/// order (and everything derived from it) is deterministic.
class Graph {
 public:
  Graph() = default;
  /// Graph on vertices 0..n-1 with no edges.
  explicit Graph(int n);

  static Graph from_edges(int n, std::span<const Edge> edges);

  void add_vertex(Vertex v);
  /// Adds {u,v}; both endpoints are added when missing. Loops are rejected.
  void add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v);
  void remove_vertex(Vertex v);

  bool has_vertex(Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const;
  int degree(Vertex v) const;
  const std::vector<Vertex>& neighbors(Vertex v) const;
  const std::vector<Vertex>& vertices() const { return verts_; }
  std::vector<Edge> edges() const;

  std::size_t num_vertices() const { return verts_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  bool empty() const { return verts_.empty(); }

  /// Position of v in vertices(), or -1.
  int index_of(Vertex v) const;
  int max_degree() const;
  /// Smallest identifier not in use (max + 1, or 0 for the empty graph).
  Vertex next_vertex_id() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int checked_index(Vertex v) const;

  std::vector<Vertex> verts_;
  std::vector<std::vector<Vertex>> adj_;
  std::size_t num_edges_ = 0;
};

/// A sequence that must be a permutation of a graph's vertex set.
struct Ordering {
  std::vector<Vertex> sequence;

  bool is_permutation_of(const Graph& g) const;
  friend bool operator==(const Ordering&, const Ordering&) = default;
};

/// Ordered bags. Validity is relative to a graph, see `path_decomposition_violations`.
struct PathDecomposition {
  std::vector<std::vector<Vertex>> bags;

  /// Largest bag size minus one; -1 when there are no bags.
  int width() const;
};

/// Reason identifiers for an invalid decomposition of g: "pd-coverage" (vertex
/// in no bag), "pd-contiguity", "pd-edge" (edge in no bag), "pd-foreign-vertex".
/// Empty means valid.
std::vector<std::string> path_decomposition_violations(const PathDecomposition& pd, const Graph& g);

/// Replaces e by a path through a fresh vertex (g.next_vertex_id()).
Graph subdivide_edge(const Graph& g, Edge e);

/// Every vertex whose degree exceeds d.
std::vector<Vertex> high_degree_vertices(const Graph& g, int d);

Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep);
Graph remove_vertices(const Graph& g, std::span<const Vertex> drop);
bool is_connected(const Graph& g);
std::vector<std::vector<Vertex>> connected_components(const Graph& g);
bool is_clique(const Graph& g, std::span<const Vertex> vs);
/// Every vertex and edge of `sub` is present in `super`.
bool is_subgraph(const Graph& sub, const Graph& super);
/// Relabels vertices to 0..n-1 preserving their relative order. `old_ids[i]` is the old id of i.
Graph compact(const Graph& g, std::vector<Vertex>* old_ids = nullptr);
Graph graph_union(const Graph& a, const Graph& b);

}  // namespace strukt
