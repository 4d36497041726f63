#pragma once

#include <map>
#include <string>
#include <vector>

#include "strukt/graph.hpp"

namespace strukt {

/// Identifies a clique of g2 with a clique of g1. `overlap` maps g2 vertices
/// to g1 vertices; the other g2 vertices get fresh ids g1.next_vertex_id(),
/// ... in increasing order. `deleted` lists seam edges (g1 ids) to drop.
Graph clique_sum(const Graph& g1, const Graph& g2, const std::map<Vertex, Vertex>& overlap,
                 const std::vector<Edge>& deleted = {});

struct SumEdge {
  int parent = 0;
  int child = 0;
  /// child vertex -> parent vertex, both in the pieces' own ids.
  std::map<Vertex, Vertex> overlap;
  /// Seam edges in parent ids.
  std::vector<Edge> deleted;

  friend bool operator==(const SumEdge&, const SumEdge&) = default;
};

/// Pieces glued along a rooted tree. The root keeps its vertex ids; piece p's
/// own (non-seam) vertices get a block of fresh ids whose position depends
/// only on p, so the composed graph does not depend on the gluing order.
/// Deleted seam edges are removed after all identifications.
struct CliqueSumTree {
  std::vector<Graph> pieces;
  std::vector<SumEdge> edges;

  friend bool operator==(const CliqueSumTree&, const CliqueSumTree&) = default;
};

/// Problems with the tree, each naming the offending tree edge or piece.
/// Empty means valid.
std::vector<std::string> tree_violations(const CliqueSumTree& t);

/// Global id of each piece vertex in the composition.
std::vector<std::map<Vertex, Vertex>> piece_embeddings(const CliqueSumTree& t);

/// Throws ContractError with the first violation.
Graph compose(const CliqueSumTree& t);
/// The composition with every seam edge kept.
Graph compose_undeleted(const CliqueSumTree& t);
/// Folds the tree edges in the given order; each child must be glued after its parent.
Graph compose_in_order(const CliqueSumTree& t, const std::vector<int>& edge_order);

/// Ordering of compose(t) with infinite-depth admissibility at most a + D, provided
/// every piece has at most `a` vertices of degree above D (ContractError otherwise).
/// Each piece is ordered seam first, then its high-degree vertices, then the rest,
/// each block by id; pieces are appended root first, in breadth-first order.
Ordering converse_ordering(const CliqueSumTree& t, int D, int a);

/// JSON interchange. Pieces are edge-list strings, {"file": path} (relative to
/// `base_dir`), or {"n": k, "edges": [[u, v], ...]}.
CliqueSumTree parse_clique_sum_tree(const std::string& json_text, const std::string& base_dir = ".");
std::string format_clique_sum_tree(const CliqueSumTree& t);

}  // namespace strukt
