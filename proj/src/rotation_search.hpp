#pragma once

// Dense rotation-system machinery shared by the embedding operations.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "strukt/budget.hpp"
#include "strukt/embedding.hpp"
#include "strukt/graph.hpp"

namespace strukt::detail {

/// Darts 2j and 2j+1 are the two directions of graph.edges()[j]; 2j leaves the smaller endpoint.
/// A face-tracing state is 2*dart + (orientation == +1 ? 0 : 1).
struct DenseMap {
  int n = 0;
  int m = 0;
  std::vector<int> tail;
  std::vector<int> head;
  std::vector<int> next;  // successor dart in the rotation at tail
  std::vector<int> prev;
  std::vector<int> sign;                // per edge
  std::vector<std::vector<int>> out;    // darts leaving each vertex index, ascending

  static DenseMap skeleton(const Graph& g);
  static DenseMap from_embedding(const Embedding& e);

  int transition(int state) const {
    const int d = state >> 1;
    const int o = (state & 1) ? -1 : 1;
    const int o2 = o * sign[static_cast<std::size_t>(d >> 1)];
    const int r = d ^ 1;
    const int nd = o2 == 1 ? next[static_cast<std::size_t>(r)] : prev[static_cast<std::size_t>(r)];
    return (nd << 1) | (o2 == 1 ? 0 : 1);
  }
  int mirror(int state) const {
    const int d = state >> 1;
    const int o = (state & 1) ? -1 : 1;
    const int o2 = -o * sign[static_cast<std::size_t>(d >> 1)];
    return ((d ^ 1) << 1) | (o2 == 1 ? 0 : 1);
  }
  /// Face cycles as state sequences, one per face, deterministic order. Walks
  /// start from +1 states first, so orientable maps only use +1 states.
  std::vector<std::vector<int>> faces() const;
  int face_count() const;
};

/// Girth-derived lower bound on face length for connected graphs with m >= 2.
int min_face_length(const Graph& g);

/// Leaf visitor: gets the completed map and its Euler genus; returns true to stop the item.
using LeafVisitor = std::function<bool(const DenseMap&, int eg)>;

/// One independent unit of enumeration work.
struct ItemResult {
  std::uint64_t nodes = 0;
  bool exhausted = false;  // hit the node cap
};

/// Enumerates rotation systems of a connected graph, every vertex of degree
/// >= 3 branching. In non-orientable mode the signs of non-tree edges (a BFS
/// tree is pinned to +1) are branched as soon as both endpoints are placed,
/// and only leaves with some -1 are visited. Branches whose Euler genus must
/// exceed `max_eg()` are pruned; the bound is re-read at every node.
class RotationEnumerator {
 public:
  RotationEnumerator(const Graph& g, bool orientable);

  /// Number of work items: rotations of the first branching vertex (at least 1).
  std::size_t item_count() const { return first_rotations_; }
  bool orientable() const { return orientable_; }
  ItemResult run_item(std::size_t item, const std::function<int()>& max_eg, const LeafVisitor& visit,
                      std::uint64_t node_cap) const;

 private:
  DenseMap base_;
  bool orientable_;
  std::vector<int> order_;  // branching vertex indices
  std::vector<char> fixed_at_start_;
  std::vector<std::vector<int>> level_edges_;  // free-sign edges completed at each level
  std::size_t first_rotations_ = 1;
  int min_len_ = 3;
};

/// Smallest set of masks (indices, ascending) whose union has all `nbits` low
/// bits set, if one of size <= limit exists.
std::optional<std::vector<int>> min_face_cover(const std::vector<std::uint64_t>& masks, std::size_t nbits, int limit);

/// Embedding of g described by a completed map.
Embedding to_embedding(const Graph& g, const DenseMap& map);

/// Calls work(0..count-1) on up to `threads` workers.
void run_parallel(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& work);

}  // namespace strukt::detail
