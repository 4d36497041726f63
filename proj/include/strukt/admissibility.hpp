#pragma once

#include <limits>
#include <map>
#include <string>
#include <string_view>

#include "strukt/budget.hpp"
#include "strukt/graph.hpp"

namespace strukt {

/// Path length bound. kInfiniteDepth means unbounded.
using Depth = int;
inline constexpr Depth kInfiniteDepth = std::numeric_limits<int>::max();

/// "inf" or a positive integer.
Depth parse_depth(std::string_view text);
std::string format_depth(Depth d);

struct AdmissibilityReport {
  int value = 0;
  Ordering ordering;
  std::map<Vertex, int> per_vertex;
};

/// Maximum number of paths of length <= d from the k-th vertex (1-based) of
/// `order` to earlier vertices, pairwise meeting only at the start.
///
/// d = inf is a max-flow computation. Finite d >= 2 is a backtracking search
/// charged against `budget.max_nodes`.
int backconnectivity(const Graph& g, const Ordering& order, int k, Depth d,
                     const SearchBudget& budget = {});

AdmissibilityReport ordering_admissibility(const Graph& g, const Ordering& order, Depth d,
                                           const SearchBudget& budget = {});

/// Minimum over all orderings. Exponential in |V(g)|; graphs with more than
/// `max_vertices` vertices are refused with ResourceError.
AdmissibilityReport admissibility_exact(const Graph& g, Depth d, const SearchBudget& budget = {},
                                        int max_vertices = 16);

/// Back-to-front greedy: the last free slot gets the vertex with the smallest
/// backconnectivity into the rest. An upper bound; for d = 1 it is the
/// degeneracy.
AdmissibilityReport admissibility_greedy(const Graph& g, Depth d, const SearchBudget& budget = {});

}  // namespace strukt
