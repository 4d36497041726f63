#pragma once

#include <cstdint>

namespace strukt {

/// Work limit for exhaustive searches. Exceeding it raises ResourceError;
/// a search never returns a partial answer.
struct SearchBudget {
  std::uint64_t max_nodes = 400'000'000;
  /// Worker threads for searches that shard their work. Results do not depend on it.
  unsigned threads = 1;
  /// Allow shortcuts (planarity test) ahead of exhaustive enumeration.
  bool fast_paths = true;
  /// Size limits of the pattern finders.
  int max_host_vertices = 30;
  int max_pattern_edges = 12;
};

}  // namespace strukt
