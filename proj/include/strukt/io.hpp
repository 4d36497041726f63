#pragma once

#include <string>
#include <string_view>

#include "strukt/graph.hpp"

namespace strukt {

/// Parses the line-oriented edge-list format:
///
///     # comment
///     p <num_vertices>
///     e <u> <v>
///
/// Vertices are 0..num_vertices-1. Duplicate edges collapse. Throws
/// ParseError (with line number) on malformed lines and ValidationError on
/// loops or out-of-range endpoints.
Graph parse_graph(std::string_view text);

/// Canonical form: `p n`, then edges in lexicographic order. Requires vertex
/// set {0..n-1}; use `compact` first for other graphs.
std::string serialize_graph(const Graph& g);

/// Reads a whole file; "-" means standard input.
std::string read_text(const std::string& path);
Graph read_graph(const std::string& path);

/// Whitespace- or comma-separated vertex identifiers.
Ordering parse_ordering(std::string_view text);
std::string format_ordering(const Ordering& o);

}  // namespace strukt
