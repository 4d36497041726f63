#pragma once

// JSON helpers shared by the interchange formats.

#include <initializer_list>
#include <string>

#include "json.hpp"
#include "strukt/cliquesum.hpp"
#include "strukt/graph.hpp"

namespace strukt::detail {

using json = nlohmann::json;

/// Edge-list string, {"file": path}, {"n": k, "edges": ...} or {"vertices": [...], "edges": ...}.
Graph graph_from_json(const json& j, const std::string& base_dir = ".");
/// {"n", "edges"} when the ids are 0..n-1, else {"vertices", "edges"}.
json graph_to_json(const Graph& g);

CliqueSumTree tree_from_json(const json& j, const std::string& base_dir = ".");
json tree_to_json(const CliqueSumTree& t);

/// ParseError naming the first key of `j` outside `allowed`.
void expect_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& what);

json parse_json(const std::string& text);

}  // namespace strukt::detail
