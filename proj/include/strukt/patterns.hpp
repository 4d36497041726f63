#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strukt/budget.hpp"
#include "strukt/graph.hpp"

namespace strukt {

/// Paths are keyed by the pattern edge {u < v} and run from branch(u) to branch(v).
using PathMap = std::map<Edge, std::vector<Vertex>>;

struct TopMinorModel {
  std::map<Vertex, Vertex> branch;
  PathMap paths;

  friend bool operator==(const TopMinorModel&, const TopMinorModel&) = default;
};

struct ImmersionModel {
  std::map<Vertex, Vertex> branch;
  PathMap paths;
  bool strong = false;

  friend bool operator==(const ImmersionModel&, const ImmersionModel&) = default;
};

/// Exhaustive: nullopt proves h is not a topological minor of g. Refuses
/// hosts above budget.max_host_vertices or patterns above
/// budget.max_pattern_edges edges (ResourceError), and node-budget blowups.
std::optional<TopMinorModel> find_topological_minor(const Graph& h, const Graph& g, const SearchBudget& budget = {});

std::optional<ImmersionModel> find_immersion(const Graph& h, const Graph& g, bool strong,
                                             const SearchBudget& budget = {});

struct ModelCheck {
  bool ok = true;
  /// Reason identifiers: "branch injectivity", "missing path", "path endpoints",
  /// "path edges", "simple path", "internal disjointness", "edge disjointness",
  /// "strongness".
  std::vector<std::string> reasons;
};

ModelCheck verify_model(const Graph& h, const Graph& g, const TopMinorModel& m);
ModelCheck verify_model(const Graph& h, const Graph& g, const ImmersionModel& m);

/// Witness documents: {"kind": "topological-minor" | "immersion", "strong": b,
/// "branch": [[h, g], ...], "paths": [{"edge": [u, v], "path": [...]}, ...]}.
std::string format_model(const TopMinorModel& m);
std::string format_model(const ImmersionModel& m);
TopMinorModel parse_top_minor_model(const std::string& json_text);
ImmersionModel parse_immersion_model(const std::string& json_text);

}  // namespace strukt
