#include "json_support.hpp"

#include <algorithm>
#include <filesystem>

#include "strukt/error.hpp"
#include "strukt/io.hpp"

namespace strukt::detail {

Graph graph_from_json(const json& j, const std::string& base_dir) {
  if (j.is_string()) return parse_graph(j.get<std::string>());
  if (!j.is_object()) throw ParseError(0, "graph must be an edge-list string or an object");
  if (j.contains("file")) {
    expect_keys(j, {"file"}, "graph");
    std::filesystem::path p(j.at("file").get<std::string>());
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return read_graph(p.string());
  }
  expect_keys(j, {"n", "vertices", "edges"}, "graph");
  Graph g;
  if (j.contains("n")) {
    if (j.contains("vertices")) throw ParseError(0, "graph has both n and vertices");
    int n = j.at("n").get<int>();
    if (n < 0) throw ValidationError("negative vertex count");
    g = Graph(n);
  } else if (j.contains("vertices")) {
    for (const auto& v : j.at("vertices")) {
      Vertex x = v.get<Vertex>();
      if (x < 0) throw ValidationError("negative vertex id");
      g.add_vertex(x);
    }
  } else {
    throw ParseError(0, "graph needs n or vertices");
  }
  for (const auto& e : j.value("edges", json::array())) {
    if (!e.is_array() || e.size() != 2) throw ParseError(0, "edge must be a pair");
    Vertex u = e.at(0).get<Vertex>(), v = e.at(1).get<Vertex>();
    if (!g.has_vertex(u) || !g.has_vertex(v)) throw ValidationError("edge endpoint out of range");
    if (u == v) throw ValidationError("loop at " + std::to_string(u));
    g.add_edge(u, v);
  }
  return g;
}

json graph_to_json(const Graph& g) {
  json j;
  if (g.next_vertex_id() == static_cast<Vertex>(g.num_vertices())) {
    j["n"] = g.num_vertices();
  } else {
    j["vertices"] = g.vertices();
  }
  j["edges"] = json::array();
  for (const Edge& e : g.edges()) j["edges"].push_back({e.u, e.v});
  return j;
}

CliqueSumTree tree_from_json(const json& j, const std::string& base_dir) {
  expect_keys(j, {"pieces", "tree_edges"}, "tree");
  CliqueSumTree t;
  for (const auto& p : j.at("pieces")) t.pieces.push_back(graph_from_json(p, base_dir));
  for (const auto& e : j.value("tree_edges", json::array())) {
    expect_keys(e, {"parent", "child", "map", "deleted"}, "tree edge");
    SumEdge s;
    s.parent = e.at("parent").get<int>();
    s.child = e.at("child").get<int>();
    for (const auto& m : e.at("map")) {
      Vertex c = m.at(0).get<Vertex>();
      if (!s.overlap.emplace(c, m.at(1).get<Vertex>()).second)
        throw ValidationError("vertex " + std::to_string(c) + " mapped twice");
    }
    for (const auto& d : e.value("deleted", json::array())) s.deleted.emplace_back(d.at(0).get<Vertex>(), d.at(1).get<Vertex>());
    t.edges.push_back(std::move(s));
  }
  return t;
}

json tree_to_json(const CliqueSumTree& t) {
  json j;
  j["pieces"] = json::array();
  for (const Graph& g : t.pieces) {
    if (g.next_vertex_id() != static_cast<Vertex>(g.num_vertices()))
      throw ContractError("pieces must use vertex ids 0..n-1 for serialization");
    j["pieces"].push_back(graph_to_json(g));
  }
  j["tree_edges"] = json::array();
  for (const SumEdge& e : t.edges) {
    json s;
    s["parent"] = e.parent;
    s["child"] = e.child;
    s["map"] = json::array();
    for (auto [c, p] : e.overlap) s["map"].push_back({c, p});
    s["deleted"] = json::array();
    for (const Edge& d : e.deleted) s["deleted"].push_back({d.u, d.v});
    j["tree_edges"].push_back(s);
  }
  return j;
}

void expect_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  if (!j.is_object()) throw ParseError(0, what + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
      throw ParseError(0, "unknown field '" + k + "' in " + what);
  }
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, e.what());
  }
}

}  // namespace strukt::detail
