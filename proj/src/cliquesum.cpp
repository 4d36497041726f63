#include "strukt/cliquesum.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "json_support.hpp"
#include "strukt/error.hpp"
#include "strukt/io.hpp"

namespace strukt {

using json = nlohmann::json;

namespace {

std::string at_edge(std::size_t i) { return "tree edge " + std::to_string(i) + ": "; }

std::vector<Vertex> keys(const std::map<Vertex, Vertex>& m) {
  std::vector<Vertex> out;
  for (auto [k, v] : m) out.push_back(k);
  return out;
}

std::vector<Vertex> values(const std::map<Vertex, Vertex>& m) {
  std::vector<Vertex> out;
  for (auto [k, v] : m) out.push_back(v);
  return out;
}

std::vector<std::string> overlap_violations(const Graph& g1, const Graph& g2, const std::map<Vertex, Vertex>& overlap,
                                            const std::vector<Edge>& deleted) {
  std::vector<std::string> out;
  auto dom = keys(overlap);
  auto img = values(overlap);
  for (Vertex v : dom)
    if (!g2.has_vertex(v)) out.push_back("overlap vertex " + std::to_string(v) + " missing from child");
  for (Vertex v : img)
    if (!g1.has_vertex(v)) out.push_back("overlap image " + std::to_string(v) + " missing from parent");
  if (!out.empty()) return out;
  if (std::set<Vertex>(img.begin(), img.end()).size() != img.size()) out.push_back("overlap map is not injective");
  if (!is_clique(g2, dom)) out.push_back("overlap domain is not a clique");
  if (!is_clique(g1, img)) out.push_back("overlap image is not a clique");
  std::set<Vertex> in_img(img.begin(), img.end());
  for (const Edge& e : deleted) {
    if (e.u == e.v || !in_img.contains(e.u) || !in_img.contains(e.v))
      out.push_back("deleted edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} is not a seam edge");
  }
  return out;
}

int root_of(const CliqueSumTree& t) {
  std::vector<char> has_parent(t.pieces.size(), 0);
  for (const auto& e : t.edges)
    if (e.child >= 0 && e.child < static_cast<int>(t.pieces.size())) has_parent[e.child] = 1;
  for (std::size_t p = 0; p < t.pieces.size(); ++p)
    if (!has_parent[p]) return static_cast<int>(p);
  return -1;
}

// Tree edges in breadth-first order from the root, children in list order.
std::vector<int> bfs_edges(const CliqueSumTree& t) {
  std::vector<int> out;
  std::deque<int> q{root_of(t)};
  while (!q.empty()) {
    int p = q.front();
    q.pop_front();
    for (std::size_t i = 0; i < t.edges.size(); ++i) {
      if (t.edges[i].parent == p) {
        out.push_back(static_cast<int>(i));
        q.push_back(t.edges[i].child);
      }
    }
  }
  return out;
}

void require_valid(const CliqueSumTree& t) {
  auto v = tree_violations(t);
  if (!v.empty()) throw ContractError(v.front());
}

// First fresh id of each non-root piece.
std::vector<Vertex> fresh_blocks(const CliqueSumTree& t, int root) {
  std::vector<Vertex> start(t.pieces.size(), 0);
  std::vector<std::size_t> seam(t.pieces.size(), 0);
  for (const auto& e : t.edges) seam[e.child] = e.overlap.size();
  Vertex next = t.pieces[root].next_vertex_id();
  for (std::size_t p = 0; p < t.pieces.size(); ++p) {
    if (static_cast<int>(p) == root) continue;
    start[p] = next;
    next += static_cast<Vertex>(t.pieces[p].num_vertices() - seam[p]);
  }
  return start;
}

struct Folded {
  Graph graph;
  std::vector<std::map<Vertex, Vertex>> emb;
  std::vector<Edge> deleted;
};

Folded fold(const CliqueSumTree& t, const std::vector<int>& edge_order) {
  require_valid(t);
  if (edge_order.size() != t.edges.size()) throw ContractError("edge order must list every tree edge once");
  const int root = root_of(t);
  auto start = fresh_blocks(t, root);
  Folded f;
  f.emb.resize(t.pieces.size());
  std::vector<char> placed(t.pieces.size(), 0), used(t.edges.size(), 0);
  auto add_piece = [&](int p) {
    const Graph& g = t.pieces[p];
    for (Vertex v : g.vertices()) f.graph.add_vertex(f.emb[p].at(v));
    for (const Edge& e : g.edges()) f.graph.add_edge(f.emb[p].at(e.u), f.emb[p].at(e.v));
    placed[p] = 1;
  };
  for (Vertex v : t.pieces[root].vertices()) f.emb[root][v] = v;
  add_piece(root);
  for (int i : edge_order) {
    if (i < 0 || i >= static_cast<int>(t.edges.size()) || used[i])
      throw ContractError("edge order must list every tree edge once");
    used[i] = 1;
    const SumEdge& e = t.edges[i];
    if (!placed[e.parent]) throw ContractError(at_edge(i) + "child glued before its parent");
    Vertex next = start[e.child];
    for (Vertex v : t.pieces[e.child].vertices()) {
      auto it = e.overlap.find(v);
      f.emb[e.child][v] = it != e.overlap.end() ? f.emb[e.parent].at(it->second) : next++;
    }
    add_piece(e.child);
    for (const Edge& d : e.deleted) f.deleted.emplace_back(f.emb[e.parent].at(d.u), f.emb[e.parent].at(d.v));
  }
  return f;
}

}  // namespace

Graph clique_sum(const Graph& g1, const Graph& g2, const std::map<Vertex, Vertex>& overlap,
                 const std::vector<Edge>& deleted) {
  auto v = overlap_violations(g1, g2, overlap, deleted);
  if (!v.empty()) throw ContractError(v.front());
  Graph out = g1;
  std::map<Vertex, Vertex> id;
  Vertex next = g1.next_vertex_id();
  for (Vertex x : g2.vertices()) {
    auto it = overlap.find(x);
    id[x] = it != overlap.end() ? it->second : next++;
    out.add_vertex(id[x]);
  }
  for (const Edge& e : g2.edges()) out.add_edge(id[e.u], id[e.v]);
  for (const Edge& e : deleted)
    if (out.has_edge(e.u, e.v)) out.remove_edge(e.u, e.v);
  return out;
}

std::vector<std::string> tree_violations(const CliqueSumTree& t) {
  std::vector<std::string> out;
  const int n = static_cast<int>(t.pieces.size());
  if (n == 0) return {"no pieces"};
  if (static_cast<int>(t.edges.size()) != n - 1)
    out.push_back("a tree on " + std::to_string(n) + " pieces needs " + std::to_string(n - 1) + " edges");
  std::vector<int> parents(n, 0);
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const SumEdge& e = t.edges[i];
    if (e.parent < 0 || e.parent >= n || e.child < 0 || e.child >= n || e.parent == e.child) {
      out.push_back(at_edge(i) + "piece index out of range");
      continue;
    }
    if (++parents[e.child] == 2) out.push_back(at_edge(i) + "piece " + std::to_string(e.child) + " has two parents");
    for (const auto& msg : overlap_violations(t.pieces[e.parent], t.pieces[e.child], e.overlap, e.deleted))
      out.push_back(at_edge(i) + msg);
  }
  if (!out.empty()) return out;
  int root = root_of(t);
  if (root < 0) return {"tree has no root"};
  std::vector<char> seen(n, 0);
  seen[root] = 1;
  for (int i : bfs_edges(t)) seen[t.edges[i].child] = 1;
  for (int p = 0; p < n; ++p)
    if (!seen[p]) out.push_back("piece " + std::to_string(p) + " is not reachable from the root");
  return out;
}

std::vector<std::map<Vertex, Vertex>> piece_embeddings(const CliqueSumTree& t) {
  return fold(t, bfs_edges(t)).emb;
}

Graph compose_in_order(const CliqueSumTree& t, const std::vector<int>& edge_order) {
  Folded f = fold(t, edge_order);
  for (const Edge& e : f.deleted)
    if (f.graph.has_edge(e.u, e.v)) f.graph.remove_edge(e.u, e.v);
  return f.graph;
}

Graph compose(const CliqueSumTree& t) {
  require_valid(t);
  return compose_in_order(t, bfs_edges(t));
}

Graph compose_undeleted(const CliqueSumTree& t) {
  require_valid(t);
  return fold(t, bfs_edges(t)).graph;
}

Ordering converse_ordering(const CliqueSumTree& t, int D, int a) {
  require_valid(t);
  for (std::size_t p = 0; p < t.pieces.size(); ++p) {
    auto high = high_degree_vertices(t.pieces[p], D);
    if (static_cast<int>(high.size()) > a)
      throw ContractError("piece " + std::to_string(p) + " has " + std::to_string(high.size()) +
                          " vertices of degree above " + std::to_string(D) + ", more than " + std::to_string(a));
  }
  auto order = bfs_edges(t);
  Folded f = fold(t, order);
  Ordering out;
  auto append = [&](int p, const std::map<Vertex, Vertex>& seam) {
    const Graph& g = t.pieces[p];
    std::vector<Vertex> high;
    for (Vertex v : high_degree_vertices(g, D))
      if (!seam.contains(v)) high.push_back(v);
    std::sort(high.begin(), high.end());
    for (Vertex v : high) out.sequence.push_back(f.emb[p].at(v));
    for (Vertex v : g.vertices())
      if (!seam.contains(v) && !std::binary_search(high.begin(), high.end(), v))
        out.sequence.push_back(f.emb[p].at(v));
  };
  append(root_of(t), {});
  for (int i : order) append(t.edges[i].child, t.edges[i].overlap);
  return out;
}

CliqueSumTree parse_clique_sum_tree(const std::string& json_text, const std::string& base_dir) {
  json j = detail::parse_json(json_text);
  try {
    return detail::tree_from_json(j, base_dir);
  } catch (const json::exception& e) {
    throw ParseError(0, e.what());
  }
}

std::string format_clique_sum_tree(const CliqueSumTree& t) { return detail::tree_to_json(t).dump(2) + "\n"; }

}  // namespace strukt
