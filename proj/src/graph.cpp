#include "strukt/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "strukt/error.hpp"

namespace strukt {

namespace {

void insert_sorted(std::vector<Vertex>& xs, Vertex x) {
  xs.insert(std::lower_bound(xs.begin(), xs.end(), x), x);
}

bool erase_sorted(std::vector<Vertex>& xs, Vertex x) {
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.end() || *it != x) return false;
  xs.erase(it);
  return true;
}

}  // namespace

Graph::Graph(int n) {
  if (n < 0) throw DomainError("negative vertex count");
  verts_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) verts_[static_cast<std::size_t>(i)] = i;
  adj_.resize(static_cast<std::size_t>(n));
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  Graph g(n);
  for (const Edge& e : edges) {
    if (!g.has_vertex(e.u) || !g.has_vertex(e.v)) {
      throw ValidationError("edge endpoint out of range");
    }
    g.add_edge(e.u, e.v);
  }
  return g;
}

int Graph::index_of(Vertex v) const {
  auto it = std::lower_bound(verts_.begin(), verts_.end(), v);
  if (it == verts_.end() || *it != v) return -1;
  return static_cast<int>(it - verts_.begin());
}

int Graph::checked_index(Vertex v) const {
  int i = index_of(v);
  if (i < 0) throw DomainError("vertex " + std::to_string(v) + " not in graph");
  return i;
}

void Graph::add_vertex(Vertex v) {
  if (v < 0) throw ValidationError("negative vertex identifier");
  auto it = std::lower_bound(verts_.begin(), verts_.end(), v);
  if (it != verts_.end() && *it == v) return;
  auto pos = it - verts_.begin();
  verts_.insert(it, v);
  adj_.insert(adj_.begin() + pos, std::vector<Vertex>{});
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u == v) throw ValidationError("loop edge at vertex " + std::to_string(u));
  add_vertex(u);
  add_vertex(v);
  auto& nu = adj_[static_cast<std::size_t>(index_of(u))];
  if (std::binary_search(nu.begin(), nu.end(), v)) return;
  insert_sorted(nu, v);
  insert_sorted(adj_[static_cast<std::size_t>(index_of(v))], u);
  ++num_edges_;
}

void Graph::remove_edge(Vertex u, Vertex v) {
  if (!has_edge(u, v)) {
    throw MissingEdgeError("edge {" + std::to_string(u) + "," + std::to_string(v) + "} not in graph");
  }
  erase_sorted(adj_[static_cast<std::size_t>(index_of(u))], v);
  erase_sorted(adj_[static_cast<std::size_t>(index_of(v))], u);
  --num_edges_;
}

void Graph::remove_vertex(Vertex v) {
  int i = checked_index(v);
  for (Vertex w : std::vector<Vertex>(adj_[static_cast<std::size_t>(i)])) remove_edge(v, w);
  verts_.erase(verts_.begin() + i);
  adj_.erase(adj_.begin() + i);
}

bool Graph::has_vertex(Vertex v) const { return index_of(v) >= 0; }

bool Graph::has_edge(Vertex u, Vertex v) const {
  int i = index_of(u);
  if (i < 0) return false;
  const auto& nu = adj_[static_cast<std::size_t>(i)];
  return std::binary_search(nu.begin(), nu.end(), v);
}

int Graph::degree(Vertex v) const {
  return static_cast<int>(adj_[static_cast<std::size_t>(checked_index(v))].size());
}

const std::vector<Vertex>& Graph::neighbors(Vertex v) const {
  return adj_[static_cast<std::size_t>(checked_index(v))];
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (std::size_t i = 0; i < verts_.size(); ++i) {
    for (Vertex w : adj_[i]) {
      if (verts_[i] < w) out.emplace_back(verts_[i], w);
    }
  }
  return out;
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& n : adj_) best = std::max(best, static_cast<int>(n.size()));
  return best;
}

Vertex Graph::next_vertex_id() const { return verts_.empty() ? 0 : verts_.back() + 1; }

bool Ordering::is_permutation_of(const Graph& g) const {
  if (sequence.size() != g.num_vertices()) return false;
  std::vector<Vertex> sorted = sequence;
  std::sort(sorted.begin(), sorted.end());
  return sorted == g.vertices();
}

int PathDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

std::vector<std::string> path_decomposition_violations(const PathDecomposition& pd, const Graph& g) {
  std::vector<std::string> reasons;
  auto add = [&](const std::string& r) {
    if (std::find(reasons.begin(), reasons.end(), r) == reasons.end()) reasons.push_back(r);
  };
  std::map<Vertex, std::vector<int>> occurs;
  for (std::size_t i = 0; i < pd.bags.size(); ++i) {
    std::set<Vertex> seen;
    for (Vertex v : pd.bags[i]) {
      if (!g.has_vertex(v)) add("pd-foreign-vertex");
      if (seen.insert(v).second) occurs[v].push_back(static_cast<int>(i));
    }
  }
  for (Vertex v : g.vertices()) {
    auto it = occurs.find(v);
    if (it == occurs.end()) {
      add("pd-coverage");
      continue;
    }
    const auto& idx = it->second;
    if (idx.back() - idx.front() + 1 != static_cast<int>(idx.size())) add("pd-contiguity");
  }
  for (const Edge& e : g.edges()) {
    auto iu = occurs.find(e.u);
    auto iv = occurs.find(e.v);
    if (iu == occurs.end() || iv == occurs.end()) continue;  // already reported as coverage
    bool shared = false;
    for (int a : iu->second) {
      if (std::binary_search(iv->second.begin(), iv->second.end(), a)) {
        shared = true;
        break;
      }
    }
    if (!shared) add("pd-edge");
  }
  return reasons;
}

Graph subdivide_edge(const Graph& g, Edge e) {
  if (!g.has_edge(e.u, e.v)) {
    throw MissingEdgeError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} not in graph");
  }
  Graph out = g;
  Vertex w = g.next_vertex_id();
  out.remove_edge(e.u, e.v);
  out.add_edge(e.u, w);
  out.add_edge(w, e.v);
  return out;
}

std::vector<Vertex> high_degree_vertices(const Graph& g, int d) {
  std::vector<Vertex> out;
  for (Vertex v : g.vertices()) {
    if (g.degree(v) > d) out.push_back(v);
  }
  return out;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  std::set<Vertex> ks(keep.begin(), keep.end());
  Graph out;
  for (Vertex v : ks) {
    if (g.has_vertex(v)) out.add_vertex(v);
  }
  for (const Edge& e : g.edges()) {
    if (ks.count(e.u) && ks.count(e.v)) out.add_edge(e.u, e.v);
  }
  return out;
}

Graph remove_vertices(const Graph& g, std::span<const Vertex> drop) {
  std::set<Vertex> ds(drop.begin(), drop.end());
  std::vector<Vertex> keep;
  for (Vertex v : g.vertices()) {
    if (!ds.count(v)) keep.push_back(v);
  }
  return induced_subgraph(g, keep);
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<std::vector<Vertex>> comps;
  std::vector<char> seen(g.num_vertices(), 0);
  for (std::size_t s = 0; s < g.num_vertices(); ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp;
    std::queue<Vertex> q;
    q.push(g.vertices()[s]);
    seen[s] = 1;
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      comp.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        auto wi = static_cast<std::size_t>(g.index_of(w));
        if (!seen[wi]) {
          seen[wi] = 1;
          q.push(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

bool is_clique(const Graph& g, std::span<const Vertex> vs) {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!g.has_vertex(vs[i])) return false;
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (vs[i] == vs[j] || !g.has_edge(vs[i], vs[j])) return false;
    }
  }
  return true;
}

bool is_subgraph(const Graph& sub, const Graph& super) {
  for (Vertex v : sub.vertices()) {
    if (!super.has_vertex(v)) return false;
  }
  for (const Edge& e : sub.edges()) {
    if (!super.has_edge(e.u, e.v)) return false;
  }
  return true;
}

Graph compact(const Graph& g, std::vector<Vertex>* old_ids) {
  Graph out(static_cast<int>(g.num_vertices()));
  for (const Edge& e : g.edges()) out.add_edge(g.index_of(e.u), g.index_of(e.v));
  if (old_ids) *old_ids = g.vertices();
  return out;
}

Graph graph_union(const Graph& a, const Graph& b) {
  Graph out = a;
  for (Vertex v : b.vertices()) out.add_vertex(v);
  for (const Edge& e : b.edges()) out.add_edge(e.u, e.v);
  return out;
}

}  // namespace strukt
