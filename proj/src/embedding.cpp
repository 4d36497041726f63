#include "strukt/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <queue>
#include <sstream>

#include "rotation_search.hpp"
#include "strukt/error.hpp"

namespace strukt {

Surface Surface::with_handles(int h) {
  if (h < 0) throw DomainError("negative handle count");
  return {true, 2 * h, 0};
}

Surface Surface::with_crosscaps(int c) {
  if (c < 0) throw DomainError("negative crosscap count");
  if (c == 0) return sphere();
  return {false, c, 0};
}

std::string Surface::name() const {
  std::string base;
  if (orientable) {
    if (euler_genus == 0) base = "sphere";
    else if (euler_genus == 2) base = "torus";
    else base = "o" + std::to_string(euler_genus / 2);
  } else {
    if (euler_genus == 1) base = "projective";
    else if (euler_genus == 2) base = "klein";
    else base = "n" + std::to_string(euler_genus);
  }
  if (boundary_components > 0) base += "+b" + std::to_string(boundary_components);
  return base;
}

namespace {

int parse_count(std::string_view t) {
  int v = -1;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) throw ValidationError("bad surface: " + std::string(t));
  return v;
}

}  // namespace

Surface parse_surface(std::string_view text) {
  Surface s;
  int holes = 0;
  if (auto plus = text.find("+b"); plus != std::string_view::npos) {
    holes = parse_count(text.substr(plus + 2));
    text = text.substr(0, plus);
  }
  if (text == "sphere") s = Surface::sphere();
  else if (text == "torus") s = Surface::torus();
  else if (text == "projective") s = Surface::projective_plane();
  else if (text == "klein") s = Surface::klein_bottle();
  else if (text.size() > 1 && text[0] == 'o') s = Surface::with_handles(parse_count(text.substr(1)));
  else if (text.size() > 1 && text[0] == 'n') {
    int c = parse_count(text.substr(1));
    if (c == 0) throw ValidationError("bad surface: n0");
    s = Surface::with_crosscaps(c);
  } else {
    throw ValidationError("unknown surface: " + std::string(text));
  }
  s.boundary_components = holes;
  return s;
}

bool FaceWalk::is_simple_cycle() const {
  if (sides.size() < 3) return false;
  std::vector<Vertex> vs = vertices;
  std::sort(vs.begin(), vs.end());
  return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

bool FaceWalk::contains(Vertex v) const { return std::find(vertices.begin(), vertices.end(), v) != vertices.end(); }

Embedding::Embedding(Graph graph, std::vector<std::vector<Vertex>> rotation, std::vector<int> signature)
    : graph_(std::move(graph)), rotation_(std::move(rotation)), signature_(std::move(signature)) {
  edges_ = graph_.edges();
  if (rotation_.size() != graph_.num_vertices()) throw ValidationError("rotation count differs from vertex count");
  for (std::size_t i = 0; i < rotation_.size(); ++i) {
    std::vector<Vertex> r = rotation_[i];
    std::sort(r.begin(), r.end());
    if (r != graph_.neighbors(graph_.vertices()[i])) {
      throw ValidationError("rotation at " + std::to_string(graph_.vertices()[i]) + " does not list its neighbors once each");
    }
  }
  if (signature_.empty()) signature_.assign(edges_.size(), 1);
  if (signature_.size() != edges_.size()) throw ValidationError("signature length differs from edge count");
  for (int s : signature_) {
    if (s != 1 && s != -1) throw ValidationError("signature entries must be +1 or -1");
  }
}

const std::vector<Vertex>& Embedding::rotation(Vertex v) const {
  int i = graph_.index_of(v);
  if (i < 0) throw ValidationError("no vertex " + std::to_string(v));
  return rotation_[static_cast<std::size_t>(i)];
}

std::size_t Embedding::edge_index(Vertex u, Vertex v) const {
  Edge e(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) {
    throw MissingEdgeError("no edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
  }
  return static_cast<std::size_t>(it - edges_.begin());
}

int Embedding::sign(Vertex u, Vertex v) const { return signature_[edge_index(u, v)]; }

std::string format_embedding(const Embedding& e) {
  std::ostringstream out;
  const Graph& g = e.graph();
  for (std::size_t i = 0; i < g.num_vertices(); ++i) {
    out << "r " << g.vertices()[i] << ":";
    for (Vertex w : e.rotations()[i]) out << ' ' << w;
    out << '\n';
  }
  const auto edges = g.edges();
  for (std::size_t j = 0; j < edges.size(); ++j) {
    out << "s " << edges[j].u << ' ' << edges[j].v << ' ' << (e.signature()[j] == 1 ? '+' : '-') << '\n';
  }
  return out.str();
}

Embedding parse_embedding(std::string_view text) {
  std::map<Vertex, std::vector<Vertex>> rot;
  std::vector<std::pair<Edge, int>> signs;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto read_int = [&](std::istringstream& ls) {
    long long v = 0;
    if (!(ls >> v) || v < 0 || v > 1'000'000'000) throw ParseError(lineno, "expected a vertex id");
    return static_cast<Vertex>(v);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "r") {
      std::string head;
      if (!(ls >> head) || head.back() != ':') throw ParseError(lineno, "expected 'r <v>:'");
      head.pop_back();
      std::istringstream hs(head);
      Vertex v = read_int(hs);
      if (rot.count(v)) throw ParseError(lineno, "duplicate rotation for " + std::to_string(v));
      auto& r = rot[v];
      std::string tok;
      while (ls >> tok) {
        std::istringstream ts(tok);
        r.push_back(read_int(ts));
      }
    } else if (tag == "s") {
      Vertex u = read_int(ls);
      Vertex v = read_int(ls);
      std::string sg;
      if (!(ls >> sg) || (sg != "+" && sg != "-")) throw ParseError(lineno, "expected + or -");
      std::string extra;
      if (ls >> extra) throw ParseError(lineno, "trailing tokens");
      signs.emplace_back(Edge(u, v), sg == "+" ? 1 : -1);
    } else {
      throw ParseError(lineno, "unknown line type '" + tag + "'");
    }
  }
  Graph g;
  for (const auto& [v, r] : rot) {
    g.add_vertex(v);
    for (Vertex w : r) {
      if (w == v) throw ValidationError("loop at " + std::to_string(v));
      if (!rot.count(w)) throw ValidationError("neighbor " + std::to_string(w) + " has no rotation");
      g.add_edge(v, w);
    }
  }
  std::vector<std::vector<Vertex>> rotation;
  for (const auto& [v, r] : rot) rotation.push_back(r);
  const auto edges = g.edges();
  std::vector<int> sig(edges.size(), 1);
  for (const auto& [e, s] : signs) {
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e) throw ValidationError("signature for a missing edge");
    sig[static_cast<std::size_t>(it - edges.begin())] = s;
  }
  return Embedding(std::move(g), std::move(rotation), std::move(sig));
}

namespace {

void require_connected(const Graph& g) {
  if (g.empty()) throw DomainError("empty graph");
  if (!is_connected(g)) throw DomainError("graph is disconnected");
}

}  // namespace

std::vector<FaceWalk> trace_faces(const Embedding& e) {
  const Graph& g = e.graph();
  require_connected(g);
  if (g.num_edges() == 0) {
    FaceWalk f;
    f.vertices = {g.vertices().front()};
    return {f};
  }
  auto map = detail::DenseMap::from_embedding(e);
  std::vector<FaceWalk> out;
  for (const auto& cyc : map.faces()) {
    FaceWalk f;
    for (int st : cyc) {
      const int d = st >> 1;
      Side s{g.vertices()[static_cast<std::size_t>(map.tail[static_cast<std::size_t>(d)])],
             g.vertices()[static_cast<std::size_t>(map.head[static_cast<std::size_t>(d)])], (st & 1) ? -1 : 1};
      f.sides.push_back(s);
      f.vertices.push_back(s.from);
    }
    out.push_back(std::move(f));
  }
  return out;
}

bool is_orientable(const Embedding& e) {
  const Graph& g = e.graph();
  std::vector<int> flip(g.num_vertices(), 0);
  for (std::size_t start = 0; start < g.num_vertices(); ++start) {
    if (flip[start] != 0) continue;
    flip[start] = 1;
    std::queue<std::size_t> q;
    q.push(start);
    while (!q.empty()) {
      std::size_t i = q.front();
      q.pop();
      Vertex v = g.vertices()[i];
      for (Vertex w : g.neighbors(v)) {
        auto wi = static_cast<std::size_t>(g.index_of(w));
        int want = flip[i] * e.sign(v, w);
        if (flip[wi] == 0) {
          flip[wi] = want;
          q.push(wi);
        } else if (flip[wi] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

EulerGenus euler_genus(const Embedding& e) {
  const Graph& g = e.graph();
  const auto faces = trace_faces(e);
  const int eg = 2 - static_cast<int>(g.num_vertices()) + static_cast<int>(g.num_edges()) - static_cast<int>(faces.size());
  return {eg, is_orientable(e)};
}

bool fits_in(const EulerGenus& eg, const Surface& s) {
  if (s.orientable) return eg.orientable && eg.euler_genus <= s.euler_genus;
  return eg.orientable ? eg.euler_genus <= s.euler_genus - 1 : eg.euler_genus <= s.euler_genus;
}

std::vector<int> min_dominating_faces(const Embedding& e) {
  const Graph& g = e.graph();
  const auto faces = trace_faces(e);
  std::vector<Vertex> high;
  for (Vertex v : g.vertices()) {
    if (g.degree(v) >= 4) high.push_back(v);
  }
  if (high.empty()) return {};
  if (high.size() > 64) throw ResourceError("more than 64 vertices of degree >= 4");
  std::vector<std::uint64_t> masks;
  for (const auto& f : faces) {
    std::uint64_t m = 0;
    for (std::size_t b = 0; b < high.size(); ++b) {
      if (f.contains(high[b])) m |= std::uint64_t{1} << b;
    }
    masks.push_back(m);
  }
  auto best = detail::min_face_cover(masks, high.size(), static_cast<int>(high.size()));
  return *best;
}

bool is_closed_2cell(const Embedding& e) {
  for (const auto& f : trace_faces(e)) {
    if (!f.is_simple_cycle()) return false;
  }
  return true;
}

namespace {

std::vector<std::vector<Vertex>> copy_rotations(const Embedding& e) { return e.rotations(); }

/// Inserts `nv` into the rotation at the corner of `face` at walk position i.
void insert_at_corner(const Graph& g, std::vector<std::vector<Vertex>>& rot, const FaceWalk& face, std::size_t i,
                      Vertex nv) {
  const std::size_t len = face.sides.size();
  const Side& s = face.sides[i];
  const Vertex incoming = face.sides[(i + len - 1) % len].from;
  const Vertex anchor = s.orientation == 1 ? incoming : s.to;
  auto& r = rot[static_cast<std::size_t>(g.index_of(s.from))];
  auto it = std::find(r.begin(), r.end(), anchor);
  r.insert(it + 1, nv);
}

Embedding rebuild(const Graph& g, const std::vector<std::vector<Vertex>>& rot_by_vertex,
                  const std::map<Edge, int>& signs) {
  std::vector<int> sig;
  for (const Edge& e : g.edges()) {
    auto it = signs.find(e);
    sig.push_back(it == signs.end() ? 1 : it->second);
  }
  return Embedding(g, rot_by_vertex, std::move(sig));
}

std::map<Edge, int> sign_map(const Embedding& e) {
  std::map<Edge, int> out;
  const auto edges = e.graph().edges();
  for (std::size_t j = 0; j < edges.size(); ++j) out[edges[j]] = e.signature()[j];
  return out;
}

/// Rotations keyed by vertex id, so a new vertex can be slotted in order.
std::map<Vertex, std::vector<Vertex>> rotation_map(const Embedding& e) {
  std::map<Vertex, std::vector<Vertex>> out;
  for (std::size_t i = 0; i < e.graph().num_vertices(); ++i) out[e.graph().vertices()[i]] = e.rotations()[i];
  return out;
}

std::vector<std::vector<Vertex>> flatten(const std::map<Vertex, std::vector<Vertex>>& m) {
  std::vector<std::vector<Vertex>> out;
  for (const auto& [v, r] : m) out.push_back(r);
  return out;
}

void check_face(const Embedding& e, const FaceWalk& face) {
  if (face.sides.empty()) throw ContractError("face has no sides");
  for (const auto& s : face.sides) {
    if (!e.graph().has_edge(s.from, s.to)) throw ContractError("face walk is not in the embedding");
  }
}

}  // namespace

Embedding subdivide_in_embedding(const Embedding& e, Edge edge, Vertex* added) {
  const Graph& g = e.graph();
  if (!g.has_edge(edge.u, edge.v)) throw MissingEdgeError("no edge to subdivide");
  const Vertex s = g.next_vertex_id();
  auto rot = rotation_map(e);
  auto signs = sign_map(e);
  const int old = signs.at(edge);
  std::replace(rot[edge.u].begin(), rot[edge.u].end(), edge.v, s);
  std::replace(rot[edge.v].begin(), rot[edge.v].end(), edge.u, s);
  rot[s] = {edge.u, edge.v};
  signs.erase(edge);
  signs[Edge(edge.u, s)] = old;
  signs[Edge(s, edge.v)] = 1;
  Graph h = subdivide_edge(g, edge);
  if (added) *added = s;
  return rebuild(h, flatten(rot), signs);
}

Embedding add_chord(const Embedding& e, const FaceWalk& face, std::size_t i, std::size_t j) {
  check_face(e, face);
  if (i >= face.sides.size() || j >= face.sides.size()) throw ContractError("corner outside the face");
  const Vertex a = face.sides[i].from;
  const Vertex b = face.sides[j].from;
  if (a == b) throw ValidationError("chord would be a loop");
  if (e.graph().has_edge(a, b)) throw ValidationError("chord would duplicate an edge");
  auto rot = copy_rotations(e);
  const Graph& g = e.graph();
  insert_at_corner(g, rot, face, i, b);
  insert_at_corner(g, rot, face, j, a);
  Graph h = g;
  h.add_edge(a, b);
  auto signs = sign_map(e);
  signs[Edge(a, b)] = face.sides[i].orientation * face.sides[j].orientation;
  return rebuild(h, rot, signs);
}

Embedding add_vertex_in_face(const Embedding& e, const FaceWalk& face, const std::vector<std::size_t>& corners) {
  check_face(e, face);
  const Graph& g = e.graph();
  const Vertex h = g.next_vertex_id();
  auto rot_vec = copy_rotations(e);
  std::vector<Vertex> seen;
  for (std::size_t c : corners) {
    if (c >= face.sides.size()) throw ContractError("corner outside the face");
    Vertex v = face.sides[c].from;
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) throw ValidationError("two corners at one vertex");
    seen.push_back(v);
    insert_at_corner(g, rot_vec, face, c, h);
  }
  std::map<Vertex, std::vector<Vertex>> rot;
  for (std::size_t i = 0; i < g.num_vertices(); ++i) rot[g.vertices()[i]] = rot_vec[i];
  rot[h] = std::vector<Vertex>(seen.rbegin(), seen.rend());
  Graph ng = g;
  ng.add_vertex(h);
  auto signs = sign_map(e);
  for (std::size_t c : corners) {
    ng.add_edge(h, face.sides[c].from);
    signs[Edge(h, face.sides[c].from)] = face.sides[c].orientation;
  }
  return rebuild(ng, flatten(rot), signs);
}

int find_face(const std::vector<FaceWalk>& faces, const std::vector<Vertex>& cycle, bool allow_reflection) {
  auto same_cyclic = [](const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    for (std::size_t r = 0; r < a.size(); ++r) {
      bool ok = true;
      for (std::size_t k = 0; k < a.size() && ok; ++k) ok = a[(r + k) % a.size()] == b[k];
      if (ok) return true;
    }
    return false;
  };
  std::vector<Vertex> rev(cycle.rbegin(), cycle.rend());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (same_cyclic(faces[f].vertices, cycle)) return static_cast<int>(f);
    if (allow_reflection && same_cyclic(faces[f].vertices, rev)) return static_cast<int>(f);
  }
  return -1;
}

namespace {

/// Is `sub` a cyclic subsequence of `walk` (in either direction)?
bool cyclic_subsequence(const std::vector<Vertex>& walk, const std::vector<Vertex>& sub) {
  if (sub.empty()) return true;
  if (walk.empty()) return false;
  auto forward = [&](const std::vector<Vertex>& s) {
    for (std::size_t start = 0; start < walk.size(); ++start) {
      if (walk[start] != s[0]) continue;
      std::size_t k = 1;
      for (std::size_t step = 1; step < walk.size() && k < s.size(); ++step) {
        if (walk[(start + step) % walk.size()] == s[k]) ++k;
      }
      if (k == s.size()) return true;
    }
    return false;
  };
  std::vector<Vertex> rev(sub.rbegin(), sub.rend());
  return forward(sub) || forward(rev);
}

}  // namespace

std::vector<std::string> disk_violations(const DiskGraph& d) {
  std::vector<std::string> out;
  const Graph& g = d.graph();
  if (g.empty() || !is_connected(g) || euler_genus(d.embedding).euler_genus != 0) {
    out.push_back("disk-genus");
    return out;
  }
  const auto faces = trace_faces(d.embedding);
  if (find_face(faces, d.outer_face.vertices) < 0) {
    out.push_back("disk-outer-face");
    return out;
  }
  std::vector<Vertex> b = d.boundary;
  std::sort(b.begin(), b.end());
  if (std::adjacent_find(b.begin(), b.end()) != b.end() || !cyclic_subsequence(d.outer_face.vertices, d.boundary)) {
    out.push_back("disk-boundary-order");
  }
  return out;
}

int radial_distance(const DiskGraph& d, Vertex u, Vertex w) {
  const Graph& g = d.graph();
  if (!g.has_vertex(u) || !g.has_vertex(w)) throw ContractError("u and w must be vertices of the graph");
  if (u == w) return 1;
  const auto faces = trace_faces(d.embedding);
  const int outer = find_face(faces, d.outer_face.vertices);
  // Regions: each inner face, plus the outer face cut at boundary vertices.
  std::vector<std::vector<Vertex>> regions;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (static_cast<int>(f) != outer) regions.push_back(faces[f].vertices);
  }
  const auto& ov = outer >= 0 ? faces[static_cast<std::size_t>(outer)].vertices : d.outer_face.vertices;
  std::vector<std::size_t> cuts;
  for (std::size_t i = 0; i < ov.size(); ++i) {
    if (std::find(d.boundary.begin(), d.boundary.end(), ov[i]) != d.boundary.end()) cuts.push_back(i);
  }
  if (cuts.empty()) {
    regions.push_back(ov);
  } else {
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      std::size_t a = cuts[k];
      std::size_t b = cuts[(k + 1) % cuts.size()];
      std::vector<Vertex> seg;
      std::size_t i = a;
      seg.push_back(ov[i]);
      do {
        i = (i + 1) % ov.size();
        seg.push_back(ov[i]);
      } while (i != b);
      regions.push_back(std::move(seg));
    }
  }
  // BFS over vertices; one step = passing through a region.
  std::vector<std::vector<std::size_t>> vreg(g.num_vertices());
  for (std::size_t r = 0; r < regions.size(); ++r) {
    for (Vertex v : regions[r]) vreg[static_cast<std::size_t>(g.index_of(v))].push_back(r);
  }
  std::vector<int> dist(g.num_vertices(), -1);
  std::vector<char> used(regions.size(), 0);
  std::queue<std::size_t> q;
  dist[static_cast<std::size_t>(g.index_of(u))] = 0;
  q.push(static_cast<std::size_t>(g.index_of(u)));
  while (!q.empty()) {
    std::size_t x = q.front();
    q.pop();
    for (std::size_t r : vreg[x]) {
      if (used[r]) continue;
      used[r] = 1;
      for (Vertex y : regions[r]) {
        auto yi = static_cast<std::size_t>(g.index_of(y));
        if (dist[yi] < 0) {
          dist[yi] = dist[x] + 1;
          q.push(yi);
        }
      }
    }
  }
  int dw = dist[static_cast<std::size_t>(g.index_of(w))];
  if (dw < 0) throw DomainError("no normal curve between the vertices");
  return dw + 1;
}

}  // namespace strukt
