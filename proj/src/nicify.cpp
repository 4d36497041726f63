#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "strukt/embedding.hpp"
#include "strukt/error.hpp"

namespace strukt {

namespace {

/// Rotation and signs keyed by vertex id, for local surgery.
struct Editable {
  std::map<Vertex, std::vector<Vertex>> rot;
  std::map<Edge, int> sign;

  explicit Editable(const Embedding& e) {
    const Graph& g = e.graph();
    for (std::size_t i = 0; i < g.num_vertices(); ++i) rot[g.vertices()[i]] = e.rotations()[i];
    const auto edges = g.edges();
    for (std::size_t j = 0; j < edges.size(); ++j) sign[edges[j]] = e.signature()[j];
  }

  Embedding build() const {
    Graph g;
    for (const auto& [v, r] : rot) g.add_vertex(v);
    for (const auto& [e, s] : sign) g.add_edge(e.u, e.v);
    std::vector<std::vector<Vertex>> rv;
    std::vector<int> sv;
    for (const auto& [v, r] : rot) rv.push_back(r);
    for (const auto& [e, s] : sign) sv.push_back(s);
    return Embedding(std::move(g), std::move(rv), std::move(sv));
  }

  void replace(Vertex at, Vertex old, const std::vector<Vertex>& with) {
    auto& r = rot.at(at);
    auto it = std::find(r.begin(), r.end(), old);
    it = r.erase(it);
    r.insert(it, with.begin(), with.end());
  }

  /// Merges t into its neighbor x along the edge {x,t}.
  void contract(Vertex x, Vertex t) {
    if (sign.at(Edge(x, t)) == -1) {
      auto& rt = rot.at(t);
      std::reverse(rt.begin(), rt.end());
      for (Vertex b : rt) sign[Edge(t, b)] = -sign[Edge(t, b)];
    }
    std::vector<Vertex> rt = rot.at(t);
    std::rotate(rt.begin(), std::find(rt.begin(), rt.end(), x), rt.end());
    std::vector<Vertex> others(rt.begin() + 1, rt.end());
    replace(x, t, others);
    for (Vertex b : others) {
      replace(b, t, {x});
      sign[Edge(x, b)] = sign.at(Edge(t, b));
      sign.erase(Edge(t, b));
    }
    sign.erase(Edge(x, t));
    rot.erase(t);
  }
};

Side mirror_side(const Embedding& e, const Side& s) { return {s.to, s.from, -s.orientation * e.sign(s.from, s.to)}; }

int locate(const Embedding& e, const std::vector<FaceWalk>& faces, const Side& rep) {
  const Side m = mirror_side(e, rep);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (const auto& s : faces[f].sides) {
      if (s == rep || s == m) return static_cast<int>(f);
    }
  }
  throw std::logic_error("lost track of a face");
}

Embedding relabel(const Embedding& e, const std::vector<Vertex>& old_ids) {
  std::map<Vertex, Vertex> to_new;
  for (std::size_t i = 0; i < old_ids.size(); ++i) to_new[old_ids[i]] = static_cast<Vertex>(i);
  Graph g;
  for (std::size_t i = 0; i < old_ids.size(); ++i) g.add_vertex(static_cast<Vertex>(i));
  std::vector<std::vector<Vertex>> rot;
  for (std::size_t i = 0; i < old_ids.size(); ++i) {
    std::vector<Vertex> r;
    for (Vertex w : e.rotations()[i]) r.push_back(to_new.at(w));
    rot.push_back(std::move(r));
  }
  std::map<Edge, int> signs;
  const auto edges = e.graph().edges();
  for (std::size_t j = 0; j < edges.size(); ++j) {
    Edge ne(to_new.at(edges[j].u), to_new.at(edges[j].v));
    g.add_edge(ne.u, ne.v);
    signs[ne] = e.signature()[j];
  }
  std::vector<int> sig;
  for (const Edge& ne : g.edges()) sig.push_back(signs.at(ne));
  return Embedding(std::move(g), std::move(rot), std::move(sig));
}

}  // namespace

NiceEmbedding nicify(const Graph& h, const Surface& s, const SearchBudget& budget) {
  if (h.num_edges() == 0) throw ContractError("h has at least one edge");
  auto w = mf_witness(h, s, budget);
  if (!w) throw DomainError("graph does not embed in " + s.name());
  Embedding e = w->embedding;
  const EulerGenus genus = euler_genus(e);
  const auto faces0 = trace_faces(e);

  std::vector<Side> reps;
  for (const auto& f : faces0) reps.push_back(f.sides.front());
  std::vector<char> in_s(faces0.size(), 0);
  for (int f : w->faces) in_s[static_cast<std::size_t>(f)] = 1;
  // Each vertex of degree >= 4 is owned by the first chosen face that touches it.
  std::map<Vertex, std::size_t> owner;
  for (int f : w->faces) {
    for (Vertex v : faces0[static_cast<std::size_t>(f)].vertices) {
      if (h.degree(v) >= 4 && !owner.count(v)) owner[v] = static_cast<std::size_t>(f);
    }
  }
  const std::set<Vertex> original(h.vertices().begin(), h.vertices().end());

  // Two interior vertices per edge, so the two sides of an edge get distinct attachment points.
  std::map<Edge, std::vector<Vertex>> routes;
  for (const Edge& ed : h.edges()) {
    Vertex s1 = 0;
    Vertex s2 = 0;
    e = subdivide_in_embedding(e, ed, &s1);
    e = subdivide_in_embedding(e, Edge(s1, ed.v), &s2);
    routes[ed] = {ed.u, s1, s2, ed.v};
    for (auto& r : reps) {
      if (r.from == ed.u && r.to == ed.v) r.to = s1;
      else if (r.from == ed.v && r.to == ed.u) r.to = s2;
    }
  }

  // Inside every face, a cycle joined to one point per side (plus leaves); chosen faces
  // run their cycle through the vertices they own.
  std::vector<std::vector<Vertex>> cores;
  for (std::size_t f = 0; f < faces0.size(); ++f) {
    const auto faces = trace_faces(e);
    const FaceWalk& walk = faces[static_cast<std::size_t>(locate(e, faces, reps[f]))];
    const std::size_t len = walk.sides.size();
    std::vector<std::size_t> corners;
    std::set<Vertex> routed;
    for (std::size_t i = 0; i < len; ++i) {
      const Vertex v = walk.sides[i].from;
      const Vertex before = walk.sides[(i + len - 1) % len].from;
      if (!original.count(v)) {
        if (original.count(before)) corners.push_back(i);
      } else if (e.graph().degree(v) == 1) {
        corners.push_back(i);
      } else if (in_s[f] && owner.count(v) && owner.at(v) == f && !routed.count(v)) {
        routed.insert(v);
        corners.push_back(i);
      }
    }
    const Vertex hub = e.graph().next_vertex_id();
    e = add_vertex_in_face(e, walk, corners);

    Editable ed(e);
    const std::vector<Vertex> ring = ed.rot.at(hub);
    const std::size_t t = ring.size();
    std::vector<Vertex> ids(t);
    for (std::size_t i = 0; i < t; ++i) ids[i] = hub + 1 + static_cast<Vertex>(i);
    for (std::size_t i = 0; i < t; ++i) {
      const Vertex ti = ids[i];
      ed.rot[ti] = {ring[i], ids[(i + 1) % t], ids[(i + t - 1) % t]};
      ed.sign[Edge(ti, ring[i])] = ed.sign.at(Edge(hub, ring[i]));
      ed.sign.erase(Edge(hub, ring[i]));
      ed.sign[Edge(ti, ids[(i + 1) % t])] = 1;
      ed.replace(ring[i], hub, {ti});
    }
    ed.rot.erase(hub);
    std::vector<Vertex> core;
    for (std::size_t i = 0; i < t; ++i) {
      if (routed.count(ring[i])) {
        ed.contract(ring[i], ids[i]);
        core.push_back(ring[i]);
      } else {
        core.push_back(ids[i]);
      }
    }
    e = ed.build();
    if (in_s[f]) cores.push_back(std::move(core));
  }

  // Subdividing every edge leaves only even cycles.
  std::map<Edge, Vertex> middle;
  for (const Edge& ed : e.graph().edges()) {
    Vertex mid = 0;
    e = subdivide_in_embedding(e, ed, &mid);
    middle[ed] = mid;
  }

  std::vector<Vertex> old_ids;
  Graph hp = compact(e.graph(), &old_ids);
  e = relabel(e, old_ids);
  std::map<Vertex, Vertex> to_new;
  for (std::size_t i = 0; i < old_ids.size(); ++i) to_new[old_ids[i]] = static_cast<Vertex>(i);

  const auto faces = trace_faces(e);
  NiceEmbedding out{hp, e, {}, {}};
  for (const auto& [ed, route] : routes) {
    std::vector<Vertex> p{to_new.at(route.front())};
    for (std::size_t i = 0; i + 1 < route.size(); ++i) {
      p.push_back(to_new.at(middle.at(Edge(route[i], route[i + 1]))));
      p.push_back(to_new.at(route[i + 1]));
    }
    out.paths[ed] = std::move(p);
  }
  for (const auto& core : cores) {
    int found = -1;
    for (std::size_t f = 0; f < faces.size() && found < 0; ++f) {
      if (std::all_of(core.begin(), core.end(), [&](Vertex v) { return faces[f].contains(to_new.at(v)); })) {
        found = static_cast<int>(f);
      }
    }
    if (found < 0) throw std::logic_error("core face not found");
    out.faces.push_back(found);
  }
  std::sort(out.faces.begin(), out.faces.end());

  if (euler_genus(e).euler_genus != genus.euler_genus) {
    throw std::logic_error("surgery changed the surface");
  }
  return out;
}

}  // namespace strukt
