#include "strukt/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "strukt/error.hpp"

namespace strukt {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

struct Drawn {
  Graph graph;
  std::vector<std::pair<double, double>> coords;
};

Drawn draw_wall(int rows, int cols) {
  require(rows >= 1 && cols >= 1, "wall dimensions must be positive");
  const int w = 2 * cols + 2;
  const int h = rows + 1;
  Graph g(h * w);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j + 1 < w; ++j) g.add_edge(i * w + j, i * w + j + 1);
  }
  for (int i = 0; i + 1 < h; ++i) {
    for (int j = 0; j < w; ++j) {
      if ((i + j) % 2 == 0) g.add_edge(i * w + j, (i + 1) * w + j);
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (Vertex v : std::vector<Vertex>(g.vertices())) {
      if (g.degree(v) <= 1) {
        g.remove_vertex(v);
        changed = true;
      }
    }
  }
  std::vector<Vertex> old;
  Graph c = compact(g, &old);
  Drawn d{c, {}};
  for (Vertex v : old) d.coords.emplace_back(v % w, -(v / w));
  return d;
}

}  // namespace

Graph double_wheel(int n) {
  require(n >= 3, "double_wheel needs n >= 3");
  Graph g(n + 2);
  for (int i = 0; i < n; ++i) {
    g.add_edge(i, (i + 1) % n);
    g.add_edge(i, n);
    g.add_edge(i, n + 1);
  }
  return g;
}

Graph m_graph(int t) {
  require(t >= 1, "m_graph needs t >= 1");
  Graph g(1 + t + t * t);
  for (int i = 1; i <= t; ++i) {
    for (int j = 1; j <= t; ++j) {
      const int z = t + (i - 1) * t + j;
      g.add_edge(0, z);
      g.add_edge(i, z);
    }
  }
  return g;
}

Graph wall(int rows, int cols) { return draw_wall(rows, cols).graph; }

Embedding embedded_wall(int rows, int cols) {
  Drawn d = draw_wall(rows, cols);
  return embed_by_coordinates(d.graph, d.coords);
}

AdmissibilityWall embedded_admissibility_wall(int t) {
  require(t >= 2, "admissibility_wall needs t >= 2");
  require(t <= 6, "admissibility_wall is limited to t <= 6");
  Embedding e = embedded_wall(t * t, t * t);
  auto faces = trace_faces(e);
  std::size_t outer = 0;
  for (std::size_t f = 1; f < faces.size(); ++f) {
    if (faces[f].length() > faces[outer].length()) outer = f;
  }
  std::vector<Edge> perimeter;
  for (const Side& s : faces[outer].sides) perimeter.emplace_back(s.from, s.to);
  std::sort(perimeter.begin(), perimeter.end());
  for (const Edge& p : perimeter) e = subdivide_in_embedding(e, p);

  const Vertex first_new = e.graph().num_vertices() > perimeter.size()
                               ? static_cast<Vertex>(e.graph().num_vertices() - perimeter.size())
                               : 0;
  auto is_sub = [&](Vertex v) { return v >= first_new; };
  faces = trace_faces(e);
  outer = 0;
  for (std::size_t f = 1; f < faces.size(); ++f) {
    if (faces[f].length() > faces[outer].length()) outer = f;
  }
  std::vector<Vertex> around;
  for (Vertex v : faces[outer].vertices) {
    if (is_sub(v)) around.push_back(v);
  }
  require(static_cast<int>(around.size()) >= t * t, "perimeter too short for the attachments");
  std::rotate(around.begin(), std::min_element(around.begin(), around.end()), around.end());

  AdmissibilityWall out;
  for (int i = 0; i < t; ++i) {
    std::vector<Vertex> block(around.begin() + i * t, around.begin() + (i + 1) * t);
    faces = trace_faces(e);
    int face = -1;
    for (std::size_t f = 0; f < faces.size() && face < 0; ++f) {
      if (std::all_of(block.begin(), block.end(), [&](Vertex v) { return faces[f].contains(v); })) {
        face = static_cast<int>(f);
      }
    }
    require(face >= 0, "attachment block not on one face");
    const FaceWalk& walk = faces[static_cast<std::size_t>(face)];
    std::vector<std::size_t> corners;
    for (std::size_t k = 0; k < walk.vertices.size(); ++k) {
      if (std::find(block.begin(), block.end(), walk.vertices[k]) != block.end()) corners.push_back(k);
    }
    out.hubs.push_back(e.graph().next_vertex_id());
    e = add_vertex_in_face(e, walk, corners);
  }
  out.embedding = e;
  return out;
}

Graph admissibility_wall(int t) { return embedded_admissibility_wall(t).embedding.graph(); }

Graph clique(int n) {
  require(n >= 1, "clique needs n >= 1");
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

Graph cycle(int n) {
  require(n >= 3, "cycle needs n >= 3");
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph path(int n) {
  require(n >= 1, "path needs n >= 1");
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph grid(int r, int c) {
  require(r >= 1 && c >= 1, "grid dimensions must be positive");
  Graph g(r * c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) {
      if (j + 1 < c) g.add_edge(i * c + j, i * c + j + 1);
      if (i + 1 < r) g.add_edge(i * c + j, (i + 1) * c + j);
    }
  }
  return g;
}

Embedding embedded_grid(int r, int c) {
  Graph g = grid(r, c);
  std::vector<std::pair<double, double>> xy;
  for (int v = 0; v < r * c; ++v) xy.emplace_back(v % c, -(v / c));
  return embed_by_coordinates(g, xy);
}

Graph complete_bipartite(int a, int b) {
  require(a >= 1 && b >= 1, "complete_bipartite sides must be positive");
  Graph g(a + b);
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
  }
  return g;
}

Graph star(int leaves) {
  require(leaves >= 1, "star needs a leaf");
  Graph g(leaves + 1);
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

Graph random_graph(int n, double p, std::uint64_t seed) {
  require(n >= 0, "random_graph needs n >= 0");
  require(p >= 0.0 && p <= 1.0, "random_graph needs 0 <= p <= 1");
  std::mt19937_64 rng(seed);
  const double scale = 18446744073709551616.0;  // 2^64
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (static_cast<double>(rng()) < p * scale) g.add_edge(i, j);
    }
  }
  return g;
}

Embedding embed_by_coordinates(const Graph& g, const std::vector<std::pair<double, double>>& coords) {
  if (coords.size() != g.num_vertices()) throw ValidationError("one coordinate pair per vertex");
  std::vector<std::vector<Vertex>> rot;
  for (std::size_t i = 0; i < g.num_vertices(); ++i) {
    std::vector<Vertex> nb = g.neighbors(g.vertices()[i]);
    auto angle = [&](Vertex w) {
      const auto& a = coords[i];
      const auto& b = coords[static_cast<std::size_t>(g.index_of(w))];
      return std::atan2(b.second - a.second, b.first - a.first);
    };
    std::sort(nb.begin(), nb.end(), [&](Vertex x, Vertex y) { return angle(x) < angle(y); });
    rot.push_back(std::move(nb));
  }
  return Embedding(g, std::move(rot));
}

}  // namespace strukt
