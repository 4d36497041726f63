#pragma once

// Seeded random instances shared by the unit tests and the acceptance run.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "strukt/cliquesum.hpp"
#include "strukt/graph.hpp"
#include "strukt/metric.hpp"

namespace fixture {

using strukt::CliqueSumTree;
using strukt::Graph;
using strukt::Vertex;

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) g.add_edge(i, j);
  return g;
}

// Cliques of g with exactly k vertices (k <= 3).
inline std::vector<std::vector<Vertex>> cliques_of_size(const Graph& g, int k) {
  std::vector<std::vector<Vertex>> out;
  const auto& vs = g.vertices();
  if (k == 0) return {{}};
  for (Vertex a : vs) {
    if (k == 1) {
      out.push_back({a});
      continue;
    }
    for (Vertex b : g.neighbors(a)) {
      if (b <= a) continue;
      if (k == 2) {
        out.push_back({a, b});
        continue;
      }
      for (Vertex c : g.neighbors(b))
        if (c > b && g.has_edge(a, c)) out.push_back({a, b, c});
    }
  }
  return out;
}

/// Random piece on n vertices with at most a vertices of degree above D:
/// edges are dropped from the highest-degree vertices until the profile holds.
inline Graph profiled_piece(int n, int D, int a, std::mt19937_64& rng) {
  Graph g = random_graph(n, std::uniform_real_distribution<double>(0.3, 0.9)(rng), rng);
  for (;;) {
    auto high = strukt::high_degree_vertices(g, D);
    if (static_cast<int>(high.size()) <= a) return g;
    std::sort(high.begin(), high.end(), [&](Vertex x, Vertex y) { return g.degree(x) < g.degree(y); });
    Vertex v = high.front();
    const auto& nb = g.neighbors(v);
    g.remove_edge(v, nb[std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng)]);
  }
}

struct ProfiledTree {
  CliqueSumTree tree;
  int D = 0;
  int a = 0;
};

/// At most `max_pieces` pieces of at most `max_size` vertices, each with at
/// most a vertices of degree above D. Seams are random cliques of size 0..3
/// present in both pieces; each seam edge is deleted with probability 1/3.
inline ProfiledTree random_profiled_tree(std::mt19937_64& rng, int max_pieces = 5, int max_size = 8) {
  ProfiledTree out;
  out.D = std::uniform_int_distribution<int>(2, 4)(rng);
  out.a = std::uniform_int_distribution<int>(0, 2)(rng);
  int pieces = std::uniform_int_distribution<int>(1, max_pieces)(rng);
  for (int p = 0; p < pieces; ++p) {
    int n = std::uniform_int_distribution<int>(2, max_size)(rng);
    out.tree.pieces.push_back(profiled_piece(n, out.D, out.a, rng));
  }
  for (int c = 1; c < pieces; ++c) {
    int parent = std::uniform_int_distribution<int>(0, c - 1)(rng);
    const Graph& gp = out.tree.pieces[parent];
    const Graph& gc = out.tree.pieces[c];
    strukt::SumEdge e;
    e.parent = parent;
    e.child = c;
    for (int k = std::uniform_int_distribution<int>(0, 3)(rng); k >= 0; --k) {
      auto cp = cliques_of_size(gp, k);
      auto cc = cliques_of_size(gc, k);
      if (cp.empty() || cc.empty()) continue;
      auto img = cp[std::uniform_int_distribution<std::size_t>(0, cp.size() - 1)(rng)];
      auto dom = cc[std::uniform_int_distribution<std::size_t>(0, cc.size() - 1)(rng)];
      std::shuffle(img.begin(), img.end(), rng);
      for (int i = 0; i < k; ++i) e.overlap[dom[i]] = img[i];
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) e.deleted.emplace_back(img[i], img[j]);
      break;
    }
    out.tree.edges.push_back(e);
  }
  return out;
}

struct SparsifyCase {
  strukt::FiniteMetric metric;
  std::vector<strukt::Point> Z, U, anchored;
  double t = 1;
  int n = 1;
  std::function<double(double)> f;
};

/// Points in the unit-ish plane square under the euclidean metric. Z is a
/// random nonempty subset, U everything within < t of Z, anchored a greedy
/// T-separated subset of Z.
inline SparsifyCase random_sparsify_case(std::mt19937_64& rng) {
  using strukt::Point;
  const int k = std::uniform_int_distribution<int>(1, 14)(rng);
  const double side = std::uniform_real_distribution<double>(1.0, 20.0)(rng);
  std::uniform_real_distribution<double> coord(0.0, side);
  std::vector<std::pair<double, double>> xy(k);
  for (auto& p : xy) p = {coord(rng), coord(rng)};
  std::vector<Point> ids(k);
  std::vector<double> dist;
  for (int i = 0; i < k; ++i) {
    ids[i] = 3 * i + 1;
    for (int j = 0; j < k; ++j) dist.push_back(std::hypot(xy[i].first - xy[j].first, xy[i].second - xy[j].second));
  }
  strukt::FiniteMetric m(ids, dist);

  std::vector<Point> z;
  for (Point p : ids)
    if (std::bernoulli_distribution(0.5)(rng)) z.push_back(p);
  if (z.empty()) z.push_back(ids[std::uniform_int_distribution<int>(0, k - 1)(rng)]);
  const int n = static_cast<int>(z.size()) + std::uniform_int_distribution<int>(0, 2)(rng);
  const double t = std::uniform_real_distribution<double>(0.1, side / 2)(rng);

  std::function<double(double)> f;
  const double c = std::uniform_real_distribution<double>(0.05, 3.0)(rng);
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: f = [c](double) { return c; }; break;
    case 1: f = [c](double r) { return c * r; }; break;
    default: f = [c](double r) { return std::sqrt(r) + c; }; break;
  }

  std::vector<Point> u;
  for (Point p : ids) {
    for (Point q : z)
      if (m(p, q) < t) {
        u.push_back(p);
        break;
      }
  }

  const double big = strukt::sparsify_radii(t, n, f).back();
  std::vector<Point> order = z;
  std::shuffle(order.begin(), order.end(), rng);
  const int want = std::uniform_int_distribution<int>(0, 3)(rng);
  std::vector<Point> anchored;
  for (Point p : order) {
    if (static_cast<int>(anchored.size()) >= want) break;
    if (std::all_of(anchored.begin(), anchored.end(), [&](Point q) { return m(p, q) >= big; })) anchored.push_back(p);
  }
  std::sort(anchored.begin(), anchored.end());
  return {std::move(m), std::move(z), std::move(u), std::move(anchored), t, n, std::move(f)};
}

/// Empty when every postcondition holds, else the first broken one.
inline std::string sparsify_postcondition(const SparsifyCase& c, const strukt::SparsifyResult& r) {
  using strukt::Point;
  for (Point p : r.kept)
    if (std::find(c.Z.begin(), c.Z.end(), p) == c.Z.end()) return "kept outside Z";
  for (Point p : c.anchored)
    if (std::find(r.kept.begin(), r.kept.end(), p) == r.kept.end()) return "anchored point dropped";
  const auto radii = strukt::sparsify_radii(c.t, c.n, c.f);
  if (std::find(radii.begin(), radii.end(), r.radius) == radii.end()) return "radius off the recurrence";
  if (r.radius > radii.back()) return "radius above T";
  for (Point u : c.U) {
    bool near = false;
    for (Point z : r.kept) near = near || c.metric(u, z) < r.radius;
    if (!near) return "coverage";
  }
  for (std::size_t i = 0; i < r.kept.size(); ++i)
    for (std::size_t j = i + 1; j < r.kept.size(); ++j)
      if (c.metric(r.kept[i], r.kept[j]) < c.f(r.radius)) return "separation";
  return {};
}

}  // namespace fixture
