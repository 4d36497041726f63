#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "strukt/embedding.hpp"
#include "strukt/error.hpp"
#include "strukt/generators.hpp"
#include "strukt/patterns.hpp"

using namespace strukt;

namespace {

Graph subdivide_all(const Graph& g) {
  Graph out = g;
  for (const Edge& e : g.edges()) out = subdivide_edge(out, e);
  return out;
}

// Two hubs of degree 6 on the outer face of a fan strip: hub 9 sees 0..4, hub 10 sees 4..8.
Embedding two_hub_strip() {
  Graph g(11);
  std::vector<std::pair<double, double>> xy;
  for (int i = 0; i < 9; ++i) xy.emplace_back(i, 0.0);
  for (int i = 0; i + 1 < 9; ++i) g.add_edge(i, i + 1);
  for (int i = 0; i <= 4; ++i) g.add_edge(9, i);
  for (int i = 4; i <= 8; ++i) g.add_edge(10, i);
  g.add_edge(9, 10);
  xy.emplace_back(2.0, 3.0);
  xy.emplace_back(6.0, 3.0);
  return embed_by_coordinates(g, xy);
}

bool subcubic(const Graph& g) { return g.empty() || g.max_degree() <= 3; }

}  // namespace

TEST_CASE("topological minor examples") {
  Graph k4 = clique(4);
  auto m = find_topological_minor(k4, k4);
  REQUIRE(m);
  CHECK(verify_model(k4, k4, *m).ok);

  Graph sk4 = subdivide_all(k4);
  auto ms = find_topological_minor(k4, sk4);
  REQUIRE(ms);
  CHECK(verify_model(k4, sk4, *ms).ok);
  for (const auto& [e, p] : ms->paths) CHECK(p.size() == 3);

  CHECK_FALSE(find_topological_minor(clique(5), complete_bipartite(3, 3)));
  CHECK_FALSE(oracle::brute_embeds(clique(5), complete_bipartite(3, 3), 0));
  CHECK(find_topological_minor(complete_bipartite(3, 3), subdivide_all(complete_bipartite(3, 3))));
}

TEST_CASE("double wheel is excluded when the hubs share a face") {
  Embedding e = two_hub_strip();
  const Graph& host = e.graph();
  auto faces = trace_faces(e);
  bool shared = false;
  for (const auto& f : faces) {
    bool a = std::find(f.vertices.begin(), f.vertices.end(), 9) != f.vertices.end();
    bool b = std::find(f.vertices.begin(), f.vertices.end(), 10) != f.vertices.end();
    shared = shared || (a && b);
  }
  CHECK(shared);
  CHECK(high_degree_vertices(host, 4) == std::vector<Vertex>{9, 10});
  CHECK(euler_genus(e).euler_genus == 0);
  SearchBudget wide;
  wide.max_pattern_edges = 15;
  CHECK_FALSE(find_topological_minor(double_wheel(5), host, wide));
  auto w4 = find_topological_minor(double_wheel(4), host, wide);
  if (w4) CHECK(verify_model(double_wheel(4), host, *w4).ok);
}

TEST_CASE("immersion examples") {
  Graph k3 = clique(3);
  auto m = find_immersion(k3, k3, true);
  REQUIRE(m);
  CHECK(verify_model(k3, k3, *m).ok);
  CHECK_FALSE(find_immersion(clique(4), cycle(4), false));
  CHECK_FALSE(oracle::brute_embeds(clique(4), cycle(4), 1));
  CHECK_FALSE(find_immersion(clique(5), complete_bipartite(3, 3), false));
}

TEST_CASE("m_graph strongly immerses small graphs") {
  for (int t = 2; t <= 3; ++t) {
    Graph m = m_graph(t);
    int count = 0;
    for (int n = 0; n <= t; ++n) {
      for (const Graph& h : oracle::all_graphs(n)) {
        ++count;
        auto model = find_immersion(h, m, true);
        REQUIRE(model);
        CHECK(verify_model(h, m, *model).ok);
      }
    }
    CHECK(count == (t == 2 ? 4 : 8));
  }
}

TEST_CASE("verify_model reasons") {
  Graph k3 = clique(3);
  Graph host = subdivide_all(k3);  // 0,1,2 plus 3,4,5
  auto m = find_topological_minor(k3, host);
  REQUIRE(m);
  REQUIRE(verify_model(k3, host, *m).ok);

  // Two paths through one internal vertex.
  Graph bowtie(5);
  for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 4}, {1, 4}, {2, 4}, {0, 1}})
    bowtie.add_edge(a, b);
  TopMinorModel shared{{{0, 0}, {1, 1}, {2, 2}}, {{Edge(0, 1), {0, 1}}, {Edge(0, 2), {0, 4, 2}}, {Edge(1, 2), {1, 4, 2}}}};
  auto r = verify_model(k3, bowtie, shared);
  CHECK_FALSE(r.ok);
  CHECK(std::find(r.reasons.begin(), r.reasons.end(), "internal disjointness") != r.reasons.end());

  // Strong immersion through a branch vertex.
  Graph p = path(3);
  Graph k2 = clique(2);
  ImmersionModel through{{{0, 0}, {1, 2}}, {{Edge(0, 1), {0, 1, 2}}}, true};
  CHECK(verify_model(k2, p, through).ok);
  Graph k3h = clique(3);
  Graph p3 = path(3);  // branch 0,1,2 with edge {0,2} routed through 1
  ImmersionModel via{{{0, 0}, {1, 1}, {2, 2}}, {{Edge(0, 1), {0, 1}}, {Edge(1, 2), {1, 2}}, {Edge(0, 2), {0, 1, 2}}}, true};
  auto rv = verify_model(k3h, p3, via);
  CHECK_FALSE(rv.ok);
  CHECK(std::find(rv.reasons.begin(), rv.reasons.end(), "strongness") != rv.reasons.end());
  CHECK(std::find(rv.reasons.begin(), rv.reasons.end(), "edge disjointness") != rv.reasons.end());

  TopMinorModel missing = *m;
  missing.paths.erase(missing.paths.begin());
  CHECK(verify_model(k3, host, missing).reasons == std::vector<std::string>{"missing path"});
  TopMinorModel clash = *m;
  clash.branch[1] = clash.branch[0];
  CHECK_FALSE(verify_model(k3, host, clash).ok);
  TopMinorModel offgraph = *m;
  offgraph.paths.begin()->second = {offgraph.branch[0], offgraph.branch[1]};
  auto ro = verify_model(k3, host, offgraph);
  CHECK(std::find(ro.reasons.begin(), ro.reasons.end(), "path edges") != ro.reasons.end());
}

TEST_CASE("finders agree with enumeration on small pairs") {
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 250; ++rep) {
    int nh = std::uniform_int_distribution<int>(1, 4)(rng);
    int ng = std::uniform_int_distribution<int>(nh, 6)(rng);
    Graph h = fixture::random_graph(nh, 0.6, rng);
    Graph g = fixture::random_graph(ng, 0.5, rng);
    auto tm = find_topological_minor(h, g);
    auto wi = find_immersion(h, g, false);
    auto si = find_immersion(h, g, true);
    CHECK(tm.has_value() == oracle::brute_embeds(h, g, 0));
    CHECK(wi.has_value() == oracle::brute_embeds(h, g, 1));
    CHECK(si.has_value() == oracle::brute_embeds(h, g, 2));
    if (tm) CHECK(verify_model(h, g, *tm).ok);
    if (wi) CHECK(verify_model(h, g, *wi).ok);
    if (si) CHECK(verify_model(h, g, *si).ok);
    // topological minor => strong immersion => immersion
    if (tm) CHECK(si);
    if (si) CHECK(wi);
  }
}

TEST_CASE("subcubic topological minors are minors") {
  std::vector<Graph> patterns;
  for (int n = 1; n <= 4; ++n)
    for (const Graph& h : oracle::all_graphs(n))
      if (subcubic(h)) patterns.push_back(h);
  for (int n = 1; n <= 5; ++n) {
    for (const Graph& g : oracle::all_graphs(n)) {
      for (const Graph& h : patterns) {
        REQUIRE(find_topological_minor(h, g).has_value() == oracle::brute_minor(h, g));
      }
    }
  }
  std::mt19937_64 rng(67);
  for (int rep = 0; rep < 40; ++rep) {
    Graph g = fixture::random_graph(std::uniform_int_distribution<int>(6, 8)(rng), 0.35, rng);
    const Graph& h = patterns[std::uniform_int_distribution<std::size_t>(0, patterns.size() - 1)(rng)];
    CHECK(find_topological_minor(h, g).has_value() == oracle::brute_minor(h, g));
  }
}

TEST_CASE("topological minor is transitive on samples") {
  std::mt19937_64 rng(71);
  SearchBudget wide;
  wide.max_pattern_edges = 15;
  int chains = 0;
  for (int rep = 0; rep < 200 && chains < 25; ++rep) {
    Graph f = fixture::random_graph(8, 0.5, rng);
    Graph g = fixture::random_graph(6, 0.6, rng);
    Graph h = fixture::random_graph(4, 0.7, rng);
    if (!find_topological_minor(h, g) || !find_topological_minor(g, f, wide)) continue;
    ++chains;
    CHECK(find_topological_minor(h, f));
  }
  CHECK(chains > 0);
}

TEST_CASE("serial and parallel searches agree") {
  std::mt19937_64 rng(73);
  SearchBudget par;
  par.threads = 4;
  for (int rep = 0; rep < 40; ++rep) {
    Graph h = fixture::random_graph(4, 0.7, rng);
    Graph g = fixture::random_graph(9, 0.45, rng);
    CHECK(find_topological_minor(h, g) == find_topological_minor(h, g, par));
    CHECK(find_immersion(h, g, true) == find_immersion(h, g, true, par));
    CHECK(find_immersion(h, g, false) == find_immersion(h, g, false, par));
  }
}

TEST_CASE("pattern budgets") {
  CHECK_THROWS_AS(find_topological_minor(clique(3), grid(6, 6)), ResourceError);
  CHECK_THROWS_AS(find_topological_minor(clique(6), clique(6)), ResourceError);  // 15 edges
  SearchBudget tiny;
  tiny.max_nodes = 10;
  CHECK_THROWS_AS(find_topological_minor(clique(5), complete_bipartite(3, 4), tiny), ResourceError);
  SearchBudget wide;
  wide.max_host_vertices = 40;
  CHECK(find_topological_minor(clique(3), grid(6, 6), wide).has_value());
}

TEST_CASE("witness json round trip") {
  Graph k4 = clique(4);
  Graph sk4 = subdivide_all(k4);
  auto m = find_topological_minor(k4, sk4);
  REQUIRE(m);
  CHECK(parse_top_minor_model(format_model(*m)) == *m);
  auto im = find_immersion(clique(3), m_graph(3), true);
  REQUIRE(im);
  CHECK(parse_immersion_model(format_model(*im)) == *im);
  CHECK_THROWS_AS(parse_immersion_model(format_model(*m)), ParseError);
}
