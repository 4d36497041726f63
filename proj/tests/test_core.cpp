#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "strukt/error.hpp"
#include "strukt/generators.hpp"
#include "strukt/graph.hpp"
#include "strukt/io.hpp"
#include "strukt/metric.hpp"

using namespace strukt;

TEST_CASE("parse_graph transcribes vertices and edges") {
  Graph g = parse_graph("# path\np 3\ne 0 1\ne 1 2\n");
  CHECK(g.num_vertices() == 3);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
}

TEST_CASE("parse_graph collapses duplicate edges") {
  Graph g = parse_graph("p 2\ne 0 1\ne 1 0\ne 0 1\n");
  CHECK(g.num_edges() == 1);
}

TEST_CASE("parse_graph rejects loops and malformed lines") {
  CHECK_THROWS_AS(parse_graph("p 2\ne 1 1\n"), ValidationError);
  CHECK_THROWS_AS(parse_graph("p 2\ne 0 5\n"), ValidationError);
  CHECK_THROWS_AS(parse_graph("e 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph(""), ParseError);
  try {
    parse_graph("p 3\ne 0 1\ne 1 x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("serialize then parse is the identity, byte for byte") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Graph g = random_graph(1 + static_cast<int>(seed % 12), 0.35, seed);
    std::string text = serialize_graph(g);
    Graph back = parse_graph(text);
    CHECK(back == g);
    CHECK(serialize_graph(back) == text);
  }
}

TEST_CASE("serialize_graph refuses sparse ids") {
  Graph g;
  g.add_edge(2, 7);
  CHECK_THROWS_AS(serialize_graph(g), ValidationError);
  CHECK(serialize_graph(compact(g)) == "p 2\ne 0 1\n");
}

TEST_CASE("subdivide_edge") {
  Graph k3 = clique(3);
  Graph s = subdivide_edge(k3, {0, 1});
  CHECK(s.num_vertices() == 4);
  CHECK(s.num_edges() == 4);
  CHECK(s.degree(3) == 2);
  CHECK_FALSE(s.has_edge(0, 1));

  Graph all = k3;
  for (const Edge& e : k3.edges()) all = subdivide_edge(all, e);
  CHECK(all.num_vertices() == 6);
  CHECK(all.num_edges() == 6);
  CHECK(all.max_degree() == 2);
  CHECK(is_connected(all));

  Graph p = subdivide_edge(path(2), {0, 1});
  CHECK(p.num_edges() == 2);
  CHECK(p.degree(2) == 2);

  CHECK_THROWS_AS(subdivide_edge(k3, {0, 5}), MissingEdgeError);
}

TEST_CASE("high_degree_vertices") {
  CHECK(high_degree_vertices(clique(5), 3).size() == 5);
  CHECK(high_degree_vertices(clique(5), 4).empty());
  CHECK(high_degree_vertices(double_wheel(5), 4) == std::vector<Vertex>{5, 6});
}

TEST_CASE("path decomposition validity") {
  Graph p = path(4);
  CHECK(path_decomposition_violations({{{0, 1}, {1, 2}, {2, 3}}}, p).empty());
  CHECK(path_decomposition_violations({{{0, 1}, {2, 3}}}, p) == std::vector<std::string>{"pd-edge"});
  CHECK(path_decomposition_violations({{{0, 1}, {1, 2}, {0, 2, 3}}}, p) == std::vector<std::string>{"pd-contiguity"});
  CHECK(path_decomposition_violations({{{0, 1}, {1, 2}}}, p) == std::vector<std::string>{"pd-coverage"});
  CHECK(PathDecomposition{{{0, 1}, {1, 2, 3}}}.width() == 2);
}

namespace {

FiniteMetric line_metric(const std::vector<double>& xs) {
  std::vector<Point> ids;
  std::vector<double> d;
  for (std::size_t i = 0; i < xs.size(); ++i) ids.push_back(static_cast<Point>(i));
  for (double a : xs) {
    for (double b : xs) d.push_back(std::abs(a - b));
  }
  return FiniteMetric(ids, d);
}

}  // namespace

TEST_CASE("FiniteMetric validates its table") {
  CHECK_THROWS_AS(FiniteMetric({0, 1}, {0, 1, 2, 0}), ValidationError);
  CHECK_THROWS_AS(FiniteMetric({0, 1, 2}, {0, 1, 5, 1, 0, 1, 5, 1, 0}), ValidationError);
  CHECK_NOTHROW(line_metric({0, 1, 3}));
}

TEST_CASE("metric_sparsify worked examples") {
  auto f = [](double r) { return r + 1.0; };

  SUBCASE("single point stops at t_0") {
    FiniteMetric m = line_metric({0.0});
    std::vector<Point> z{0};
    auto r = metric_sparsify(m, z, z, {}, 2.0, 1, f);
    CHECK(r.kept == std::vector<Point>{0});
    CHECK(r.radius == 2.0);
  }

  SUBCASE("one merge step") {
    // t = 1, f(t) = 2: z1 at 0, z2 at 1.5 (closer than f(t)); u at 2.2 is
    // covered by z2 at radius t but only by z1 at radius t + f(t) = 3.
    FiniteMetric m = line_metric({0.0, 1.5, 2.2});
    std::vector<Point> z{0, 1};
    std::vector<Point> u{0, 1, 2};
    auto r = metric_sparsify(m, z, u, {}, 1.0, 2, f);
    CHECK(r.kept == std::vector<Point>{0});
    CHECK(r.radius == 3.0);
  }

  SUBCASE("already separated") {
    FiniteMetric m = line_metric({0.0, 10.0, 20.0});
    std::vector<Point> z{0, 1, 2};
    auto r = metric_sparsify(m, z, z, {}, 1.0, 3, f);
    CHECK(r.kept == z);
    CHECK(r.radius == 1.0);
  }

  SUBCASE("anchored points survive") {
    FiniteMetric m = line_metric({0.0, 1.5});
    std::vector<Point> z{0, 1};
    std::vector<Point> keep{1};
    auto r = metric_sparsify(m, z, z, keep, 1.0, 2, f);
    CHECK(r.kept == std::vector<Point>{1});
  }
}

TEST_CASE("metric_sparsify contract errors name the clause") {
  auto f = [](double) { return 1.0; };
  FiniteMetric m = line_metric({0.0, 5.0, 9.0});
  std::vector<Point> z{0};
  std::vector<Point> u{0, 1};
  CHECK_THROWS_WITH_AS(metric_sparsify(m, z, u, {}, 1.0, 1, f), "every u in U within distance < t of Z",
                       ContractError);
  std::vector<Point> z3{0, 1, 2};
  CHECK_THROWS_WITH_AS(metric_sparsify(m, z3, z3, {}, 1.0, 2, f), "|Z| <= n", ContractError);
  std::vector<Point> pinned{0, 1};
  auto f5 = [](double) { return 5.0; };
  CHECK_THROWS_WITH_AS(metric_sparsify(m, z3, z3, pinned, 1.0, 3, f5), "points of Z'' pairwise at distance >= T",
                       ContractError);
  std::vector<Point> outside{2};
  CHECK_THROWS_WITH_AS(metric_sparsify(m, z, z, outside, 1.0, 1, f), "Z'' subset of Z", ContractError);
}

TEST_CASE("sparsify_radii follows the recurrence") {
  auto ts = sparsify_radii(1.0, 4, [](double r) { return 2 * r; });
  CHECK(ts == std::vector<double>{1, 3, 9, 27});
}

TEST_CASE("metric_sparsify postconditions on random metrics") {
  std::mt19937_64 rng(97);
  for (int rep = 0; rep < 150; ++rep) {
    auto c = fixture::random_sparsify_case(rng);
    auto r = metric_sparsify(c.metric, c.Z, c.U, c.anchored, c.t, c.n, c.f);
    CAPTURE(rep);
    CHECK(fixture::sparsify_postcondition(c, r) == "");
  }
}
