#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "rotation_search.hpp"
#include "strukt/embedding.hpp"
#include "strukt/error.hpp"

namespace strukt {

namespace {

using detail::DenseMap;
using detail::RotationEnumerator;

bool boost_planar(const Graph& g) {
  using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BGraph bg(g.num_vertices());
  for (const Edge& e : g.edges()) boost::add_edge(static_cast<std::size_t>(g.index_of(e.u)), static_cast<std::size_t>(g.index_of(e.v)), bg);
  return boost::boyer_myrvold_planarity_test(bg);
}

void require_connected(const Graph& g) {
  if (g.empty()) throw DomainError("empty graph");
  if (!is_connected(g)) throw DomainError("graph is disconnected");
}

/// One enumeration class: a fixed signature searched up to an Euler genus limit.
struct SearchClass {
  std::unique_ptr<RotationEnumerator> enumerator;
  int limit = 0;
};

struct Outcome {
  std::uint64_t nodes = 0;
  bool exhausted = false;
  std::optional<int> value;
  std::optional<DenseMap> map;
};

using ItemFn = std::function<Outcome(const SearchClass&, std::size_t rot, std::uint64_t cap)>;

struct Found {
  int value;
  DenseMap map;
};

/// Runs every (class, rotation) item and keeps the smallest value, earliest on ties.
/// Items are independent, so any thread count gives the same answer.
std::optional<Found> run_search(const std::vector<SearchClass>& classes, const SearchBudget& budget, int lower_bound,
                                const ItemFn& fn, std::uint64_t* nodes_used = nullptr) {
  std::vector<std::pair<std::size_t, std::size_t>> items;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (std::size_t r = 0; r < classes[c].enumerator->item_count(); ++r) items.emplace_back(c, r);
  }
  std::vector<std::optional<Outcome>> results(items.size());
  auto too_much = [] { return ResourceError("search budget exceeded"); };

  if (budget.threads <= 1) {
    std::uint64_t used = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
      Outcome o = fn(classes[items[i].first], items[i].second, budget.max_nodes - used);
      used += o.nodes;
      if (o.exhausted || used > budget.max_nodes) throw too_much();
      const bool done = o.value && *o.value <= lower_bound;
      results[i] = std::move(o);
      if (done) break;
    }
  } else {
    std::atomic<std::size_t> stop{items.size()};
    detail::run_parallel(items.size(), budget.threads, [&](std::size_t i) {
      if (i > stop.load()) return;
      Outcome o = fn(classes[items[i].first], items[i].second, budget.max_nodes);
      if (o.value && *o.value <= lower_bound) {
        std::size_t cur = stop.load();
        while (i < cur && !stop.compare_exchange_weak(cur, i)) {
        }
      }
      results[i] = std::move(o);
    });
  }

  std::optional<Found> best;
  std::uint64_t used = 0;
  for (auto& r : results) {
    if (!r) break;
    used += r->nodes;
    if (r->exhausted || used > budget.max_nodes) throw too_much();
    if (r->value && (!best || *r->value < best->value)) best = Found{*r->value, std::move(*r->map)};
    if (best && best->value <= lower_bound) break;
  }
  if (nodes_used) *nodes_used = used;
  return best;
}

std::vector<SearchClass> make_classes(const Graph& g, bool orientable, int limit) {
  std::vector<SearchClass> out;
  if (limit < 0) return out;
  out.push_back({std::make_unique<RotationEnumerator>(g, orientable), limit});
  return out;
}

int euler_lower_bound(const Graph& g, bool orientable) {
  const int n = static_cast<int>(g.num_vertices());
  const int m = static_cast<int>(g.num_edges());
  int lb = 0;
  if (m >= 2) lb = 2 - n + m - (2 * m) / detail::min_face_length(g);
  if (orientable) {
    lb = std::max(lb, 0);
    if (lb % 2) ++lb;
  } else {
    lb = std::max(lb, 1);
  }
  return lb;
}

/// First map (in item order) with Euler genus <= target.
std::optional<Found> first_within(const std::vector<SearchClass>& classes, int target, const SearchBudget& budget,
                                  std::uint64_t* used) {
  ItemFn fn = [target](const SearchClass& cls, std::size_t rot, std::uint64_t cap) {
    Outcome o;
    const int limit = std::min(target, cls.limit);
    auto res = cls.enumerator->run_item(
        rot, [limit] { return limit; },
        [&](const DenseMap& map, int eg) {
          o.value = eg;
          o.map = map;
          return true;
        },
        cap);
    o.nodes = res.nodes;
    o.exhausted = res.exhausted;
    return o;
  };
  return run_search(classes, budget, target, fn, used);
}

/// Smallest Euler genus <= limit, deepening the target from the Euler bound.
/// With `first_hit` only the limit itself is tried.
std::optional<Found> closed_min(const Graph& g, bool orientable, int limit, bool first_hit, const SearchBudget& budget) {
  auto classes = make_classes(g, orientable, limit);
  if (classes.empty()) return std::nullopt;
  const int lb = euler_lower_bound(g, orientable);
  const int step = orientable ? 2 : 1;
  SearchBudget left = budget;
  for (int target = first_hit ? limit : lb; target <= limit; target += step) {
    std::uint64_t used = 0;
    auto found = first_within(classes, target, left, &used);
    if (found) return found;
    left.max_nodes -= used;
  }
  return std::nullopt;
}

void require_closed(const Surface& s) {
  if (s.boundary_components != 0) throw ContractError("surface must be boundaryless");
}

/// Sphere only. Vertex sets X_1..X_k lie on k faces of one plane embedding iff
/// h plus a new vertex joined to each X_i is planar, so mf is the least k for
/// which some partition of the (>=4)-vertices into k blocks passes.
std::optional<int> sphere_mf_by_apices(const Graph& h, const SearchBudget& budget) {
  if (!boost_planar(h)) return std::nullopt;
  std::vector<Vertex> high;
  for (Vertex v : h.vertices())
    if (h.degree(v) >= 4) high.push_back(v);
  const std::size_t n = high.size();
  if (n == 0) return 0;

  std::uint64_t nodes = 0;
  auto with_apices = [&](const std::vector<std::vector<Vertex>>& blocks) {
    if (++nodes > budget.max_nodes) throw ResourceError("search budget exhausted");
    Graph g = h;
    for (const auto& b : blocks) {
      const Vertex z = g.next_vertex_id();
      g.add_vertex(z);
      for (Vertex v : b) g.add_edge(z, v);
    }
    return boost_planar(g);
  };
  std::vector<std::vector<char>> cofacial(n, std::vector<char>(n, 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      cofacial[i][j] = cofacial[j][i] = with_apices({{high[i], high[j]}});

  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<std::size_t>> blocks;
    bool found = false;
    std::function<void(std::size_t)> place = [&](std::size_t i) {
      if (found) return;
      if (n - i < k - blocks.size()) return;
      if (i == n) {
        std::vector<std::vector<Vertex>> vs;
        for (const auto& b : blocks) {
          vs.emplace_back();
          for (std::size_t x : b) vs.back().push_back(high[x]);
        }
        found = with_apices(vs);
        return;
      }
      for (auto& b : blocks) {
        if (std::all_of(b.begin(), b.end(), [&](std::size_t x) { return cofacial[x][i]; })) {
          b.push_back(i);
          place(i + 1);
          b.pop_back();
          if (found) return;
        }
      }
      if (blocks.size() < k) {
        blocks.push_back({i});
        place(i + 1);
        blocks.pop_back();
      }
    };
    place(0);
    if (found) return static_cast<int>(k);
  }
  throw std::logic_error("singleton blocks always fit");
}

}  // namespace

std::optional<int> min_genus(const Graph& g, bool orientable, const SearchBudget& budget) {
  require_connected(g);
  const bool has_cycle = g.num_edges() >= g.num_vertices();
  if (!orientable && !has_cycle) return std::nullopt;
  if (budget.fast_paths && boost_planar(g)) return orientable ? 0 : 1;
  const int m = static_cast<int>(g.num_edges());
  const int n = static_cast<int>(g.num_vertices());
  auto found = closed_min(g, orientable, 2 - n + m - 1, false, budget);
  if (!found) return std::nullopt;
  return found->value;
}

bool embeds_in(const Graph& g, const Surface& s, const SearchBudget& budget) {
  require_connected(g);
  require_closed(s);
  if (budget.fast_paths && boost_planar(g)) return true;
  if (s.orientable) return closed_min(g, true, s.euler_genus, true, budget).has_value();
  if (closed_min(g, false, s.euler_genus, true, budget)) return true;
  return s.euler_genus >= 1 && closed_min(g, true, s.euler_genus - 1, true, budget).has_value();
}

std::optional<MfWitness> mf_witness(const Graph& h, const Surface& s, const SearchBudget& budget) {
  require_connected(h);
  require_closed(s);
  std::vector<int> high;
  for (std::size_t i = 0; i < h.num_vertices(); ++i) {
    if (h.degree(h.vertices()[i]) >= 4) high.push_back(static_cast<int>(i));
  }
  if (high.size() > 64) throw ResourceError("more than 64 vertices of degree >= 4");
  if (h.num_edges() == 0) return MfWitness{0, Embedding(h, {{}}), {}};

  std::vector<SearchClass> classes;
  if (s.orientable) {
    classes = make_classes(h, true, s.euler_genus);
  } else {
    classes = make_classes(h, true, s.euler_genus - 1);
    auto more = make_classes(h, false, s.euler_genus);
    for (auto& c : more) classes.push_back(std::move(c));
  }
  const int lb = high.empty() ? 0 : 1;
  const int nbits = static_cast<int>(high.size());

  ItemFn fn = [&](const SearchClass& cls, std::size_t rot, std::uint64_t cap) {
    Outcome o;
    int best = nbits + 1;
    std::vector<std::uint64_t> masks;
    auto res = cls.enumerator->run_item(
        rot, [&] { return cls.limit; },
        [&](const DenseMap& map, int) {
          masks.clear();
          for (const auto& cyc : map.faces()) {
            std::uint64_t mk = 0;
            for (int st : cyc) {
              const int v = map.tail[static_cast<std::size_t>(st >> 1)];
              auto it = std::lower_bound(high.begin(), high.end(), v);
              if (it != high.end() && *it == v) mk |= std::uint64_t{1} << (it - high.begin());
            }
            masks.push_back(mk);
          }
          auto cover = detail::min_face_cover(masks, high.size(), best - 1);
          if (cover) {
            best = static_cast<int>(cover->size());
            o.map = map;
          }
          return best <= lb;
        },
        cap);
    o.nodes = res.nodes;
    o.exhausted = res.exhausted;
    if (o.map) o.value = best;
    return o;
  };
  auto found = run_search(classes, budget, lb, fn);
  if (!found) return std::nullopt;
  MfWitness w{found->value, detail::to_embedding(h, found->map), {}};
  w.faces = min_dominating_faces(w.embedding);
  return w;
}

std::optional<int> mf(const Graph& h, const Surface& s, const SearchBudget& budget) {
  if (budget.fast_paths && s.orientable && s.euler_genus == 0 && s.boundary_components == 0) {
    require_connected(h);
    return sphere_mf_by_apices(h, budget);
  }
  auto w = mf_witness(h, s, budget);
  if (!w) return std::nullopt;
  return w->value;
}

}  // namespace strukt
