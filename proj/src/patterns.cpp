#include "strukt/patterns.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <set>

#include "json.hpp"
#include "rotation_search.hpp"
#include "strukt/error.hpp"

namespace strukt {

using json = nlohmann::json;

namespace {

enum class Mode { kTopMinor, kWeak, kStrong };

struct Abandoned {};

// Host in dense form; edge ids index `eid`.
struct Host {
  std::vector<std::vector<int>> adj;
  std::vector<std::vector<int>> eid;
  std::vector<Vertex> label;

  explicit Host(const Graph& g) : adj(g.num_vertices()), eid(g.num_vertices()), label(g.vertices()) {
    int next = 0;
    std::map<Edge, int> ids;
    for (const Edge& e : g.edges()) ids[e] = next++;
    for (std::size_t i = 0; i < adj.size(); ++i) {
      for (Vertex w : g.neighbors(label[i])) {
        adj[i].push_back(g.index_of(w));
        eid[i].push_back(ids.at(Edge(label[i], w)));
      }
    }
    edges = next;
  }
  int size() const { return static_cast<int>(adj.size()); }
  int degree(int x) const { return static_cast<int>(adj[x].size()); }
  int edges = 0;
};

struct Pattern {
  std::vector<Vertex> order;                    // pattern vertices, mapping order
  std::vector<std::vector<int>> back;           // back[i]: earlier positions j adjacent to order[i]
  std::vector<int> degree;                      // by position
};

Pattern plan(const Graph& h) {
  Pattern p;
  p.order = h.vertices();
  std::stable_sort(p.order.begin(), p.order.end(), [&](Vertex a, Vertex b) { return h.degree(a) > h.degree(b); });
  p.back.resize(p.order.size());
  for (std::size_t i = 0; i < p.order.size(); ++i) {
    p.degree.push_back(h.degree(p.order[i]));
    for (std::size_t j = 0; j < i; ++j)
      if (h.has_edge(p.order[i], p.order[j])) p.back[i].push_back(static_cast<int>(j));
  }
  return p;
}

struct Model {
  std::vector<int> phi;                          // by pattern position
  std::vector<std::pair<std::pair<int, int>, std::vector<int>>> paths;  // (positions i, j) -> host path
};

class Search {
 public:
  Search(const Host& g, const Pattern& h, Mode mode, std::uint64_t cap, const std::atomic<bool>* abandon)
      : g_(g), h_(h), mode_(mode), cap_(cap), abandon_(abandon), branch_(g.size(), 0), inner_(g.size(), 0),
        on_path_(g.size(), 0), edge_used_(g.edges, 0) {
    model_.phi.assign(h.order.size(), -1);
  }

  // Candidates for the first pattern vertex, in search order.
  std::vector<int> candidates(int pos) const {
    std::vector<int> c;
    for (int x = 0; x < g_.size(); ++x)
      if (!branch_[x] && g_.degree(x) >= h_.degree[pos] && (mode_ == Mode::kWeak || inner_[x] == 0)) c.push_back(x);
    std::stable_sort(c.begin(), c.end(), [&](int a, int b) { return g_.degree(a) > g_.degree(b); });
    return c;
  }

  bool run_from(int first) {
    if (h_.order.empty()) return true;
    return place(0, first);
  }

  std::uint64_t nodes() const { return nodes_; }
  bool exhausted() const { return exhausted_; }
  const Model& model() const { return model_; }

  void tick() {
    if (++nodes_ > cap_) {
      exhausted_ = true;
      throw Abandoned{};
    }
    if (abandon_ && (nodes_ & 1023) == 0 && abandon_->load(std::memory_order_relaxed)) throw Abandoned{};
  }

 private:
  bool step(std::size_t pos) {
    if (pos == h_.order.size()) return true;
    for (int c : candidates(static_cast<int>(pos))) {
      if (place(pos, c)) return true;
    }
    return false;
  }

  bool place(std::size_t pos, int c) {
    tick();
    if (!room(pos, c)) return false;
    model_.phi[pos] = c;
    branch_[c] = 1;
    if (route(pos, 0)) return true;
    branch_[c] = 0;
    model_.phi[pos] = -1;
    return false;
  }

  // Enough free capacity at c for the pattern edges still to arrive there.
  bool room(std::size_t pos, int c) const {
    int free = 0;
    for (std::size_t k = 0; k < g_.adj[c].size(); ++k) {
      int y = g_.adj[c][k];
      if (mode_ == Mode::kTopMinor) {
        free += (branch_[y] || inner_[y] == 0);
      } else {
        free += edge_used_[g_.eid[c][k]] == 0;
      }
    }
    return free >= h_.degree[pos];
  }

  bool route(std::size_t pos, std::size_t k) {
    if (k == h_.back[pos].size()) return step(pos + 1);
    int j = h_.back[pos][k];
    int from = model_.phi[j], to = model_.phi[pos];
    int dist = distance(from, to);
    if (dist < 0) return false;
    target_ = to;
    for (int len = dist; len < g_.size(); ++len) {
      path_.assign(1, from);
      on_path_[from] = 1;
      bool ok = walk(from, len, pos, k, j);
      on_path_[from] = 0;
      if (ok) return true;
    }
    return false;
  }

  bool inner_ok(int w) const {
    if (on_path_[w]) return false;
    switch (mode_) {
      case Mode::kTopMinor: return !branch_[w] && inner_[w] == 0;
      case Mode::kStrong: return !branch_[w];
      case Mode::kWeak: return true;
    }
    return false;
  }

  bool edge_ok(int x, std::size_t k) const { return mode_ == Mode::kTopMinor || edge_used_[g_.eid[x][k]] == 0; }

  // Shortest admissible path length, -1 if none.
  int distance(int from, int to) {
    std::vector<int> d(g_.size(), -1);
    std::deque<int> q{from};
    d[from] = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (std::size_t k = 0; k < g_.adj[x].size(); ++k) {
        int y = g_.adj[x][k];
        if (d[y] >= 0 || !edge_ok(x, k)) continue;
        if (y == to) return d[x] + 1;
        if (!inner_ok(y)) continue;
        d[y] = d[x] + 1;
        q.push_back(y);
      }
    }
    return -1;
  }

  // Extends path_ (ending at x) by exactly `left` more edges to target_.
  bool walk(int x, int left, std::size_t pos, std::size_t k, int j) {
    tick();
    for (std::size_t e = 0; e < g_.adj[x].size(); ++e) {
      int y = g_.adj[x][e];
      if (!edge_ok(x, e)) continue;
      if (left == 1) {
        if (y != target_) continue;
        if (commit(y, pos, k, j)) return true;
        continue;
      }
      if (y == target_ || !inner_ok(y)) continue;
      path_.push_back(y);
      on_path_[y] = 1;
      bool ok = walk(y, left - 1, pos, k, j);
      on_path_[y] = 0;
      path_.pop_back();
      if (ok) return true;
    }
    return false;
  }

  bool commit(int end, std::size_t pos, std::size_t k, int j) {
    std::vector<int> p = path_;
    p.push_back(end);
    for (std::size_t i = 1; i + 1 < p.size(); ++i) ++inner_[p[i]];
    std::vector<int> used;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      const auto& nb = g_.adj[p[i]];
      int id = g_.eid[p[i]][std::find(nb.begin(), nb.end(), p[i + 1]) - nb.begin()];
      edge_used_[id] = 1;
      used.push_back(id);
    }
    // Saved walk state: route() below reuses path_ and target_.
    auto saved_path = path_;
    auto saved_on = on_path_;
    int saved_target = target_;
    std::fill(on_path_.begin(), on_path_.end(), 0);
    model_.paths.push_back({{j, static_cast<int>(pos)}, p});
    bool ok = route(pos, k + 1);
    if (!ok) model_.paths.pop_back();
    path_ = std::move(saved_path);
    on_path_ = std::move(saved_on);
    target_ = saved_target;
    for (int id : used) edge_used_[id] = 0;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) --inner_[p[i]];
    return ok;
  }

  const Host& g_;
  const Pattern& h_;
  Mode mode_;
  std::uint64_t cap_;
  const std::atomic<bool>* abandon_;
  std::vector<char> branch_;
  std::vector<int> inner_;
  std::vector<char> on_path_;
  std::vector<char> edge_used_;
  std::vector<int> path_;
  int target_ = -1;
  Model model_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

struct Found {
  std::map<Vertex, Vertex> branch;
  PathMap paths;
};

std::optional<Found> search(const Graph& h, const Graph& g, Mode mode, const SearchBudget& budget) {
  if (static_cast<int>(g.num_vertices()) > budget.max_host_vertices)
    throw ResourceError("host has " + std::to_string(g.num_vertices()) + " vertices, limit " +
                        std::to_string(budget.max_host_vertices));
  if (static_cast<int>(h.num_edges()) > budget.max_pattern_edges)
    throw ResourceError("pattern has " + std::to_string(h.num_edges()) + " edges, limit " +
                        std::to_string(budget.max_pattern_edges));
  Host host(g);
  Pattern pat = plan(h);
  auto convert = [&](const Model& m) {
    Found f;
    for (std::size_t i = 0; i < pat.order.size(); ++i) f.branch[pat.order[i]] = host.label[m.phi[i]];
    for (const auto& [ij, p] : m.paths) {
      Vertex a = pat.order[ij.first], b = pat.order[ij.second];
      std::vector<Vertex> path;
      for (int x : p) path.push_back(host.label[x]);
      if (a > b) std::reverse(path.begin(), path.end());
      f.paths[Edge(a, b)] = path;
    }
    return f;
  };
  if (h.empty()) return Found{};
  if (h.num_vertices() > g.num_vertices()) return std::nullopt;

  std::vector<int> firsts = Search(host, pat, mode, 0, nullptr).candidates(0);
  struct Outcome {
    std::uint64_t nodes = 0;
    bool exhausted = false;
    std::optional<Model> model;
  };
  std::vector<Outcome> results(firsts.size());
  auto run_item = [&](std::size_t i, std::uint64_t cap, const std::atomic<bool>* abandon) {
    Search s(host, pat, mode, cap, abandon);
    Outcome o;
    try {
      if (s.run_from(firsts[i])) o.model = s.model();
    } catch (const Abandoned&) {
    }
    o.nodes = s.nodes();
    o.exhausted = s.exhausted();
    return o;
  };
  auto too_much = [] { return ResourceError("search budget exceeded"); };

  if (budget.threads <= 1) {
    std::uint64_t used = 0;
    for (std::size_t i = 0; i < firsts.size(); ++i) {
      Outcome o = run_item(i, budget.max_nodes - used, nullptr);
      used += o.nodes;
      if (o.exhausted || used > budget.max_nodes) throw too_much();
      if (o.model) return convert(*o.model);
    }
    return std::nullopt;
  }

  std::atomic<std::size_t> stop{firsts.size()};
  std::vector<std::atomic<bool>> abandon(firsts.size());
  detail::run_parallel(firsts.size(), budget.threads, [&](std::size_t i) {
    if (i > stop.load()) return;
    Outcome o = run_item(i, budget.max_nodes, &abandon[i]);
    if (o.model) {
      std::size_t cur = stop.load();
      while (i < cur && !stop.compare_exchange_weak(cur, i)) {
      }
      for (std::size_t k = i + 1; k < firsts.size(); ++k) abandon[k] = true;
    }
    results[i] = std::move(o);
  });
  std::uint64_t used = 0;
  for (std::size_t i = 0; i < firsts.size(); ++i) {
    const Outcome& o = results[i];
    used += o.nodes;
    if (o.exhausted || used > budget.max_nodes) throw too_much();
    if (o.model) return convert(*o.model);
  }
  return std::nullopt;
}

void add_reason(ModelCheck& c, const std::string& r) {
  c.ok = false;
  if (std::find(c.reasons.begin(), c.reasons.end(), r) == c.reasons.end()) c.reasons.push_back(r);
}

// Shared checks; returns the paths that passed the per-path tests.
std::vector<const std::vector<Vertex>*> check_common(const Graph& h, const Graph& g,
                                                     const std::map<Vertex, Vertex>& branch, const PathMap& paths,
                                                     ModelCheck& c) {
  std::set<Vertex> images;
  for (Vertex v : h.vertices()) {
    auto it = branch.find(v);
    if (it == branch.end() || !g.has_vertex(it->second) || !images.insert(it->second).second)
      add_reason(c, "branch injectivity");
  }
  if (branch.size() != h.num_vertices()) add_reason(c, "branch injectivity");
  std::vector<const std::vector<Vertex>*> good;
  for (const Edge& e : h.edges()) {
    auto it = paths.find(e);
    if (it == paths.end()) {
      add_reason(c, "missing path");
      continue;
    }
    const auto& p = it->second;
    auto bu = branch.find(e.u), bv = branch.find(e.v);
    if (p.size() < 2 || bu == branch.end() || bv == branch.end() || p.front() != bu->second ||
        p.back() != bv->second) {
      add_reason(c, "path endpoints");
      continue;
    }
    bool ok = true;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      if (!g.has_vertex(p[i]) || !g.has_vertex(p[i + 1]) || !g.has_edge(p[i], p[i + 1])) {
        add_reason(c, "path edges");
        ok = false;
        break;
      }
    }
    if (std::set<Vertex>(p.begin(), p.end()).size() != p.size()) {
      add_reason(c, "simple path");
      ok = false;
    }
    if (ok) good.push_back(&p);
  }
  for (const auto& [e, p] : paths)
    if (!h.has_vertex(e.u) || !h.has_vertex(e.v) || !h.has_edge(e.u, e.v)) add_reason(c, "missing path");
  return good;
}

json model_json(const char* kind, const std::map<Vertex, Vertex>& branch, const PathMap& paths, bool strong) {
  json j;
  j["kind"] = kind;
  j["strong"] = strong;
  j["branch"] = json::array();
  for (auto [h, g] : branch) j["branch"].push_back({h, g});
  j["paths"] = json::array();
  for (const auto& [e, p] : paths) j["paths"].push_back({{"edge", {e.u, e.v}}, {"path", p}});
  return j;
}

json parse_model_json(const std::string& text, const char* kind, std::map<Vertex, Vertex>& branch, PathMap& paths) {
  json j;
  try {
    j = json::parse(text);
    if (j.at("kind").get<std::string>() != kind) throw ParseError(0, std::string("expected a ") + kind + " witness");
    for (const auto& b : j.at("branch")) branch[b.at(0).get<Vertex>()] = b.at(1).get<Vertex>();
    for (const auto& p : j.at("paths")) {
      Vertex u = p.at("edge").at(0).get<Vertex>(), v = p.at("edge").at(1).get<Vertex>();
      auto path = p.at("path").get<std::vector<Vertex>>();
      if (u > v) std::reverse(path.begin(), path.end());
      paths[Edge(u, v)] = path;
    }
  } catch (const json::exception& e) {
    throw ParseError(0, e.what());
  }
  return j;
}

}  // namespace

std::optional<TopMinorModel> find_topological_minor(const Graph& h, const Graph& g, const SearchBudget& budget) {
  auto f = search(h, g, Mode::kTopMinor, budget);
  if (!f) return std::nullopt;
  return TopMinorModel{std::move(f->branch), std::move(f->paths)};
}

std::optional<ImmersionModel> find_immersion(const Graph& h, const Graph& g, bool strong, const SearchBudget& budget) {
  auto f = search(h, g, strong ? Mode::kStrong : Mode::kWeak, budget);
  if (!f) return std::nullopt;
  return ImmersionModel{std::move(f->branch), std::move(f->paths), strong};
}

ModelCheck verify_model(const Graph& h, const Graph& g, const TopMinorModel& m) {
  ModelCheck c;
  auto good = check_common(h, g, m.branch, m.paths, c);
  std::set<Vertex> branch_images;
  for (auto [v, x] : m.branch) branch_images.insert(x);
  std::set<Vertex> seen;
  for (const auto* p : good) {
    for (std::size_t i = 1; i + 1 < p->size(); ++i) {
      Vertex x = (*p)[i];
      if (branch_images.contains(x) || !seen.insert(x).second) add_reason(c, "internal disjointness");
    }
  }
  return c;
}

ModelCheck verify_model(const Graph& h, const Graph& g, const ImmersionModel& m) {
  ModelCheck c;
  auto good = check_common(h, g, m.branch, m.paths, c);
  std::set<Vertex> branch_images;
  for (auto [v, x] : m.branch) branch_images.insert(x);
  std::set<Edge> seen;
  for (const auto* p : good) {
    for (std::size_t i = 0; i + 1 < p->size(); ++i)
      if (!seen.insert(Edge((*p)[i], (*p)[i + 1])).second) add_reason(c, "edge disjointness");
    if (m.strong) {
      for (std::size_t i = 1; i + 1 < p->size(); ++i)
        if (branch_images.contains((*p)[i])) add_reason(c, "strongness");
    }
  }
  return c;
}

std::string format_model(const TopMinorModel& m) {
  return model_json("topological-minor", m.branch, m.paths, false).dump(2) + "\n";
}

std::string format_model(const ImmersionModel& m) {
  return model_json("immersion", m.branch, m.paths, m.strong).dump(2) + "\n";
}

TopMinorModel parse_top_minor_model(const std::string& json_text) {
  TopMinorModel m;
  parse_model_json(json_text, "topological-minor", m.branch, m.paths);
  return m;
}

ImmersionModel parse_immersion_model(const std::string& json_text) {
  ImmersionModel m;
  json j = parse_model_json(json_text, "immersion", m.branch, m.paths);
  m.strong = j.value("strong", false);
  return m;
}

}  // namespace strukt
